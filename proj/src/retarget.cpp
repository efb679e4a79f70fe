#include "dexkin/retarget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <json.hpp>

#include "dexkin/kinematics.hpp"

namespace dexkin {

using nlohmann::json;

namespace keypoint {

int finger_base(std::string_view finger) {
  if (finger == "index") return 5;
  if (finger == "middle") return 9;
  if (finger == "ring") return 13;
  if (finger == "pinky") return 17;
  throw std::invalid_argument("no human keypoints for finger: " + std::string(finger));
}

int tip(std::string_view finger) { return finger == "thumb" ? kThumbTip : finger_base(finger) + 3; }

}  // namespace keypoint

void check_frame(const HumanHandFrame& frame) {
  if (!std::isfinite(frame.timestamp)) throw std::invalid_argument("frame timestamp is not finite");
  for (int i = 0; i < kHumanKeypointCount; ++i) {
    if (!frame.keypoints[static_cast<std::size_t>(i)].allFinite()) {
      throw std::invalid_argument("keypoint " + std::to_string(i) + " is not finite");
    }
  }
}

KeyVectorSpec default_key_vector_spec(const HandModel& model) {
  const Eigen::Vector3d middle = tip_position(model.chain("middle"), JointConfig::Zero(
                                                                         static_cast<Eigen::Index>(model.chain("middle").dof())));
  const double reach = middle.norm();
  if (!(reach > 0.0)) throw std::invalid_argument("middle fingertip coincides with the palm origin");
  const double c = kHumanReach / reach;

  const auto tip = [](const std::string& finger) { return KeyEndpoint{keypoint::tip(finger), finger}; };
  const KeyEndpoint palm{keypoint::kWrist, std::string(kPalmPoint)};
  KeyVectorSpec spec;
  for (const char* f : {"thumb", "index", "middle", "ring"}) spec.pairs.push_back({palm, tip(f), c});
  for (const char* f : {"index", "middle", "ring"}) spec.pairs.push_back({tip("thumb"), tip(f), c});
  spec.pairs.push_back({tip("index"), tip("middle"), c});
  spec.pairs.push_back({tip("middle"), tip("ring"), c});
  spec.pairs.push_back({palm, tip("thumb"), c});
  return spec;
}

void check_key_vector_spec(const KeyVectorSpec& spec) {
  if (spec.pairs.size() != kKeyVectorCount) {
    throw std::invalid_argument("key vector spec needs " + std::to_string(kKeyVectorCount) + " pairs, got " +
                                std::to_string(spec.pairs.size()));
  }
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto& p = spec.pairs[i];
    const std::string where = "key vector " + std::to_string(i + 1);
    if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw std::invalid_argument(where + ": scale must be > 0");
    for (const auto* e : {&p.from, &p.to}) {
      if (e->human < 0 || e->human >= kHumanKeypointCount) {
        throw std::invalid_argument(where + ": keypoint index out of range");
      }
      if (e->robot.empty()) throw std::invalid_argument(where + ": empty robot endpoint");
    }
  }
}

void check_key_vector_spec(const KeyVectorSpec& spec, const HandModel& model) {
  check_key_vector_spec(spec);
  for (const auto& p : spec.pairs) {
    for (const auto* e : {&p.from, &p.to}) {
      if (e->robot != kPalmPoint && !model.has_chain(e->robot)) throw UnknownChainError(e->robot);
    }
  }
}

KeyVectors key_vectors_human(const HumanHandFrame& frame, const KeyVectorSpec& spec) {
  KeyVectors out;
  out.reserve(spec.pairs.size());
  for (const auto& p : spec.pairs) {
    out.push_back(frame.keypoints[static_cast<std::size_t>(p.to.human)] -
                  frame.keypoints[static_cast<std::size_t>(p.from.human)]);
  }
  return out;
}

namespace {

// Robot endpoint position and its hand-level 3 x dof Jacobian.
struct PointState {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::MatrixXd jac;
};

class RobotPoints {
 public:
  RobotPoints(const HandModel& model, const JointConfig& q, bool with_jacobian)
      : model_(model), q_(q), with_jacobian_(with_jacobian) {
    if (static_cast<std::size_t>(q.size()) != model.dof()) {
      throw std::invalid_argument("expected " + std::to_string(model.dof()) + " values, got " +
                                  std::to_string(q.size()));
    }
  }

  const PointState& at(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    PointState s;
    const auto dof = static_cast<Eigen::Index>(model_.dof());
    if (with_jacobian_) s.jac = Eigen::MatrixXd::Zero(3, dof);
    if (name != kPalmPoint) {
      const KinematicChain& chain = model_.chain(name);
      const auto offset = static_cast<Eigen::Index>(model_.chain_offset(name));
      const auto n = static_cast<Eigen::Index>(chain.dof());
      const JointConfig qc = q_.segment(offset, n);
      if (with_jacobian_) {
        const ChainFrames frames = chain_frames(chain, qc);
        s.p = frames.tip.translation;
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto kk = static_cast<std::size_t>(k);
          s.jac.col(offset + k) = frames.joint_axes[kk].cross(s.p - frames.joint_origins[kk]);
        }
      } else {
        s.p = tip_position(chain, qc);
      }
    }
    return cache_.emplace(name, std::move(s)).first->second;
  }

 private:
  const HandModel& model_;
  const JointConfig& q_;
  bool with_jacobian_;
  std::map<std::string, PointState, std::less<>> cache_;
};

struct Problem {
  const HandModel& model;
  const KeyVectorSpec& spec;
  const KeyVectors& v_h;
  double smoothing = 0.0;
  JointConfig anchor;
};

struct Evaluation {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;  // d residual / d q
  double energy = 0.0;
};

Evaluation evaluate(const Problem& pb, const JointConfig& q) {
  const auto dof = static_cast<Eigen::Index>(pb.model.dof());
  const auto m = static_cast<Eigen::Index>(3 * pb.spec.pairs.size());
  const Eigen::Index rows = m + (pb.smoothing > 0.0 ? dof : 0);
  Evaluation ev;
  ev.residual.resize(rows);
  ev.jacobian = Eigen::MatrixXd::Zero(rows, dof);
  RobotPoints points(pb.model, q, true);
  for (std::size_t i = 0; i < pb.spec.pairs.size(); ++i) {
    const auto& pair = pb.spec.pairs[i];
    const PointState& a = points.at(pair.from.robot);
    const PointState& b = points.at(pair.to.robot);
    const auto r0 = static_cast<Eigen::Index>(3 * i);
    ev.residual.segment<3>(r0) = pb.v_h[i] - pair.scale * (b.p - a.p);
    ev.jacobian.middleRows(r0, 3) = -pair.scale * (b.jac - a.jac);
  }
  if (pb.smoothing > 0.0) {
    const double w = std::sqrt(pb.smoothing);
    ev.residual.tail(dof) = w * (q - pb.anchor);
    ev.jacobian.bottomRows(dof).diagonal().setConstant(w);
  }
  ev.energy = ev.residual.squaredNorm();
  return ev;
}

}  // namespace

KeyVectors key_vectors_robot(const HandModel& model, const JointConfig& q, const KeyVectorSpec& spec) {
  RobotPoints points(model, q, false);
  KeyVectors out;
  out.reserve(spec.pairs.size());
  for (const auto& p : spec.pairs) out.push_back(points.at(p.to.robot).p - points.at(p.from.robot).p);
  return out;
}

double retarget_energy(const KeyVectors& v_h, const HandModel& model, const JointConfig& q,
                       const KeyVectorSpec& spec) {
  if (v_h.size() != spec.pairs.size()) throw std::invalid_argument("key vector count does not match the spec");
  const KeyVectors v_r = key_vectors_robot(model, q, spec);
  double e = 0.0;
  for (std::size_t i = 0; i < v_h.size(); ++i) e += (v_h[i] - spec.pairs[i].scale * v_r[i]).squaredNorm();
  return e;
}

Eigen::VectorXd retarget_energy_gradient(const KeyVectors& v_h, const HandModel& model, const JointConfig& q,
                                         const KeyVectorSpec& spec) {
  if (v_h.size() != spec.pairs.size()) throw std::invalid_argument("key vector count does not match the spec");
  const Problem pb{model, spec, v_h, 0.0, {}};
  const Evaluation ev = evaluate(pb, q);
  return 2.0 * ev.jacobian.transpose() * ev.residual;
}

void check_options(const RetargetOptions& o) {
  if (o.max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
  if (!(o.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(o.initial_damping > 0.0) || !(o.damping_up > 1.0) || !(o.damping_down > 0.0 && o.damping_down < 1.0)) {
    throw std::invalid_argument("invalid damping parameters");
  }
  if (o.max_backtracks < 1) throw std::invalid_argument("max backtracks must be >= 1");
  if (!(o.smoothing >= 0.0) || !std::isfinite(o.smoothing)) throw std::invalid_argument("smoothing must be >= 0");
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kStalled:
      return "stalled";
  }
  return "unknown";
}

namespace {

RetargetResult minimize(const Problem& pb, const JointConfig& q0, const RetargetOptions& opts, const JointConfig& lower,
                        const JointConfig& upper) {
  const auto dof = q0.size();
  const auto project = [&](JointConfig q) {
    if (opts.clamp_to_limits) q = q.cwiseMax(lower).cwiseMin(upper);
    return q;
  };

  RetargetResult res;
  JointConfig q = q0;
  Evaluation ev = evaluate(pb, q);
  if (!std::isfinite(ev.energy) || !ev.jacobian.allFinite()) throw std::domain_error("non-finite retarget energy");
  res.energy_trace.push_back(ev.energy);

  double mu = -1.0;
  res.termination = Termination::kMaxIterations;
  while (res.iterations < opts.max_iterations) {
    if (ev.energy < opts.tolerance) {
      res.termination = Termination::kConverged;
      break;
    }
    const Eigen::MatrixXd jtj = ev.jacobian.transpose() * ev.jacobian;
    const Eigen::VectorXd g = ev.jacobian.transpose() * ev.residual;
    if (!g.allFinite()) throw std::domain_error("non-finite retarget gradient");

    // Joints pinned at a limit with the descent direction pointing outward stay fixed.
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < dof; ++i) {
      const bool pinned = opts.clamp_to_limits &&
                          ((q[i] <= lower[i] && g[i] > 0.0) || (q[i] >= upper[i] && g[i] < 0.0));
      if (!pinned) free.push_back(i);
    }
    const auto nf = static_cast<Eigen::Index>(free.size());
    Eigen::VectorXd gf(nf);
    Eigen::MatrixXd hf(nf, nf);
    for (Eigen::Index a = 0; a < nf; ++a) {
      const auto ia = free[static_cast<std::size_t>(a)];
      gf[a] = g[ia];
      for (Eigen::Index b = 0; b < nf; ++b) hf(a, b) = jtj(ia, free[static_cast<std::size_t>(b)]);
    }
    if (nf == 0 || gf.lpNorm<Eigen::Infinity>() == 0.0) {
      res.termination = Termination::kConverged;
      break;
    }
    if (mu < 0.0) mu = opts.initial_damping * std::max(hf.diagonal().maxCoeff(), 1e-12);

    bool accepted = false;
    JointConfig q_new;
    Evaluation ev_new;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      Eigen::MatrixXd damped = hf;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-gf);
      q_new = q;
      for (Eigen::Index a = 0; a < nf; ++a) q_new[free[static_cast<std::size_t>(a)]] += step[a];
      q_new = project(q_new);
      ev_new = evaluate(pb, q_new);
      if (std::isfinite(ev_new.energy) && ev_new.energy <= ev.energy) {
        accepted = true;
        mu = std::max(mu * opts.damping_down, 1e-300);
        break;
      }
      mu *= opts.damping_up;
    }
    if (!accepted) {
      res.termination = Termination::kStalled;
      break;
    }
    const double decrease = ev.energy - ev_new.energy;
    q = std::move(q_new);
    ev = std::move(ev_new);
    ++res.iterations;
    res.energy_trace.push_back(ev.energy);
    if (decrease < opts.tolerance) {
      res.termination = Termination::kConverged;
      break;
    }
  }
  res.q = std::move(q);
  res.energy = ev.energy;
  return res;
}

}  // namespace

RetargetResult retarget_frame(const HumanHandFrame& frame, const HandModel& model, const KeyVectorSpec& spec,
                              const JointConfig& q0, const RetargetOptions& opts) {
  check_options(opts);
  check_frame(frame);
  check_key_vector_spec(spec, model);
  const auto dof = static_cast<Eigen::Index>(model.dof());
  if (q0.size() != dof) {
    throw std::invalid_argument("expected " + std::to_string(dof) + " values, got " + std::to_string(q0.size()));
  }
  const JointConfig lower = model.lower_limits();
  const JointConfig upper = model.upper_limits();
  if (opts.clamp_to_limits && ((q0.array() < lower.array()).any() || (q0.array() > upper.array()).any())) {
    throw std::invalid_argument("initial configuration outside joint limits");
  }

  const KeyVectors v_h = key_vectors_human(frame, spec);
  const Problem pb{model, spec, v_h, opts.smoothing, q0};
  RetargetResult best = minimize(pb, q0, opts, lower, upper);
  if (opts.multi_start && best.energy >= opts.tolerance) {
    for (double f : {0.25, 0.5, 0.75}) {
      const JointConfig start = lower + f * (upper - lower);
      RetargetResult r = minimize(pb, start, opts, lower, upper);
      if (r.energy < best.energy - opts.tolerance) {
        best = std::move(r);
        best.start = start;
      }
    }
  }
  if (best.start.size() == 0) best.start = q0;
  return best;
}

RetargetStream::RetargetStream(const HandModel& model, KeyVectorSpec spec, RetargetOptions opts)
    : model_(&model), spec_(std::move(spec)), opts_(opts), q_(model.clamp(model.zero_config())) {
  check_options(opts_);
  check_key_vector_spec(spec_, model);
}

const JointConfig& RetargetStream::push(const HumanHandFrame& frame) {
  try {
    if (last_t_ && frame.timestamp < *last_t_) throw std::invalid_argument("timestamp decreases");
    RetargetResult r = retarget_frame(frame, *model_, spec_, q_, opts_);
    q_ = std::move(r.q);
    last_t_ = frame.timestamp;
  } catch (const std::exception& e) {
    warnings_.push_back({count_, frame.timestamp, e.what()});
  }
  ++count_;
  return q_;
}

const JointConfig& RetargetStream::hold(double timestamp, std::string reason) {
  warnings_.push_back({count_, timestamp, std::move(reason)});
  ++count_;
  return q_;
}

std::vector<JointConfig> retarget_stream(const std::vector<HumanHandFrame>& frames, const HandModel& model,
                                         const KeyVectorSpec& spec, const RetargetOptions& opts,
                                         std::vector<StreamWarning>* warnings) {
  RetargetStream stream(model, spec, opts);
  std::vector<JointConfig> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(stream.push(f));
  if (warnings) *warnings = stream.warnings();
  return out;
}

JointMapping default_joint_mapping(const HandModel& model) {
  JointMapping m;
  for (const auto& nc : model.chains) {
    for (const auto& name : nc.chain.revolute_names()) {
      JointMapEntry e;
      e.joint = name;
      if (nc.name == "thumb") {
        using namespace keypoint;
        if (name == "thumb_cmc_rot") {
          e.kind = AngleKind::kDihedral;
          e.points = {finger_base("index"), kWrist, kThumbCmc, kThumbMcp};
        } else if (name == "thumb_cmc_flex") {
          e.points = {kWrist, kThumbCmc, kThumbMcp};
        } else if (name == "thumb_mcp") {
          e.points = {kThumbCmc, kThumbMcp, kThumbIp};
        } else if (name == "thumb_ip") {
          e.points = {kThumbMcp, kThumbIp, kThumbTip};
        } else {
          throw std::invalid_argument("no default mapping for joint " + name);
        }
      } else {
        const int b = keypoint::finger_base(nc.name);
        const std::string prefix = nc.name + "_";
        if (name == prefix + "mcp_flex") {
          e.points = {keypoint::kWrist, b, b + 1};
        } else if (name == prefix + "mcp_abd") {
          e.kind = AngleKind::kConstant;
        } else if (name == prefix + "pip") {
          e.points = {b, b + 1, b + 2};
        } else if (name == prefix + "dip") {
          e.points = {b + 1, b + 2, b + 3};
        } else {
          throw std::invalid_argument("no default mapping for joint " + name);
        }
      }
      m.entries.push_back(std::move(e));
    }
  }
  return m;
}

void check_joint_mapping(const JointMapping& mapping, const HandModel& model) {
  const auto names = model.revolute_names();
  const std::set<std::string> known(names.begin(), names.end());
  std::set<std::string> seen;
  for (const auto& e : mapping.entries) {
    if (!known.contains(e.joint)) throw std::invalid_argument("mapping names unknown joint " + e.joint);
    if (!seen.insert(e.joint).second) throw std::invalid_argument("joint " + e.joint + " mapped more than once");
    const std::size_t need = e.kind == AngleKind::kThreePoint ? 3 : (e.kind == AngleKind::kDihedral ? 4 : 0);
    if (e.points.size() != need) {
      throw std::invalid_argument("joint " + e.joint + ": expected " + std::to_string(need) + " keypoints");
    }
    for (int p : e.points) {
      if (p < 0 || p >= kHumanKeypointCount) throw std::invalid_argument("joint " + e.joint + ": keypoint out of range");
    }
    if (!std::isfinite(e.gain) || !std::isfinite(e.offset)) {
      throw std::invalid_argument("joint " + e.joint + ": gain and offset must be finite");
    }
  }
  for (const auto& n : names) {
    if (!seen.contains(n)) throw std::invalid_argument("joint " + n + " is not mapped");
  }
}

double measure_angle(const HumanHandFrame& frame, const JointMapEntry& e) {
  constexpr double kDegenerate = 1e-9;
  const auto kp = [&](std::size_t i) -> const Eigen::Vector3d& {
    return frame.keypoints[static_cast<std::size_t>(e.points.at(i))];
  };
  const auto degenerate = [&] { return std::domain_error("joint " + e.joint + ": degenerate angle definition"); };
  switch (e.kind) {
    case AngleKind::kConstant:
      return 0.0;
    case AngleKind::kThreePoint: {
      const Eigen::Vector3d u = kp(1) - kp(0);
      const Eigen::Vector3d w = kp(2) - kp(1);
      if (u.norm() < kDegenerate || w.norm() < kDegenerate) throw degenerate();
      return std::atan2(u.cross(w).norm(), u.dot(w));
    }
    case AngleKind::kDihedral: {
      const Eigen::Vector3d b1 = kp(1) - kp(0);
      const Eigen::Vector3d b2 = kp(2) - kp(1);
      const Eigen::Vector3d b3 = kp(3) - kp(2);
      const Eigen::Vector3d n1 = b1.cross(b2);
      const Eigen::Vector3d n2 = b2.cross(b3);
      if (n1.norm() < kDegenerate || n2.norm() < kDegenerate) throw degenerate();
      const Eigen::Vector3d m1 = n1.cross(b2.normalized());
      return std::atan2(m1.dot(n2), n1.dot(n2));
    }
  }
  throw degenerate();
}

JointConfig direct_joint_map(const HumanHandFrame& frame, const JointMapping& mapping, const HandModel& model) {
  check_frame(frame);
  check_joint_mapping(mapping, model);
  std::map<std::string, const JointMapEntry*, std::less<>> by_joint;
  for (const auto& e : mapping.entries) by_joint[e.joint] = &e;
  JointConfig q(static_cast<Eigen::Index>(model.dof()));
  Eigen::Index i = 0;
  for (const auto& nc : model.chains) {
    for (const Joint* j : nc.chain.revolute_joints()) {
      const JointMapEntry& e = *by_joint.at(j->name);
      const double theta = e.kind == AngleKind::kConstant ? 0.0 : measure_angle(frame, e);
      q[i++] = j->limits.clamp(e.gain * theta + e.offset);
    }
  }
  return q;
}

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(where + ": bad field '" + key + "'");
  }
}

KeyEndpoint endpoint_from(const json& j, const std::string& where) {
  return {field<int>(j, "human", where), field<std::string>(j, "robot", where)};
}

json endpoint_to(const KeyEndpoint& e) { return {{"human", e.human}, {"robot", e.robot}}; }

std::string_view kind_name(AngleKind k) {
  switch (k) {
    case AngleKind::kThreePoint:
      return "three_point";
    case AngleKind::kDihedral:
      return "dihedral";
    case AngleKind::kConstant:
      return "constant";
  }
  return "unknown";
}

}  // namespace

KeyVectorSpec parse_key_vector_spec(std::string_view text) {
  const json doc = parse_json(text, "key vector spec");
  const auto pairs = field<json>(doc, "pairs", "key vector spec");
  if (!pairs.is_array()) throw std::invalid_argument("key vector spec: 'pairs' must be an array");
  KeyVectorSpec spec;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = "key vector " + std::to_string(i + 1);
    spec.pairs.push_back({endpoint_from(field<json>(pairs[i], "from", where), where),
                          endpoint_from(field<json>(pairs[i], "to", where), where),
                          field<double>(pairs[i], "scale", where)});
  }
  check_key_vector_spec(spec);
  return spec;
}

std::string key_vector_spec_json(const KeyVectorSpec& spec) {
  json pairs = json::array();
  for (const auto& p : spec.pairs) {
    pairs.push_back({{"from", endpoint_to(p.from)}, {"to", endpoint_to(p.to)}, {"scale", p.scale}});
  }
  return json{{"pairs", pairs}}.dump(2) + "\n";
}

JointMapping parse_joint_mapping(std::string_view text) {
  const json doc = parse_json(text, "joint mapping");
  const auto joints = field<json>(doc, "joints", "joint mapping");
  if (!joints.is_array()) throw std::invalid_argument("joint mapping: 'joints' must be an array");
  JointMapping m;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const std::string where = "joint mapping entry " + std::to_string(i + 1);
    JointMapEntry e;
    e.joint = field<std::string>(joints[i], "joint", where);
    const auto kind = field<std::string>(joints[i], "kind", where);
    if (kind == "three_point") {
      e.kind = AngleKind::kThreePoint;
    } else if (kind == "dihedral") {
      e.kind = AngleKind::kDihedral;
    } else if (kind == "constant") {
      e.kind = AngleKind::kConstant;
    } else {
      throw std::invalid_argument(where + ": unknown kind '" + kind + "'");
    }
    if (joints[i].contains("points")) e.points = field<std::vector<int>>(joints[i], "points", where);
    if (joints[i].contains("gain")) e.gain = field<double>(joints[i], "gain", where);
    if (joints[i].contains("offset")) e.offset = field<double>(joints[i], "offset", where);
    m.entries.push_back(std::move(e));
  }
  return m;
}

std::string joint_mapping_json(const JointMapping& mapping) {
  json joints = json::array();
  for (const auto& e : mapping.entries) {
    joints.push_back({{"joint", e.joint},
                      {"kind", kind_name(e.kind)},
                      {"points", e.points},
                      {"gain", e.gain},
                      {"offset", e.offset}});
  }
  return json{{"joints", joints}}.dump(2) + "\n";
}

HumanHandFrame parse_frame_record(std::string_view line) {
  const json doc = parse_json(line, "frame");
  HumanHandFrame f;
  f.timestamp = field<double>(doc, "t", "frame");
  const auto kp = field<std::vector<std::vector<double>>>(doc, "kp", "frame");
  if (kp.size() != static_cast<std::size_t>(kHumanKeypointCount)) {
    throw std::invalid_argument("frame: expected 21 keypoints, got " + std::to_string(kp.size()));
  }
  for (std::size_t i = 0; i < kp.size(); ++i) {
    if (kp[i].size() != 3) throw std::invalid_argument("frame: keypoint " + std::to_string(i) + " needs 3 values");
    f.keypoints[i] = {kp[i][0], kp[i][1], kp[i][2]};
  }
  check_frame(f);
  return f;
}

std::string frame_record_json(const HumanHandFrame& frame) {
  json kp = json::array();
  for (const auto& p : frame.keypoints) kp.push_back({p.x(), p.y(), p.z()});
  return json{{"t", frame.timestamp}, {"kp", kp}}.dump();
}

std::string joint_csv_header(std::size_t dof) {
  std::string s = "t";
  for (std::size_t i = 0; i < dof; ++i) s += ",q" + std::to_string(i);
  return s + "\n";
}

std::string joint_csv_row(double t, const JointConfig& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  std::string s = buf;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    std::snprintf(buf, sizeof buf, ",%.6f", q[i]);
    s += buf;
  }
  return s + "\n";
}

}  // namespace dexkin
