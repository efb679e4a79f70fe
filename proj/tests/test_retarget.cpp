#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dexkin/archetype.hpp"
#include "dexkin/kinematics.hpp"
#include "dexkin/retarget.hpp"
#include "support/oracles.hpp"

using namespace dexkin;

namespace {

const char* const kChains[] = {"thumb", "index", "middle", "ring"};

KeyVectorSpec unit_spec(const HandModel& m) {
  KeyVectorSpec s = default_key_vector_spec(m);
  for (auto& p : s.pairs) p.scale = 1.0;
  return s;
}

// Human keypoints placed at the robot palm origin and tips; other keypoints
// are spread along a line so no angle is degenerate.
HumanHandFrame synth_frame(const HandModel& m, const JointConfig& q, double t = 0.0) {
  HumanHandFrame f;
  f.timestamp = t;
  for (int i = 0; i < kHumanKeypointCount; ++i) f.keypoints[i] = Eigen::Vector3d(0.01 * i, 0.003 * i * i, 0.0);
  f.keypoints[keypoint::kWrist].setZero();
  for (const char* c : kChains) f.keypoints[keypoint::tip(c)] = tip_position(m.chain(c), m.chain_config(q, c));
  return f;
}

double max_tip_error(const HandModel& m, const JointConfig& a, const JointConfig& b) {
  double e = 0.0;
  for (const char* c : kChains) {
    e = std::max(e, (tip_position(m.chain(c), m.chain_config(a, c)) - tip_position(m.chain(c), m.chain_config(b, c))).norm());
  }
  return e;
}

Eigen::Vector3d robot_point(const HandModel& m, const JointConfig& q, const std::string& name) {
  if (name == kPalmPoint) return Eigen::Vector3d::Zero();
  return oracle::fk(m.chain(name), m.chain_config(q, name)).block<3, 1>(0, 3);
}

// Term-by-term sum using oracle FK.
double oracle_energy(const KeyVectors& vh, const HandModel& m, const JointConfig& q, const KeyVectorSpec& s) {
  double e = 0.0;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& p = s.pairs[i];
    const Eigen::Vector3d vr = robot_point(m, q, p.to.robot) - robot_point(m, q, p.from.robot);
    for (int k = 0; k < 3; ++k) {
      const double d = vh[i][k] - p.scale * vr[k];
      e += d * d;
    }
  }
  return e;
}

Eigen::VectorXd fd_gradient(const KeyVectors& vh, const HandModel& m, const JointConfig& q, const KeyVectorSpec& s) {
  const double h = 1e-6;
  Eigen::VectorXd g(q.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    JointConfig a = q, b = q;
    a[k] += h;
    b[k] -= h;
    g[k] = (retarget_energy(vh, m, a, s) - retarget_energy(vh, m, b, s)) / (2 * h);
  }
  return g;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

}  // namespace

TEST(Keypoints, Indices) {
  EXPECT_EQ(keypoint::finger_base("index"), 5);
  EXPECT_EQ(keypoint::finger_base("pinky"), 17);
  EXPECT_EQ(keypoint::tip("thumb"), 4);
  EXPECT_EQ(keypoint::tip("ring"), 16);
  EXPECT_THROW(keypoint::tip("toe"), std::invalid_argument);
}

TEST(KeyVectors, HumanExamples) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = default_key_vector_spec(m);
  HumanHandFrame f;
  for (const auto& v : key_vectors_human(f, s)) EXPECT_EQ(v, Eigen::Vector3d::Zero());

  KeyVectorSpec one = s;
  one.pairs[0] = {{keypoint::kWrist, "palm"}, {keypoint::tip("index"), "index"}, 1.0};
  f.keypoints[keypoint::tip("index")] = {0, 0.1, 0};
  EXPECT_EQ(key_vectors_human(f, one)[0], Eigen::Vector3d(0, 0.1, 0));

  std::mt19937_64 gen(1);
  std::normal_distribution<double> n(0, 0.05);
  for (auto& k : f.keypoints) k = {n(gen), n(gen), n(gen)};
  HumanHandFrame moved = f;
  for (auto& k : moved.keypoints) k += Eigen::Vector3d(0.25, -0.125, 0.5);
  const auto a = key_vectors_human(f, s), b = key_vectors_human(moved, s);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT((a[i] - b[i]).norm(), 1e-15);
}

TEST(KeyVectors, DefaultSpecStructure) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = default_key_vector_spec(m);
  ASSERT_EQ(s.pairs.size(), kKeyVectorCount);
  const double reach = tip_position(m.chain("middle"), m.chain_config(m.zero_config(), "middle")).norm();
  for (const auto& p : s.pairs) EXPECT_DOUBLE_EQ(p.scale, kHumanReach / reach);
  EXPECT_NO_THROW(check_key_vector_spec(s, m));
}

TEST(KeyVectors, RobotAtZeroMatchesCanonicalDimensions) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const ArchetypeParams p;
  const KeyVectors v = key_vectors_robot(m, m.zero_config(), default_key_vector_spec(m));
  // palm -> index tip, straight finger along +x with the knuckle offset.
  const double x = p.palm_length + p.knuckle_offset.x() + p.proximal + p.medial + p.distal + p.tip;
  EXPECT_NEAR((v[1] - Eigen::Vector3d(x, p.finger_spacing, p.knuckle_offset.z())).norm(), 0.0, 1e-15);
  // index tip -> middle tip is one finger spacing toward -y.
  EXPECT_NEAR((v[7] - Eigen::Vector3d(0, -p.finger_spacing, 0)).norm(), 0.0, 1e-15);
}

TEST(KeyVectors, ThumbOnlySpec) {
  const HandModel m = build_archetype(ArchetypeKind::kAllegro);
  KeyVectorSpec s;
  for (std::size_t i = 0; i < kKeyVectorCount; ++i) s.pairs.push_back({{0, "palm"}, {4, "thumb"}, 1.0});
  const JointConfig q = m.clamp(JointConfig::Constant(16, 0.3));
  const Eigen::Vector3d t = tip_position(m.chain("thumb"), m.chain_config(q, "thumb"));
  for (const auto& v : key_vectors_robot(m, q, s)) EXPECT_EQ(v, t);
}

TEST(KeyVectors, SmoothInQ) {
  const HandModel m = build_archetype(ArchetypeKind::kLeapC);
  const KeyVectorSpec s = default_key_vector_spec(m);
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const JointConfig q = oracle::random_config(m, gen);
    Eigen::VectorXd d = Eigen::VectorXd::Random(16).normalized();
    const double h = 1e-6;
    const auto a = key_vectors_robot(m, q + h * d, s), b = key_vectors_robot(m, q - h * d, s);
    for (std::size_t i = 0; i < kKeyVectorCount; ++i) {
      const auto& p = s.pairs[i];
      Eigen::Vector3d pred = Eigen::Vector3d::Zero();
      for (const auto* end : {&p.to, &p.from}) {
        if (end->robot == kPalmPoint) continue;
        const auto J = geometric_jacobian(m.chain(end->robot), m.chain_config(q, end->robot));
        const Eigen::VectorXd dc = m.chain_config(d, end->robot);
        pred += (end == &p.to ? 1.0 : -1.0) * J.linear * dc;
      }
      EXPECT_LT(((a[i] - b[i]) / (2 * h) - pred).norm(), 1e-5);
    }
  }
}

TEST(KeyVectors, UnknownChainThrows) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  KeyVectorSpec s = default_key_vector_spec(m);
  s.pairs[3].to.robot = "pinky";
  EXPECT_THROW(key_vectors_robot(m, m.zero_config(), s), UnknownChainError);
  EXPECT_THROW(check_key_vector_spec(s, m), std::invalid_argument);
}

TEST(KeyVectorSpecCheck, RejectsBadSpecs) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  KeyVectorSpec s = default_key_vector_spec(m);
  KeyVectorSpec short_spec = s;
  short_spec.pairs.pop_back();
  EXPECT_THROW(check_key_vector_spec(short_spec), std::invalid_argument);
  KeyVectorSpec zero_scale = s;
  zero_scale.pairs[2].scale = 0.0;
  EXPECT_THROW(check_key_vector_spec(zero_scale), std::invalid_argument);
  KeyVectorSpec bad_index = s;
  bad_index.pairs[0].from.human = 21;
  EXPECT_THROW(check_key_vector_spec(bad_index), std::invalid_argument);
}

TEST(Energy, ExactZeroAndDefinitionalCases) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = default_key_vector_spec(m);
  std::mt19937_64 gen(3);
  const JointConfig q = oracle::random_config(m, gen);
  KeyVectors vr = key_vectors_robot(m, q, s);
  KeyVectors matched(vr.size());
  for (std::size_t i = 0; i < vr.size(); ++i) matched[i] = s.pairs[i].scale * vr[i];
  EXPECT_EQ(retarget_energy(matched, m, q, s), 0.0);

  KeyVectors zero(vr.size(), Eigen::Vector3d::Zero());
  double expect = 0.0;
  for (std::size_t i = 0; i < vr.size(); ++i) expect += (s.pairs[i].scale * vr[i]).squaredNorm();
  EXPECT_NEAR(retarget_energy(zero, m, q, s), expect, 1e-15);
}

TEST(Energy, MatchesOracleSum) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n(0, 0.1);
  for (auto kind : {ArchetypeKind::kLeap, ArchetypeKind::kLeapC, ArchetypeKind::kAllegro}) {
    const HandModel m = build_archetype(kind);
    const KeyVectorSpec s = default_key_vector_spec(m);
    for (int trial = 0; trial < 30; ++trial) {
      KeyVectors vh(kKeyVectorCount);
      for (auto& v : vh) v = {n(gen), n(gen), n(gen)};
      const JointConfig q = oracle::random_config(m, gen);
      const double e = retarget_energy(vh, m, q, s);
      EXPECT_GE(e, 0.0);
      EXPECT_NEAR(e, oracle_energy(vh, m, q, s), 1e-12);
    }
  }
}

TEST(Energy, TranslationInvariant) {
  const HandModel m = build_archetype(ArchetypeKind::kAllegro);
  const KeyVectorSpec s = default_key_vector_spec(m);
  std::mt19937_64 gen(6);
  HumanHandFrame f = synth_frame(m, oracle::random_config(m, gen));
  HumanHandFrame g = f;
  for (auto& k : g.keypoints) k += Eigen::Vector3d(-0.3, 0.7, 0.05);
  const JointConfig q = oracle::random_config(m, gen);
  EXPECT_NEAR(retarget_energy(key_vectors_human(f, s), m, q, s), retarget_energy(key_vectors_human(g, s), m, q, s),
              1e-14);
}

TEST(Energy, GradientMatchesFiniteDifferences) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> n(0, 0.1);
  int checked = 0;
  for (auto kind : {ArchetypeKind::kLeap, ArchetypeKind::kLeapC, ArchetypeKind::kAllegro}) {
    const HandModel m = build_archetype(kind);
    const KeyVectorSpec s = default_key_vector_spec(m);
    for (int trial = 0; trial < 34; ++trial, ++checked) {
      KeyVectors vh(kKeyVectorCount);
      for (auto& v : vh) v = {n(gen), n(gen), n(gen)};
      const JointConfig q = oracle::random_config(m, gen);
      const Eigen::VectorXd g = retarget_energy_gradient(vh, m, q, s);
      const Eigen::VectorXd fd = fd_gradient(vh, m, q, s);
      EXPECT_LT((g - fd).norm(), 1e-4 * std::max(fd.norm(), 1e-12));
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(RetargetFrame, SelfConsistency) {
  std::mt19937_64 gen(8);
  for (auto kind : {ArchetypeKind::kLeap, ArchetypeKind::kLeapC, ArchetypeKind::kAllegro}) {
    const HandModel m = build_archetype(kind);
    const KeyVectorSpec s = unit_spec(m);
    int ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const JointConfig q_hat = oracle::random_config(m, gen);
      const auto r = retarget_frame(synth_frame(m, q_hat), m, s, m.clamp(m.zero_config()));
      EXPECT_TRUE(nonincreasing(r.energy_trace));
      EXPECT_EQ(r.energy, r.energy_trace.back());
      for (Eigen::Index k = 0; k < r.q.size(); ++k) {
        EXPECT_GE(r.q[k], m.lower_limits()[k]);
        EXPECT_LE(r.q[k], m.upper_limits()[k]);
      }
      if (max_tip_error(m, r.q, q_hat) < 1e-3 && r.energy <= 1e-6) ++ok;
    }
    EXPECT_GE(ok, 19) << archetype_name(kind);
  }
}

TEST(RetargetFrame, WarmStartAtOptimum) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = unit_spec(m);
  std::mt19937_64 gen(9);
  const HumanHandFrame f = synth_frame(m, oracle::random_config(m, gen));
  const auto first = retarget_frame(f, m, s, m.clamp(m.zero_config()));
  const auto again = retarget_frame(f, m, s, first.q);
  EXPECT_LE(again.iterations, 2);
  EXPECT_LE(again.energy, first.energy);
}

TEST(RetargetFrame, SingleIteration) {
  const HandModel m = build_archetype(ArchetypeKind::kAllegro);
  const KeyVectorSpec s = default_key_vector_spec(m);
  std::mt19937_64 gen(10);
  const HumanHandFrame f = synth_frame(m, oracle::random_config(m, gen));
  RetargetOptions o;
  o.max_iterations = 1;
  o.multi_start = false;
  const JointConfig q0 = m.clamp(m.zero_config());
  const auto r = retarget_frame(f, m, s, q0, o);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LE(r.energy, retarget_energy(key_vectors_human(f, s), m, q0, s));
  EXPECT_EQ(r.termination, Termination::kMaxIterations);
}

TEST(RetargetFrame, Errors) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = default_key_vector_spec(m);
  HumanHandFrame f = synth_frame(m, m.zero_config());
  JointConfig outside = m.zero_config();
  outside[1] = 5.0;
  EXPECT_THROW(retarget_frame(f, m, s, outside), std::invalid_argument);
  f.keypoints[8].x() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_ANY_THROW(retarget_frame(f, m, s, m.zero_config()));
  RetargetOptions bad;
  bad.tolerance = 0.0;
  EXPECT_THROW(check_options(bad), std::invalid_argument);
  bad = {};
  bad.max_iterations = 0;
  EXPECT_THROW(check_options(bad), std::invalid_argument);
  bad = {};
  bad.smoothing = -1.0;
  EXPECT_THROW(check_options(bad), std::invalid_argument);
}

TEST(RetargetStream, ConstantFrameIsFixedPoint) {
  const HandModel m = build_archetype(ArchetypeKind::kLeapC);
  const KeyVectorSpec s = unit_spec(m);
  std::mt19937_64 gen(11);
  const HumanHandFrame f = synth_frame(m, oracle::random_config(m, gen));
  std::vector<HumanHandFrame> frames;
  for (int i = 0; i < 10; ++i) {
    frames.push_back(f);
    frames.back().timestamp = 0.05 * i;
  }
  const auto out = retarget_stream(frames, m, s);
  ASSERT_EQ(out.size(), frames.size());
  for (std::size_t i = 2; i < out.size(); ++i) EXPECT_LT(max_tip_error(m, out[i], out[1]), 1e-6);
}

TEST(RetargetStream, HeavySmoothingPinsToPrevious) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const KeyVectorSpec s = unit_spec(m);
  RetargetOptions o;
  o.smoothing = 1e9;
  std::mt19937_64 gen(12);
  std::vector<HumanHandFrame> frames;
  for (int i = 0; i < 5; ++i) frames.push_back(synth_frame(m, oracle::random_config(m, gen), i));
  const JointConfig start = m.clamp(m.zero_config());
  for (const auto& q : retarget_stream(frames, m, s, o)) EXPECT_LT((q - start).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(RetargetStream, SmoothTrajectoryTracked) {
  std::mt19937_64 gen(13);
  for (auto kind : {ArchetypeKind::kLeap, ArchetypeKind::kAllegro}) {
    const HandModel m = build_archetype(kind);
    const KeyVectorSpec s = unit_spec(m);
    const JointConfig a = oracle::random_config(m, gen), b = oracle::random_config(m, gen);
    std::vector<HumanHandFrame> frames;
    std::vector<JointConfig> truth;
    for (int i = 0; i < 40; ++i) {
      const double w = 0.5 - 0.5 * std::cos(std::numbers::pi * i / 39.0);
      truth.push_back((1 - w) * a + w * b);
      frames.push_back(synth_frame(m, truth.back(), i / 20.0));
    }
    const auto out = retarget_stream(frames, m, s);
    int ok = 0;
    for (std::size_t i = 0; i < out.size(); ++i) ok += max_tip_error(m, out[i], truth[i]) <= 2e-3;
    EXPECT_GE(ok, 38) << archetype_name(kind);
  }
}

TEST(RetargetStream, WarnsAndHolds) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  RetargetStream st(m, unit_spec(m), {});
  std::mt19937_64 gen(14);
  const JointConfig q1 = st.push(synth_frame(m, oracle::random_config(m, gen), 1.0));
  EXPECT_EQ(st.push(synth_frame(m, oracle::random_config(m, gen), 0.5)), q1);  // time went backwards
  HumanHandFrame bad = synth_frame(m, m.zero_config(), 2.0);
  bad.keypoints[4].y() = std::numeric_limits<double>::infinity();
  EXPECT_EQ(st.push(bad), q1);
  EXPECT_EQ(st.hold(3.0, "unreadable"), q1);
  EXPECT_EQ(st.frames(), 4u);
  ASSERT_EQ(st.warnings().size(), 3u);
  EXPECT_EQ(st.warnings()[0].frame, 1u);
  EXPECT_EQ(st.warnings()[2].message, "unreadable");
}

TEST(DirectMap, ExamplesAndClamping) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  JointMapping map = default_joint_mapping(m);
  EXPECT_NO_THROW(check_joint_mapping(map, m));
  HumanHandFrame f;
  // Index MCP/PIP/DIP/TIP straight along +x from the wrist, then a 0.7 rad bend at PIP.
  const int b = keypoint::finger_base("index");
  for (int i = 0; i < kHumanKeypointCount; ++i) f.keypoints[i] = Eigen::Vector3d(0.02 * i, 0.01 * (i % 3), 0.001 * i * i);
  f.keypoints[0] = {0, 0, 0};
  f.keypoints[b] = {0.08, 0, 0};
  f.keypoints[b + 1] = {0.12, 0, 0};
  f.keypoints[b + 2] = f.keypoints[b + 1] + 0.03 * Eigen::Vector3d(std::cos(0.7), 0, std::sin(0.7));
  f.keypoints[b + 3] = f.keypoints[b + 2] + 0.02 * Eigen::Vector3d(std::cos(0.7), 0, std::sin(0.7));
  const JointConfig q = direct_joint_map(f, map, m);
  const auto names = m.revolute_names();
  const auto at = [&](const std::string& n) {
    return q[std::find(names.begin(), names.end(), n) - names.begin()];
  };
  EXPECT_NEAR(at("index_mcp_flex"), 0.0, 1e-12);
  EXPECT_NEAR(at("index_pip"), 0.7, 1e-12);
  EXPECT_NEAR(at("index_dip"), 0.0, 1e-12);
  EXPECT_EQ(at("index_mcp_abd"), 0.0);

  for (auto& e : map.entries) {
    if (e.joint == "index_pip") e.gain = 10.0;
  }
  EXPECT_EQ(direct_joint_map(f, map, m)[std::find(names.begin(), names.end(), "index_pip") - names.begin()],
            m.chain("index").revolute_joints()[2]->limits.upper);
}

TEST(DirectMap, AlwaysWithinLimits) {
  std::mt19937_64 gen(15);
  std::normal_distribution<double> n(0, 0.05);
  const HandModel m = build_archetype(ArchetypeKind::kAllegro);
  JointMapping map = default_joint_mapping(m);
  for (auto& e : map.entries) e.gain = 3.0, e.offset = -0.5;
  for (int trial = 0; trial < 200; ++trial) {
    HumanHandFrame f;
    for (auto& k : f.keypoints) k = {n(gen), n(gen), n(gen)};
    const JointConfig q = direct_joint_map(f, map, m);
    EXPECT_TRUE((q.array() >= m.lower_limits().array()).all());
    EXPECT_TRUE((q.array() <= m.upper_limits().array()).all());
  }
}

TEST(DirectMap, AngleOracles) {
  HumanHandFrame f;
  f.keypoints[0] = {0, 0, 0};
  f.keypoints[1] = {1, 0, 0};
  f.keypoints[2] = {1, 1, 0};
  f.keypoints[3] = {1, 1, 1};
  EXPECT_NEAR(measure_angle(f, {"j", AngleKind::kThreePoint, {0, 1, 2}}), std::numbers::pi / 2, 1e-15);
  const double d = measure_angle(f, {"j", AngleKind::kDihedral, {0, 1, 2, 3}});
  EXPECT_NEAR(std::abs(d), std::numbers::pi / 2, 1e-15);
  f.keypoints[3] = {1, 1, -1};
  EXPECT_NEAR(measure_angle(f, {"j", AngleKind::kDihedral, {0, 1, 2, 3}}), -d, 1e-15);
}

TEST(DirectMap, DegenerateDefinitionNamesJoint) {
  HumanHandFrame f;
  f.keypoints[1] = {0.1, 0, 0};
  try {
    measure_angle(f, {"index_pip", AngleKind::kThreePoint, {0, 2, 1}});  // 0 and 2 coincide
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("index_pip"), std::string::npos);
  }
  f.keypoints[2] = {0.2, 0, 0};
  f.keypoints[3] = {0.3, 0, 0};
  EXPECT_THROW(measure_angle(f, {"thumb_cmc_rot", AngleKind::kDihedral, {0, 1, 2, 3}}), std::domain_error);
  // A straight finger is a valid zero angle.
  EXPECT_EQ(measure_angle(f, {"j", AngleKind::kThreePoint, {0, 1, 2}}), 0.0);
}

TEST(DirectMap, MappingMustCoverModel) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  JointMapping map = default_joint_mapping(m);
  JointMapping dup = map;
  dup.entries.push_back(dup.entries.front());
  EXPECT_THROW(check_joint_mapping(dup, m), std::invalid_argument);
  map.entries.pop_back();
  EXPECT_THROW(check_joint_mapping(map, m), std::invalid_argument);
}

TEST(Formats, SpecAndMappingRoundTrip) {
  const HandModel m = build_archetype(ArchetypeKind::kLeapC);
  const KeyVectorSpec s = default_key_vector_spec(m);
  EXPECT_EQ(parse_key_vector_spec(key_vector_spec_json(s)), s);
  const JointMapping map = default_joint_mapping(m);
  EXPECT_EQ(parse_joint_mapping(joint_mapping_json(map)), map);
  EXPECT_THROW(parse_key_vector_spec("{\"pairs\": 3}"), std::invalid_argument);
  EXPECT_THROW(parse_joint_mapping("{\"joints\":[{\"joint\":\"a\",\"kind\":\"spiral\"}]}"), std::invalid_argument);
}

TEST(Formats, FrameRecords) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const HumanHandFrame f = synth_frame(m, m.zero_config(), 1.5);
  const HumanHandFrame g = parse_frame_record(frame_record_json(f));
  EXPECT_EQ(g.timestamp, 1.5);
  for (int i = 0; i < kHumanKeypointCount; ++i) EXPECT_EQ(g.keypoints[i], f.keypoints[i]);
  EXPECT_THROW(parse_frame_record("{\"t\":0,\"kp\":[[0,0,0]]}"), std::invalid_argument);
  EXPECT_THROW(parse_frame_record("not json"), std::invalid_argument);
}

TEST(Formats, JointCsv) {
  EXPECT_EQ(joint_csv_header(3), "t,q0,q1,q2\n");
  EXPECT_EQ(joint_csv_row(0.05, Eigen::Vector3d(0.1, -1.0 / 3.0, 2.0)), "0.050000,0.100000,-0.333333,2.000000\n");
}
