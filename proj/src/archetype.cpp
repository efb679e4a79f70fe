#include "dexkin/archetype.hpp"

#include <stdexcept>

namespace dexkin {

namespace {

const Eigen::Vector3d kFlexAxis{0.0, -1.0, 0.0};  // positive flexion curls toward +z
const Eigen::Vector3d kNormalAxis{0.0, 0.0, 1.0};
const Eigen::Vector3d kAlongAxis{1.0, 0.0, 0.0};

Joint revolute(std::string name, Eigen::Vector3d xyz, Eigen::Vector3d axis, JointLimits limits) {
  return Joint{.name = std::move(name),
               .kind = JointKind::kRevolute,
               .origin = Pose{xyz, Eigen::Vector3d::Zero()},
               .axis = axis,
               .limits = limits};
}

KinematicChain finger_chain(ArchetypeKind kind, const std::string& name, double lateral,
                            const ArchetypeParams& p) {
  const Eigen::Vector3d base{p.palm_length, lateral, 0.0};
  const auto& lim = p.limits;
  KinematicChain chain;
  switch (kind) {
    case ArchetypeKind::kLeap:
      chain.joints.push_back(revolute(name + "_mcp_flex", base, kFlexAxis, lim.flexion));
      chain.joints.push_back(revolute(name + "_mcp_abd", p.knuckle_offset, kNormalAxis, lim.abduction));
      break;
    case ArchetypeKind::kLeapC:
      chain.joints.push_back(revolute(name + "_mcp_abd", base, kNormalAxis, lim.abduction));
      chain.joints.push_back(revolute(name + "_mcp_flex", p.knuckle_offset, kFlexAxis, lim.flexion));
      break;
    case ArchetypeKind::kAllegro:
      chain.joints.push_back(revolute(name + "_mcp_abd", base, kAlongAxis, lim.abduction));
      chain.joints.push_back(revolute(name + "_mcp_flex", p.knuckle_offset, kFlexAxis, lim.flexion));
      break;
  }
  chain.joints.push_back(revolute(name + "_pip", {p.proximal, 0.0, 0.0}, kFlexAxis, lim.flexion));
  chain.joints.push_back(revolute(name + "_dip", {p.medial, 0.0, 0.0}, kFlexAxis, lim.flexion));
  chain.tip_offset = Pose{{p.distal + p.tip, 0.0, 0.0}, Eigen::Vector3d::Zero()};
  return chain;
}

KinematicChain thumb_chain(const ArchetypeParams& p) {
  const auto& lim = p.limits;
  KinematicChain chain;
  Joint cmc = revolute("thumb_cmc_rot", Eigen::Vector3d::Zero(), -kAlongAxis, lim.thumb_cmc);
  cmc.origin = p.thumb_mount;
  chain.joints.push_back(cmc);
  chain.joints.push_back(revolute("thumb_cmc_flex", p.knuckle_offset, kFlexAxis, lim.thumb_cmc));
  chain.joints.push_back(revolute("thumb_mcp", {p.proximal, 0.0, 0.0}, kFlexAxis, lim.flexion));
  chain.joints.push_back(revolute("thumb_ip", {p.medial, 0.0, 0.0}, kFlexAxis, lim.flexion));
  chain.tip_offset = Pose{{p.distal + p.tip, 0.0, 0.0}, Eigen::Vector3d::Zero()};
  return chain;
}

}  // namespace

std::string_view archetype_name(ArchetypeKind kind) {
  switch (kind) {
    case ArchetypeKind::kLeap: return "leap";
    case ArchetypeKind::kLeapC: return "leap-c";
    case ArchetypeKind::kAllegro: return "allegro";
  }
  return "unknown";
}

ArchetypeKind parse_archetype_kind(std::string_view name) {
  if (name == "leap") return ArchetypeKind::kLeap;
  if (name == "leap-c") return ArchetypeKind::kLeapC;
  if (name == "allegro") return ArchetypeKind::kAllegro;
  throw std::invalid_argument("unknown archetype \"" + std::string(name) + "\" (expected leap, leap-c, allegro)");
}

std::vector<std::string> check_archetype_params(const ArchetypeParams& p) {
  std::vector<std::string> out;
  const auto positive = [&out](double v, const char* what) {
    if (!(v > 0.0)) out.push_back(std::string(what) + " must be > 0");
  };
  positive(p.proximal, "proximal length");
  positive(p.medial, "medial length");
  positive(p.distal, "distal length");
  positive(p.tip, "fingertip offset");
  positive(p.finger_spacing, "finger spacing");
  positive(p.palm_length, "palm length");
  if (!p.knuckle_offset.allFinite()) out.push_back("knuckle offset must be finite");
  if (!p.thumb_mount.xyz.allFinite() || !p.thumb_mount.rpy.allFinite()) out.push_back("thumb mount must be finite");
  const auto ordered = [&out](const JointLimits& l, const char* what) {
    if (!(l.lower <= l.upper)) out.push_back(std::string(what) + " limits are not ordered");
  };
  ordered(p.limits.flexion, "flexion");
  ordered(p.limits.abduction, "abduction");
  ordered(p.limits.thumb_cmc, "thumb CMC");
  return out;
}

HandModel build_archetype(ArchetypeKind kind, const ArchetypeParams& params) {
  if (auto problems = check_archetype_params(params); !problems.empty()) {
    std::string msg = "invalid archetype parameters:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
  }
  HandModel model;
  model.name = std::string(archetype_name(kind));
  const double s = params.finger_spacing;
  model.chains.push_back({"thumb", thumb_chain(params)});
  model.chains.push_back({"index", finger_chain(kind, "index", s, params)});
  model.chains.push_back({"middle", finger_chain(kind, "middle", 0.0, params)});
  model.chains.push_back({"ring", finger_chain(kind, "ring", -s, params)});
  return model;
}

JointRole joint_role(std::string_view name) {
  if (name.ends_with("_mcp_flex")) return JointRole::kMcpFlexion;
  if (name.ends_with("_abd")) return JointRole::kAbduction;
  if (name.ends_with("_pip") || name.ends_with("_dip") || name.ends_with("_flex") || name.ends_with("_mcp") ||
      name.ends_with("_ip")) {
    return JointRole::kFlexion;
  }
  return JointRole::kOther;
}

}  // namespace dexkin
