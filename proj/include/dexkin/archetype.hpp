#pragma once

#include <string>
#include <string_view>

#include "dexkin/model.hpp"

namespace dexkin {

/// The three MCP designs being compared. They differ only in where the
/// abduction (MCP-2) axis lives:
///   kLeapC   - fixed to the palm, along the palm normal, ahead of flexion;
///   kAllegro - fixed to the palm, in the palm plane along the finger, ahead of flexion;
///   kLeap    - carried by the MCP-1 flexion joint, perpendicular to it.
enum class ArchetypeKind { kLeap, kLeapC, kAllegro };

std::string_view archetype_name(ArchetypeKind kind);
ArchetypeKind parse_archetype_kind(std::string_view name);  // "leap", "leap-c", "allegro"

struct ArchetypeLimits {
  JointLimits flexion{0.0, 2.0};
  JointLimits abduction{-0.6, 0.6};
  JointLimits thumb_cmc{-0.5, 1.6};
  friend bool operator==(const ArchetypeLimits&, const ArchetypeLimits&) = default;
};

/// Canonical stand-in dimensions (meters). Every field is overridable.
struct ArchetypeParams {
  double proximal = 0.050;
  double medial = 0.040;
  double distal = 0.032;
  double tip = 0.015;
  double finger_spacing = 0.045;
  double palm_length = 0.095;  // palm origin to the MCP-1 axes along +x
  // MCP-1 axis to MCP-2 axis, in the first knuckle joint's frame (x distal, z palmar).
  Eigen::Vector3d knuckle_offset{0.010, 0.0, 0.008};
  // Radial palm edge, thumb pointing across the palm toward the fingers.
  Pose thumb_mount{Eigen::Vector3d{0.030, 0.0675, 0.0}, Eigen::Vector3d{1.5707963267948966, 0.0, -1.5707963267948966}};
  ArchetypeLimits limits;
};

/// Empty when the parameters are usable; otherwise one message per problem.
std::vector<std::string> check_archetype_params(const ArchetypeParams& params);

/// 4-chain, 16-DoF hand in the palm frame: x toward the fingertips, y toward
/// the thumb side, z palm normal (fingers flex toward +z). Joint names are
/// "<chain>_mcp_flex", "<chain>_mcp_abd", "<chain>_pip", "<chain>_dip" and
/// "thumb_cmc_rot", "thumb_cmc_flex", "thumb_mcp", "thumb_ip".
HandModel build_archetype(ArchetypeKind kind, const ArchetypeParams& params = {});

enum class JointRole { kMcpFlexion, kAbduction, kFlexion, kOther };

/// Role of a joint, inferred from the naming convention above.
JointRole joint_role(std::string_view joint_name);

}  // namespace dexkin
