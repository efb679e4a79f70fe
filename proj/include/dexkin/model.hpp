#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dexkin/transform.hpp"

namespace dexkin {

/// Joint angles in radians, one per revolute joint, in the declared chain order.
/// For a whole hand the chains are concatenated in model order.
using JointConfig = Eigen::VectorXd;

enum class JointKind { kRevolute, kFixed };

struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;

  double clamp(double v) const { return v < lower ? lower : (v > upper ? upper : v); }
  bool contains(double v) const { return v >= lower && v <= upper; }
  friend bool operator==(const JointLimits&, const JointLimits&) = default;
};

struct Joint {
  std::string name;
  JointKind kind = JointKind::kRevolute;
  Pose origin;                                       // parent frame -> joint frame at zero angle
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();    // joint frame; zero for fixed joints
  JointLimits limits;                                // revolute only

  bool is_revolute() const { return kind == JointKind::kRevolute; }
  friend bool operator==(const Joint& a, const Joint& b) {
    return a.name == b.name && a.kind == b.kind && a.origin == b.origin && a.axis == b.axis &&
           a.limits == b.limits;
  }
};

/// Ordered palm-to-tip joints plus the fingertip point offset from the last joint frame.
struct KinematicChain {
  std::vector<Joint> joints;
  Pose tip_offset;

  std::size_t dof() const;
  std::vector<const Joint*> revolute_joints() const;
  std::vector<std::string> revolute_names() const;
  friend bool operator==(const KinematicChain&, const KinematicChain&) = default;
};

struct NamedChain {
  std::string name;
  KinematicChain chain;
  friend bool operator==(const NamedChain&, const NamedChain&) = default;
};

class UnknownChainError : public std::invalid_argument {
 public:
  explicit UnknownChainError(const std::string& name) : std::invalid_argument("unknown chain: " + name) {}
};

/// A palm frame plus named chains. Chains are kept in the canonical order
/// thumb, index, middle, ring (then any others) so hand-level q layouts are fixed.
struct HandModel {
  std::string name;
  Pose palm_frame;  // world -> palm
  std::vector<NamedChain> chains;

  const KinematicChain& chain(std::string_view chain_name) const;
  const KinematicChain* find_chain(std::string_view chain_name) const;
  bool has_chain(std::string_view chain_name) const { return find_chain(chain_name) != nullptr; }
  std::vector<std::string> chain_names() const;

  std::size_t dof() const;
  /// Index of the chain's first joint value within a hand-level JointConfig.
  std::size_t chain_offset(std::string_view chain_name) const;
  JointConfig chain_config(const JointConfig& hand_q, std::string_view chain_name) const;
  /// Hand-level lower/upper limits.
  JointConfig lower_limits() const;
  JointConfig upper_limits() const;
  JointConfig clamp(const JointConfig& q) const;
  JointConfig zero_config() const { return JointConfig::Zero(static_cast<Eigen::Index>(dof())); }
  std::vector<std::string> revolute_names() const;

  friend bool operator==(const HandModel&, const HandModel&) = default;
};

/// Canonical position of a chain name in the ordering contract (unknown names sort last).
int canonical_chain_rank(std::string_view chain_name);
void sort_chains_canonically(std::vector<NamedChain>& chains);

struct Diagnostic {
  std::string invariant;
  std::string location;
  std::string message;
};

/// Checks every structural invariant of the model types. Empty result means valid.
std::vector<Diagnostic> validate_model(const HandModel& model);

}  // namespace dexkin
