#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dexkin/model.hpp"

namespace dexkin {

/// 6 x n geometric Jacobian of a chain end-effector, palm frame.
/// Linear rows in m/rad, angular rows in rad/rad, one column per revolute joint.
struct Jacobian {
  Eigen::Matrix<double, 3, Eigen::Dynamic> linear;
  Eigen::Matrix<double, 3, Eigen::Dynamic> angular;
  std::vector<std::string> joint_names;

  Eigen::Index cols() const { return linear.cols(); }
};

/// Fingertip pose in the palm frame. Joint limits are not applied.
Transform forward_kinematics(const KinematicChain& chain, const JointConfig& q);

/// Column i = (z_i x (p_tip - p_i); z_i) for revolute joint i with palm-frame axis z_i through p_i.
Jacobian geometric_jacobian(const KinematicChain& chain, const JointConfig& q);

/// Central differences with step h in (0, 1e-3]: tip position for the linear
/// block, log(R(q+h e_i) R(q-h e_i)^T) / 2h for the angular block.
Jacobian finite_difference_jacobian(const KinematicChain& chain, const JointConfig& q, double h);

/// Palm-frame origin and unit axis of every revolute joint, plus the tip pose.
struct ChainFrames {
  std::vector<Eigen::Vector3d> joint_origins;
  std::vector<Eigen::Vector3d> joint_axes;
  Transform tip;
};
ChainFrames chain_frames(const KinematicChain& chain, const JointConfig& q);

/// Fingertip position only (the workspace and retargeting hot path).
Eigen::Vector3d tip_position(const KinematicChain& chain, const JointConfig& q);

}  // namespace dexkin
