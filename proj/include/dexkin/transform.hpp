#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dexkin {

/// Rigid transform in 3-D. Maps child-frame coordinates into the parent frame.
struct Transform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Transform identity() { return {}; }

  Transform operator*(const Transform& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
  Transform inverse() const {
    Eigen::Matrix3d rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

// Extrinsic XYZ roll-pitch-yaw: R = Rz(yaw) * Ry(pitch) * Rx(roll).
Eigen::Matrix3d rotation_from_rpy(const Eigen::Vector3d& rpy);
Eigen::Vector3d rpy_from_rotation(const Eigen::Matrix3d& rotation);

/// Rotation about a unit axis (Rodrigues).
Eigen::Matrix3d axis_angle(const Eigen::Vector3d& axis, double angle);

/// Rotation vector (axis * angle) of a rotation matrix, angle in [0, pi].
Eigen::Vector3d rotation_log(const Eigen::Matrix3d& rotation);

/// Deviation of a rotation matrix from SO(3): max of |R^T R - I| and |det R - 1|.
double orthonormality_error(const Eigen::Matrix3d& rotation);

/// URDF-style pose: translation plus roll-pitch-yaw. Kept in this form so that
/// model files round-trip through the exact literals they were written with.
struct Pose {
  Eigen::Vector3d xyz = Eigen::Vector3d::Zero();
  Eigen::Vector3d rpy = Eigen::Vector3d::Zero();

  Transform transform() const { return {rotation_from_rpy(rpy), xyz}; }
  bool is_identity() const { return xyz.isZero(0.0) && rpy.isZero(0.0); }
  friend bool operator==(const Pose& a, const Pose& b) { return a.xyz == b.xyz && a.rpy == b.rpy; }
};

}  // namespace dexkin
