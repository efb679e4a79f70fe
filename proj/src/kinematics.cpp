#include "dexkin/kinematics.hpp"

#include <stdexcept>

namespace dexkin {

namespace {

void check_dimension(const KinematicChain& chain, const JointConfig& q) {
  if (static_cast<std::size_t>(q.size()) != chain.dof()) {
    throw std::invalid_argument("expected " + std::to_string(chain.dof()) + " joint values, got " +
                                std::to_string(q.size()));
  }
}

}  // namespace

ChainFrames chain_frames(const KinematicChain& chain, const JointConfig& q) {
  check_dimension(chain, q);
  ChainFrames out;
  out.joint_origins.reserve(chain.dof());
  out.joint_axes.reserve(chain.dof());
  Transform t;
  Eigen::Index qi = 0;
  for (const auto& joint : chain.joints) {
    t = t * joint.origin.transform();
    if (!joint.is_revolute()) continue;
    out.joint_origins.push_back(t.translation);
    out.joint_axes.push_back(t.rotation * joint.axis);
    t.rotation = t.rotation * axis_angle(joint.axis, q[qi++]);
  }
  out.tip = t * chain.tip_offset.transform();
  return out;
}

Transform forward_kinematics(const KinematicChain& chain, const JointConfig& q) {
  return chain_frames(chain, q).tip;
}

Eigen::Vector3d tip_position(const KinematicChain& chain, const JointConfig& q) {
  return chain_frames(chain, q).tip.translation;
}

Jacobian geometric_jacobian(const KinematicChain& chain, const JointConfig& q) {
  const auto frames = chain_frames(chain, q);
  const auto n = static_cast<Eigen::Index>(chain.dof());
  Jacobian jac;
  jac.linear.resize(3, n);
  jac.angular.resize(3, n);
  jac.joint_names = chain.revolute_names();
  const Eigen::Vector3d& tip = frames.tip.translation;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& z = frames.joint_axes[static_cast<std::size_t>(i)];
    jac.linear.col(i) = z.cross(tip - frames.joint_origins[static_cast<std::size_t>(i)]);
    jac.angular.col(i) = z;
  }
  return jac;
}

Jacobian finite_difference_jacobian(const KinematicChain& chain, const JointConfig& q, double h) {
  check_dimension(chain, q);
  if (!(h > 0.0 && h <= 1e-3)) throw std::invalid_argument("finite-difference step must lie in (0, 1e-3]");
  const auto n = static_cast<Eigen::Index>(chain.dof());
  Jacobian jac;
  jac.linear.resize(3, n);
  jac.angular.resize(3, n);
  jac.joint_names = chain.revolute_names();
  for (Eigen::Index i = 0; i < n; ++i) {
    JointConfig plus = q;
    JointConfig minus = q;
    plus[i] += h;
    minus[i] -= h;
    const Transform tp = forward_kinematics(chain, plus);
    const Transform tm = forward_kinematics(chain, minus);
    jac.linear.col(i) = (tp.translation - tm.translation) / (2.0 * h);
    jac.angular.col(i) = rotation_log(tp.rotation * tm.rotation.transpose()) / (2.0 * h);
  }
  return jac;
}

}  // namespace dexkin
