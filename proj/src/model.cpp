#include "dexkin/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace dexkin {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr std::array<std::string_view, 5> kCanonicalOrder = {"thumb", "index", "middle", "ring", "pinky"};

}  // namespace

std::size_t KinematicChain::dof() const {
  return static_cast<std::size_t>(
      std::count_if(joints.begin(), joints.end(), [](const Joint& j) { return j.is_revolute(); }));
}

std::vector<const Joint*> KinematicChain::revolute_joints() const {
  std::vector<const Joint*> out;
  for (const auto& j : joints) {
    if (j.is_revolute()) out.push_back(&j);
  }
  return out;
}

std::vector<std::string> KinematicChain::revolute_names() const {
  std::vector<std::string> out;
  for (const auto* j : revolute_joints()) out.push_back(j->name);
  return out;
}

const KinematicChain* HandModel::find_chain(std::string_view chain_name) const {
  for (const auto& c : chains) {
    if (c.name == chain_name) return &c.chain;
  }
  return nullptr;
}

const KinematicChain& HandModel::chain(std::string_view chain_name) const {
  const auto* c = find_chain(chain_name);
  if (c == nullptr) throw UnknownChainError(std::string(chain_name));
  return *c;
}

std::vector<std::string> HandModel::chain_names() const {
  std::vector<std::string> out;
  for (const auto& c : chains) out.push_back(c.name);
  return out;
}

std::size_t HandModel::dof() const {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.chain.dof();
  return n;
}

std::size_t HandModel::chain_offset(std::string_view chain_name) const {
  std::size_t offset = 0;
  for (const auto& c : chains) {
    if (c.name == chain_name) return offset;
    offset += c.chain.dof();
  }
  throw UnknownChainError(std::string(chain_name));
}

JointConfig HandModel::chain_config(const JointConfig& hand_q, std::string_view chain_name) const {
  if (static_cast<std::size_t>(hand_q.size()) != dof()) {
    throw std::invalid_argument("expected " + std::to_string(dof()) + " values, got " +
                                std::to_string(hand_q.size()));
  }
  const auto offset = static_cast<Eigen::Index>(chain_offset(chain_name));
  return hand_q.segment(offset, static_cast<Eigen::Index>(chain(chain_name).dof()));
}

JointConfig HandModel::lower_limits() const {
  JointConfig out(static_cast<Eigen::Index>(dof()));
  Eigen::Index i = 0;
  for (const auto& c : chains) {
    for (const auto* j : c.chain.revolute_joints()) out[i++] = j->limits.lower;
  }
  return out;
}

JointConfig HandModel::upper_limits() const {
  JointConfig out(static_cast<Eigen::Index>(dof()));
  Eigen::Index i = 0;
  for (const auto& c : chains) {
    for (const auto* j : c.chain.revolute_joints()) out[i++] = j->limits.upper;
  }
  return out;
}

JointConfig HandModel::clamp(const JointConfig& q) const {
  return q.cwiseMax(lower_limits()).cwiseMin(upper_limits());
}

std::vector<std::string> HandModel::revolute_names() const {
  std::vector<std::string> out;
  for (const auto& c : chains) {
    for (auto& n : c.chain.revolute_names()) out.push_back(std::move(n));
  }
  return out;
}

int canonical_chain_rank(std::string_view chain_name) {
  for (std::size_t i = 0; i < kCanonicalOrder.size(); ++i) {
    if (kCanonicalOrder[i] == chain_name) return static_cast<int>(i);
  }
  return static_cast<int>(kCanonicalOrder.size());
}

void sort_chains_canonically(std::vector<NamedChain>& chains) {
  std::stable_sort(chains.begin(), chains.end(), [](const NamedChain& a, const NamedChain& b) {
    return canonical_chain_rank(a.name) < canonical_chain_rank(b.name);
  });
}

std::vector<Diagnostic> validate_model(const HandModel& model) {
  std::vector<Diagnostic> out;
  auto add = [&out](std::string inv, std::string loc, std::string msg) {
    out.push_back({std::move(inv), std::move(loc), std::move(msg)});
  };

  const auto check_rotation = [&](const Pose& pose, const std::string& loc) {
    if (!pose.xyz.allFinite() || !pose.rpy.allFinite()) {
      add("finite-pose", loc, "pose contains non-finite values");
    } else if (orthonormality_error(pose.transform().rotation) > kUnitTolerance) {
      add("orthonormal-rotation", loc, "rotation is not orthonormal with determinant +1");
    }
  };
  check_rotation(model.palm_frame, model.name + "/palm_frame");

  const auto thumbs = std::count_if(model.chains.begin(), model.chains.end(),
                                    [](const NamedChain& c) { return c.name == "thumb"; });
  if (thumbs != 1) {
    add("single-thumb", model.name, "expected exactly one chain named \"thumb\", found " + std::to_string(thumbs));
  }

  std::set<std::string> chain_names;
  for (const auto& nc : model.chains) {
    const std::string loc = model.name + "/" + nc.name;
    if (!chain_names.insert(nc.name).second) add("unique-chain-names", loc, "duplicate chain name " + nc.name);

    if (nc.chain.dof() == 0) add("chain-has-revolute", loc, "chain has no revolute joint");
    check_rotation(nc.chain.tip_offset, loc + "/tip_offset");

    std::set<std::string> joint_names;
    for (const auto& j : nc.chain.joints) {
      const std::string jloc = loc + "/" + j.name;
      if (!joint_names.insert(j.name).second) add("unique-joint-names", jloc, "duplicate joint name " + j.name);
      check_rotation(j.origin, jloc + "/origin");
      if (j.is_revolute()) {
        if (std::abs(j.axis.norm() - 1.0) > kUnitTolerance) {
          add("unit-axis", jloc, "joint " + j.name + " axis is not unit length");
        }
        if (!(j.limits.lower <= j.limits.upper)) {
          add("ordered-limits", jloc, "joint " + j.name + " has lower limit above upper limit");
        }
      } else if (!j.axis.isZero(0.0) || j.limits != JointLimits{}) {
        add("fixed-joint-bare", jloc, "fixed joint " + j.name + " carries an axis or limits");
      }
    }
  }

  if (model.chains.size() == 4 && model.dof() != 16) {
    add("sixteen-dof", model.name, "4-chain hand has " + std::to_string(model.dof()) + " revolute joints, expected 16");
  }
  return out;
}

}  // namespace dexkin
