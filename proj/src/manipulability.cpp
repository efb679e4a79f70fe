#include "dexkin/manipulability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "dexkin/archetype.hpp"
#include "dexkin/kinematics.hpp"

namespace dexkin {

namespace {

constexpr double kMinorTolerance = 64.0 * std::numeric_limits<double>::epsilon();

double minor3(const Eigen::Ref<const Eigen::MatrixXd>& b, Eigen::Index i, Eigen::Index j, Eigen::Index k) {
  const Eigen::Vector3d u = b.col(i);
  const Eigen::Vector3d v = b.col(j);
  const Eigen::Vector3d w = b.col(k);
  const double det = u.dot(v.cross(w));
  const double bound = u.norm() * v.norm() * w.norm();
  return std::abs(det) <= kMinorTolerance * bound ? 0.0 : det;
}

}  // namespace

std::string_view block_name(JacobianBlock block) {
  return block == JacobianBlock::kLinear ? "linear" : "angular";
}

double yoshikawa_measure(const Eigen::Ref<const Eigen::MatrixXd>& block) {
  if (block.rows() != 3 || block.cols() < 1) {
    throw std::invalid_argument("yoshikawa_measure expects a 3 x n block with n >= 1");
  }
  if (!block.allFinite()) throw std::domain_error("yoshikawa_measure: non-finite Jacobian entry");
  const Eigen::Index n = block.cols();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) {
        const double m = minor3(block, i, j, k);
        sum += m * m;
      }
    }
  }
  return std::sqrt(sum);
}

double manipulability_at(const HandModel& model, std::string_view chain, const JointConfig& q, JacobianBlock block) {
  const auto jac = geometric_jacobian(model.chain(chain), q);
  return yoshikawa_measure(block == JacobianBlock::kLinear ? jac.linear : jac.angular);
}

std::vector<PosePreset> default_presets(const HandModel& model, std::string_view chain_name, double abduction) {
  const auto& chain = model.chain(chain_name);
  const auto joints = chain.revolute_joints();
  const auto n = static_cast<Eigen::Index>(joints.size());
  PosePreset down{"down", JointConfig::Zero(n)};
  PosePreset up{"up", JointConfig::Zero(n)};
  PosePreset curled{"curled", JointConfig::Zero(n)};
  bool mcp_seen = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Joint& j = *joints[static_cast<std::size_t>(i)];
    const auto role = joint_role(j.name);
    if (role == JointRole::kAbduction) {
      const double a = j.limits.clamp(abduction);
      down.q[i] = up.q[i] = curled.q[i] = a;
      continue;
    }
    const double rest = j.limits.clamp(0.0);
    down.q[i] = rest;
    curled.q[i] = j.limits.clamp(0.5 * j.limits.upper);
    // The first flexion joint stands in for MCP-1 when names carry no role.
    const bool is_mcp = role == JointRole::kMcpFlexion || (!mcp_seen && role != JointRole::kOther);
    if (is_mcp && !mcp_seen) {
      up.q[i] = j.limits.upper;
      mcp_seen = true;
    } else {
      up.q[i] = rest;
    }
  }
  return {down, up, curled};
}

void check_preset(const HandModel& model, std::string_view chain_name, const PosePreset& preset) {
  const auto joints = model.chain(chain_name).revolute_joints();
  if (static_cast<std::size_t>(preset.q.size()) != joints.size()) {
    throw std::invalid_argument("preset " + preset.name + ": expected " + std::to_string(joints.size()) +
                                " values for chain " + std::string(chain_name) + ", got " +
                                std::to_string(preset.q.size()));
  }
  for (std::size_t i = 0; i < joints.size(); ++i) {
    if (!joints[i]->limits.contains(preset.q[static_cast<Eigen::Index>(i)])) {
      throw std::invalid_argument("preset " + preset.name + ": joint " + joints[i]->name + " outside its limits");
    }
  }
}

std::vector<ManipRow> manipulability_report(const std::vector<ModelPresets>& inputs, std::string_view chain) {
  std::vector<ManipRow> rows;
  for (const auto& mp : inputs) {
    if (mp.model == nullptr) throw std::invalid_argument("manipulability_report: null model");
    for (const auto& preset : mp.presets) {
      check_preset(*mp.model, chain, preset);
      for (auto block : {JacobianBlock::kLinear, JacobianBlock::kAngular}) {
        rows.push_back({mp.model->name, preset.name, block, 0.0});
      }
    }
  }
  // Rows were laid out above; each slot is filled independently.
  std::vector<const HandModel*> row_model;
  std::vector<const PosePreset*> row_preset;
  for (const auto& mp : inputs) {
    for (const auto& preset : mp.presets) {
      for (int b = 0; b < 2; ++b) {
        row_model.push_back(mp.model);
        row_preset.push_back(&preset);
      }
    }
  }
  const auto count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(static)
  for (long r = 0; r < count; ++r) {
    auto& row = rows[static_cast<std::size_t>(r)];
    row.measure = manipulability_at(*row_model[static_cast<std::size_t>(r)], chain,
                                    row_preset[static_cast<std::size_t>(r)]->q, row.block);
  }
  return rows;
}

std::string manip_report_csv(const std::vector<ManipRow>& rows) {
  std::string out = "model,preset,block,measure\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.5e", r.measure);
    out += r.model + "," + r.preset + "," + std::string(block_name(r.block)) + "," + buf + "\n";
  }
  return out;
}

}  // namespace dexkin
