#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dexkin/model.hpp"

namespace dexkin {

enum class JacobianBlock { kLinear, kAngular };
std::string_view block_name(JacobianBlock block);

/// sqrt(det(B B^T)) for a 3 x n block, via Cauchy-Binet: the sum of squared
/// 3x3 column minors. Minors below 64 eps of their Hadamard bound count as 0,
/// so rank-deficient blocks give exactly 0. Throws on a non-3-row block, zero
/// columns, or non-finite entries.
double yoshikawa_measure(const Eigen::Ref<const Eigen::MatrixXd>& block);

double manipulability_at(const HandModel& model, std::string_view chain, const JointConfig& q, JacobianBlock block);

struct PosePreset {
  std::string name;
  JointConfig q;  // one chain, revolute order
};

/// Abduction used by the default presets. Zero abduction collapses the leap
/// angular block to rank 2; a small splay keeps every design comparable.
inline constexpr double kPresetAbduction = 0.1;

/// down: flexion 0; up: MCP-1 flexion at its upper limit; curled: every
/// flexion joint at half its upper limit. Abduction joints take `abduction`
/// (clamped to limits) in all three. Roles come from joint names.
std::vector<PosePreset> default_presets(const HandModel& model, std::string_view chain,
                                        double abduction = kPresetAbduction);

/// Throws std::invalid_argument naming the preset if q has the wrong length or leaves the limits.
void check_preset(const HandModel& model, std::string_view chain, const PosePreset& preset);

struct ManipRow {
  std::string model;
  std::string preset;
  JacobianBlock block = JacobianBlock::kLinear;
  double measure = 0.0;
};

struct ModelPresets {
  const HandModel* model = nullptr;
  std::vector<PosePreset> presets;
};

/// Rows ordered (model, preset, block), independent of evaluation order.
std::vector<ManipRow> manipulability_report(const std::vector<ModelPresets>& inputs, std::string_view chain);

/// "model,preset,block,measure" with 6-significant-digit scientific measures.
std::string manip_report_csv(const std::vector<ManipRow>& rows);

}  // namespace dexkin
