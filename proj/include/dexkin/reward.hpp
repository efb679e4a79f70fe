#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace dexkin {

struct RewardScales {
  double rotation = 1.25;
  double pose = -0.1;
  double work = -1.0;
  double torque = -0.1;
  double linvel = -0.3;
};
/// Throws std::invalid_argument unless rotation > 0 and every penalty scale <= 0.
void check_scales(const RewardScales& scales);

enum class PenaltyForm { kSquaredL2, kL2, kL1 };
std::string_view penalty_form_name(PenaltyForm form);
PenaltyForm parse_penalty_form(std::string_view name);

/// Norm applied to each penalty vector: q - q_grasp, tau * dq (elementwise),
/// tau, v_obj.
struct PenaltyForms {
  PenaltyForm pose = PenaltyForm::kSquaredL2;
  PenaltyForm work = PenaltyForm::kL1;
  PenaltyForm torque = PenaltyForm::kSquaredL2;
  PenaltyForm linvel = PenaltyForm::kSquaredL2;
};

struct TrajectoryStep {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd q_target;
  Eigen::VectorXd tau;
  Eigen::VectorXd dq;  // per tick
  double wz = 0.0;     // object angular velocity about the vertical axis, rad/s
  Eigen::Vector3d v_obj = Eigen::Vector3d::Zero();
  Eigen::VectorXd q_grasp;
};

struct RewardTerms {
  double r_rot = 0.0;
  double pose = 0.0;
  double work = 0.0;
  double torque = 0.0;
  double linvel = 0.0;
};

struct RewardBreakdown {
  RewardTerms raw;     // unscaled
  RewardTerms scaled;  // scale * raw
  double total = 0.0;  // scaled terms summed in declaration order
};

/// clip(wz, -0.25, 0.25). Throws std::invalid_argument on non-finite input.
double rotation_reward(double wz);

/// Throws std::invalid_argument on mismatched vector lengths or non-finite data.
RewardBreakdown step_reward(const TrajectoryStep& step, const RewardScales& scales = {},
                            const PenaltyForms& forms = {});

inline constexpr double kDefaultTickRate = 20.0;

struct EpisodeSummary {
  std::size_t steps = 0;
  RewardTerms raw_sums;
  RewardTerms scaled_sums;
  double total = 0.0;
  double mean_wz = 0.0;
  double tick_rate = kDefaultTickRate;  // Hz, reporting only
  double duration = 0.0;                // steps / tick_rate, seconds
  double total_per_second = 0.0;
};

/// Throws std::invalid_argument on an empty sequence.
EpisodeSummary episode_return(const std::vector<TrajectoryStep>& steps, const RewardScales& scales = {},
                              const PenaltyForms& forms = {}, double tick_rate = kDefaultTickRate);

inline constexpr int kTrajectoryJoints = 16;

/// Header t,q0..q15,qt0..qt15,tau0..tau15,dq0..dq15,wz,vx,vy,vz,qg0..qg15 in
/// any column order. Throws std::invalid_argument naming a missing,
/// duplicated or unknown column, or the line of a bad value.
std::vector<TrajectoryStep> parse_trajectory_csv(std::string_view text);
std::string trajectory_csv(const std::vector<TrajectoryStep>& steps);

/// {"scales", "forms"} with any subset of fields; the rest keep defaults.
void parse_reward_config(std::string_view json_text, RewardScales& scales, PenaltyForms& forms);

/// Per-step breakdowns plus the episode summary.
std::string reward_report_json(const std::vector<TrajectoryStep>& steps, const std::vector<RewardBreakdown>& rows,
                               const EpisodeSummary& summary, const RewardScales& scales, const PenaltyForms& forms);

}  // namespace dexkin
