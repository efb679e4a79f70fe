#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dexkin/model.hpp"

namespace dexkin {

inline constexpr int kHumanKeypointCount = 21;
inline constexpr std::size_t kKeyVectorCount = 10;

/// Keypoint indices: wrist; thumb CMC/MCP/IP/TIP; then index, middle, ring,
/// pinky each MCP/PIP/DIP/TIP.
namespace keypoint {
inline constexpr int kWrist = 0;
inline constexpr int kThumbCmc = 1;
inline constexpr int kThumbMcp = 2;
inline constexpr int kThumbIp = 3;
inline constexpr int kThumbTip = 4;
/// MCP index of a non-thumb finger; PIP, DIP and TIP follow it.
int finger_base(std::string_view finger);
/// TIP index of any finger including the thumb.
int tip(std::string_view finger);
}  // namespace keypoint

/// Keypoints are in the wrist frame, axes aligned with the robot palm frame.
struct HumanHandFrame {
  double timestamp = 0.0;
  std::array<Eigen::Vector3d, kHumanKeypointCount> keypoints = [] {
    std::array<Eigen::Vector3d, kHumanKeypointCount> zero;
    zero.fill(Eigen::Vector3d::Zero());
    return zero;
  }();
};
/// Throws std::invalid_argument on non-finite data.
void check_frame(const HumanHandFrame& frame);

/// Robot side of an endpoint: "palm" (palm origin) or a chain name (its tip).
inline constexpr std::string_view kPalmPoint = "palm";

struct KeyEndpoint {
  int human = 0;
  std::string robot;
  friend bool operator==(const KeyEndpoint&, const KeyEndpoint&) = default;
};

struct KeyVectorPair {
  KeyEndpoint from;
  KeyEndpoint to;
  double scale = 1.0;
  friend bool operator==(const KeyVectorPair&, const KeyVectorPair&) = default;
};

/// v_i = to_i - from_i on both hands.
struct KeyVectorSpec {
  std::vector<KeyVectorPair> pairs;
  friend bool operator==(const KeyVectorSpec&, const KeyVectorSpec&) = default;
};

/// Nominal human palm-to-middle-tip reach in meters.
inline constexpr double kHumanReach = 0.17;

/// palm to each tip (4), thumb tip to index, middle, ring (3), index-middle and
/// middle-ring (2), wrist to thumb tip (1). One shared scale kHumanReach /
/// (robot palm-to-middle-tip distance at q = 0).
KeyVectorSpec default_key_vector_spec(const HandModel& model);

/// Throws std::invalid_argument unless there are 10 pairs with positive scales
/// and valid keypoint indices; with a model, robot endpoints must exist too.
void check_key_vector_spec(const KeyVectorSpec& spec);
void check_key_vector_spec(const KeyVectorSpec& spec, const HandModel& model);

using KeyVectors = std::vector<Eigen::Vector3d>;

KeyVectors key_vectors_human(const HumanHandFrame& frame, const KeyVectorSpec& spec);
/// q is the hand-level configuration. Throws UnknownChainError for a bad endpoint.
KeyVectors key_vectors_robot(const HandModel& model, const JointConfig& q, const KeyVectorSpec& spec);

/// sum_i ||v_h_i - c_i v_r_i(q)||^2, in m^2.
double retarget_energy(const KeyVectors& v_h, const HandModel& model, const JointConfig& q,
                       const KeyVectorSpec& spec);
/// Analytic gradient of retarget_energy with respect to q.
Eigen::VectorXd retarget_energy_gradient(const KeyVectors& v_h, const HandModel& model, const JointConfig& q,
                                         const KeyVectorSpec& spec);

struct RetargetOptions {
  int max_iterations = 100;
  double tolerance = 1e-14;       // stop when an accepted step lowers the energy by less (m^2)
  double initial_damping = 1e-3;  // relative to the largest diagonal entry of J^T J
  double damping_up = 10.0;
  double damping_down = 0.3;
  int max_backtracks = 40;
  bool clamp_to_limits = true;
  double smoothing = 0.0;  // lambda: adds lambda ||q - q0||^2
  // Also start from the 25%, 50% and 75% points of the limit box and keep the
  // lowest final energy (q0 wins ties within tolerance).
  bool multi_start = true;
};
void check_options(const RetargetOptions& opts);

enum class Termination { kConverged, kMaxIterations, kStalled };
std::string_view termination_name(Termination t);

struct RetargetResult {
  JointConfig q;
  double energy = 0.0;  // objective at q, including the smoothing term
  int iterations = 0;   // accepted steps
  Termination termination = Termination::kConverged;
  JointConfig start;                 // starting point of the returned run
  std::vector<double> energy_trace;  // objective at `start` and after every accepted step
};

/// Damped Gauss-Newton (Levenberg-Marquardt) on the key-vector residuals,
/// projected onto the joint limits when clamping is on. A trial step is
/// accepted only if it does not raise the objective; otherwise the damping
/// grows and the step shrinks. The returned energy never exceeds the
/// objective at q0. Throws std::domain_error on non-finite energy.
RetargetResult retarget_frame(const HumanHandFrame& frame, const HandModel& model, const KeyVectorSpec& spec,
                              const JointConfig& q0, const RetargetOptions& opts = {});

struct StreamWarning {
  std::size_t frame = 0;
  double timestamp = 0.0;
  std::string message;
};

/// Warm-started sequential driver. Frame k starts from the output of frame k-1
/// (frame 0 from the clamped zero pose). A failed frame repeats the previous q
/// and records a warning.
class RetargetStream {
 public:
  RetargetStream(const HandModel& model, KeyVectorSpec spec, RetargetOptions opts);

  const JointConfig& push(const HumanHandFrame& frame);
  /// Emits the previous q for a frame that could not be read.
  const JointConfig& hold(double timestamp, std::string reason);

  const JointConfig& current() const { return q_; }
  const std::vector<StreamWarning>& warnings() const { return warnings_; }
  std::size_t frames() const { return count_; }

 private:
  const HandModel* model_;
  KeyVectorSpec spec_;
  RetargetOptions opts_;
  JointConfig q_;
  std::optional<double> last_t_;
  std::size_t count_ = 0;
  std::vector<StreamWarning> warnings_;
};

std::vector<JointConfig> retarget_stream(const std::vector<HumanHandFrame>& frames, const HandModel& model,
                                         const KeyVectorSpec& spec, const RetargetOptions& opts = {},
                                         std::vector<StreamWarning>* warnings = nullptr);

enum class AngleKind {
  kThreePoint,  // bend at the middle point: 0 when the three points are collinear
  kDihedral,    // signed angle between planes (p0,p1,p2) and (p1,p2,p3) about p1->p2
  kConstant,    // no measurement; the joint takes clamp(offset)
};

struct JointMapEntry {
  std::string joint;
  AngleKind kind = AngleKind::kThreePoint;
  std::vector<int> points;  // 3 for kThreePoint, 4 for kDihedral, none for kConstant
  double gain = 1.0;
  double offset = 0.0;  // radians
  friend bool operator==(const JointMapEntry&, const JointMapEntry&) = default;
};

struct JointMapping {
  std::vector<JointMapEntry> entries;
  friend bool operator==(const JointMapping&, const JointMapping&) = default;
};

/// Bend angles between wrist/MCP/PIP/DIP/TIP along each finger for the flexion
/// joints, a dihedral about the wrist-CMC line for thumb_cmc_rot, constant 0
/// for abduction joints. Throws for joint names outside the archetype scheme.
JointMapping default_joint_mapping(const HandModel& model);

/// Throws std::invalid_argument unless every revolute joint is mapped exactly once.
void check_joint_mapping(const JointMapping& mapping, const HandModel& model);

/// Measured human angle of one entry. Throws std::domain_error naming the
/// joint when a segment (three-point) or plane normal (dihedral) is below 1e-9.
double measure_angle(const HumanHandFrame& frame, const JointMapEntry& entry);

/// clamp(gain * angle + offset) per joint, hand-level order.
JointConfig direct_joint_map(const HumanHandFrame& frame, const JointMapping& mapping, const HandModel& model);

// File formats.
KeyVectorSpec parse_key_vector_spec(std::string_view json_text);
std::string key_vector_spec_json(const KeyVectorSpec& spec);
JointMapping parse_joint_mapping(std::string_view json_text);
std::string joint_mapping_json(const JointMapping& mapping);
/// One JSONL record {"t": seconds, "kp": [[x,y,z] x 21]}. Throws std::invalid_argument.
HumanHandFrame parse_frame_record(std::string_view line);
std::string frame_record_json(const HumanHandFrame& frame);
/// Header "t,q0..q{n-1}", values with 6 decimals.
std::string joint_csv_header(std::size_t dof);
std::string joint_csv_row(double t, const JointConfig& q);

}  // namespace dexkin
