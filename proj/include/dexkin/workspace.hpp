#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dexkin/model.hpp"

namespace dexkin {

enum class Execution { kSerial, kParallel };

struct WorkspaceSample {
  std::string chain;
  JointConfig q;
  Eigen::Vector3d tip = Eigen::Vector3d::Zero();  // palm frame, meters
};

/// n configurations drawn uniformly per joint within limits. Sample i uses
/// counter-based draws keyed by (seed, stream, i), so the output does not
/// depend on execution order.
std::vector<WorkspaceSample> sample_workspace(const KinematicChain& chain, std::string_view chain_name, std::size_t n,
                                              std::uint64_t seed, std::uint32_t stream = 0,
                                              Execution exec = Execution::kParallel);

struct VoxelKey {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  friend auto operator<=>(const VoxelKey&, const VoxelKey&) = default;
};
VoxelKey voxel_of(const Eigen::Vector3d& p, double voxel);

/// Distinct occupied voxels (floor(p / voxel) per axis) times voxel^3, in mm^3.
double voxel_volume(const std::vector<Eigen::Vector3d>& points, double voxel);

struct ContactRecord {
  std::size_t finger_sample = 0;
  std::size_t thumb_sample = 0;
  JointConfig finger_q;
  JointConfig thumb_q;
  Eigen::Vector3d finger_tip = Eigen::Vector3d::Zero();
  Eigen::Vector3d thumb_tip = Eigen::Vector3d::Zero();
  Eigen::Vector3d point = Eigen::Vector3d::Zero();  // midpoint of the two tips
  double distance = 0.0;
};

/// Which contacts to hand back; the volume is always computed from all of them.
enum class ContactKeep { kNone, kPerVoxel, kAll };

struct ContactSearch {
  std::size_t contact_count = 0;
  std::vector<VoxelKey> occupied;  // sorted
  // (finger index, thumb index), sorted. kPerVoxel keeps the smallest pair of each voxel.
  std::vector<std::pair<std::size_t, std::size_t>> kept;
};

/// Every (finger, thumb) pair with tip distance < threshold, via a uniform grid
/// of cell size `threshold` and an OpenMP loop over finger points.
ContactSearch find_contacts(const std::vector<Eigen::Vector3d>& finger_tips,
                            const std::vector<Eigen::Vector3d>& thumb_tips, double threshold, double voxel,
                            ContactKeep keep);

/// Serial O(n*m) brute force over all pairs. Same contract as find_contacts.
ContactSearch find_contacts_reference(const std::vector<Eigen::Vector3d>& finger_tips,
                                      const std::vector<Eigen::Vector3d>& thumb_tips, double threshold, double voxel,
                                      ContactKeep keep);

inline Eigen::Vector3d contact_point(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return 0.5 * (a + b); }

struct OpposabilityResult {
  std::string model;
  std::string finger;
  std::size_t samples = 0;  // configurations drawn per chain
  std::size_t pairs = 0;    // finger x thumb pairs tested
  std::size_t contacts = 0;
  double volume_mm3 = 0.0;
  std::uint64_t seed = 0;
  double threshold = 0.0;  // meters
  double voxel = 0.0;      // meters
};

struct OpposabilityRun {
  OpposabilityResult result;
  std::vector<ContactRecord> contacts;  // sorted by (finger_sample, thumb_sample)
};

inline constexpr double kDefaultContactThreshold = 0.015;
inline constexpr double kDefaultVoxel = 0.005;
inline constexpr std::size_t kDefaultSamples = 25000;
inline constexpr std::uint32_t kFingerStream = 1;
inline constexpr std::uint32_t kThumbStream = 2;

/// Draws n finger and n thumb configurations and tests all n^2 pairs for a
/// tip distance below threshold. Volume is voxel_volume of the contact points.
OpposabilityRun opposability_volume(const HandModel& model, std::string_view finger, std::size_t n,
                                    std::uint64_t seed, double threshold = kDefaultContactThreshold,
                                    double voxel = kDefaultVoxel, ContactKeep keep = ContactKeep::kNone);

/// "x,y,z" header, meters, 9 significant digits.
std::string point_cloud_csv(const std::vector<Eigen::Vector3d>& points);
/// JSON array of results with every field.
std::string opposability_json(const std::vector<OpposabilityResult>& results);

}  // namespace dexkin
