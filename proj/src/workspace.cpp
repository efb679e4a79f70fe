#include "dexkin/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>
#include <omp.h>

#include "dexkin/kinematics.hpp"
#include "dexkin/rng.hpp"

namespace dexkin {
namespace {

struct VoxelHash {
  std::size_t operator()(const VoxelKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) * 0x165667B19E3779F9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using Pair = std::pair<std::size_t, std::size_t>;
using VoxelSet = std::unordered_set<VoxelKey, VoxelHash>;
using VoxelFirst = std::unordered_map<VoxelKey, Pair, VoxelHash>;

void check_search_args(double threshold, double voxel) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) throw std::invalid_argument("threshold must be > 0");
  if (!(voxel > 0.0) || !std::isfinite(voxel)) throw std::invalid_argument("voxel must be > 0");
}

// Per-thread (or whole-run) accumulator shared by both search paths.
struct Accumulator {
  std::size_t count = 0;
  VoxelSet voxels;
  VoxelFirst first;
  std::vector<Pair> all;

  void add(std::size_t i, std::size_t j, const Eigen::Vector3d& a, const Eigen::Vector3d& b, double voxel,
           ContactKeep keep) {
    ++count;
    const VoxelKey key = voxel_of(contact_point(a, b), voxel);
    voxels.insert(key);
    if (keep == ContactKeep::kPerVoxel) {
      auto [it, inserted] = first.try_emplace(key, i, j);
      if (!inserted && Pair{i, j} < it->second) it->second = {i, j};
    } else if (keep == ContactKeep::kAll) {
      all.emplace_back(i, j);
    }
  }

  void merge(Accumulator&& other) {
    count += other.count;
    voxels.merge(other.voxels);
    for (const auto& [key, pair] : other.first) {
      auto [it, inserted] = first.try_emplace(key, pair);
      if (!inserted && pair < it->second) it->second = pair;
    }
    all.insert(all.end(), other.all.begin(), other.all.end());
  }

  ContactSearch finish(ContactKeep keep) && {
    ContactSearch out;
    out.contact_count = count;
    out.occupied.assign(voxels.begin(), voxels.end());
    std::sort(out.occupied.begin(), out.occupied.end());
    if (keep == ContactKeep::kPerVoxel) {
      out.kept.reserve(first.size());
      for (const auto& kv : first) out.kept.push_back(kv.second);
    } else if (keep == ContactKeep::kAll) {
      out.kept = std::move(all);
    }
    std::sort(out.kept.begin(), out.kept.end());
    return out;
  }
};

}  // namespace

std::vector<WorkspaceSample> sample_workspace(const KinematicChain& chain, std::string_view chain_name, std::size_t n,
                                              std::uint64_t seed, std::uint32_t stream, Execution exec) {
  const auto joints = chain.revolute_joints();
  const auto dof = static_cast<Eigen::Index>(joints.size());
  const CounterRng rng(seed, stream);
  std::vector<WorkspaceSample> out(n);
  const auto fill = [&](std::size_t i) {
    JointConfig q(dof);
    for (Eigen::Index k = 0; k < dof; ++k) {
      const auto& lim = joints[static_cast<std::size_t>(k)]->limits;
      q[k] = lim.lower + (lim.upper - lim.lower) * rng.uniform(i, static_cast<std::uint32_t>(k));
    }
    out[i].chain = std::string(chain_name);
    out[i].tip = tip_position(chain, q);
    out[i].q = std::move(q);
  };
  if (exec == Execution::kParallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) fill(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fill(i);
  }
  return out;
}

VoxelKey voxel_of(const Eigen::Vector3d& p, double voxel) {
  return {static_cast<std::int64_t>(std::floor(p.x() / voxel)), static_cast<std::int64_t>(std::floor(p.y() / voxel)),
          static_cast<std::int64_t>(std::floor(p.z() / voxel))};
}

double voxel_volume(const std::vector<Eigen::Vector3d>& points, double voxel) {
  if (!(voxel > 0.0)) throw std::invalid_argument("voxel must be > 0");
  VoxelSet occupied;
  for (const auto& p : points) occupied.insert(voxel_of(p, voxel));
  const double edge_mm = voxel * 1000.0;
  return static_cast<double>(occupied.size()) * edge_mm * edge_mm * edge_mm;
}

ContactSearch find_contacts_reference(const std::vector<Eigen::Vector3d>& finger_tips,
                                      const std::vector<Eigen::Vector3d>& thumb_tips, double threshold, double voxel,
                                      ContactKeep keep) {
  check_search_args(threshold, voxel);
  Accumulator acc;
  for (std::size_t i = 0; i < finger_tips.size(); ++i) {
    for (std::size_t j = 0; j < thumb_tips.size(); ++j) {
      if ((finger_tips[i] - thumb_tips[j]).norm() < threshold) acc.add(i, j, finger_tips[i], thumb_tips[j], voxel, keep);
    }
  }
  return std::move(acc).finish(keep);
}

ContactSearch find_contacts(const std::vector<Eigen::Vector3d>& finger_tips,
                            const std::vector<Eigen::Vector3d>& thumb_tips, double threshold, double voxel,
                            ContactKeep keep) {
  check_search_args(threshold, voxel);

  // Thumb points sorted by grid cell; a cell's members form one contiguous run.
  std::vector<VoxelKey> cell(thumb_tips.size());
  std::vector<std::size_t> order(thumb_tips.size());
  for (std::size_t j = 0; j < thumb_tips.size(); ++j) {
    cell[j] = voxel_of(thumb_tips[j], threshold);
    order[j] = j;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cell[a] != cell[b] ? cell[a] < cell[b] : a < b;
  });
  std::vector<VoxelKey> sorted_cells(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted_cells[k] = cell[order[k]];

  const int threads = omp_get_max_threads();
  std::vector<Accumulator> partial(static_cast<std::size_t>(threads));
  const auto count = static_cast<std::int64_t>(finger_tips.size());

#pragma omp parallel num_threads(threads)
  {
    Accumulator& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t ii = 0; ii < count; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const Eigen::Vector3d& a = finger_tips[i];
      const VoxelKey c = voxel_of(a, threshold);
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          for (std::int64_t dz = -1; dz <= 1; ++dz) {
            const VoxelKey probe{c.x + dx, c.y + dy, c.z + dz};
            auto [lo, hi] = std::equal_range(sorted_cells.begin(), sorted_cells.end(), probe);
            for (auto it = lo; it != hi; ++it) {
              const std::size_t j = order[static_cast<std::size_t>(it - sorted_cells.begin())];
              if ((a - thumb_tips[j]).norm() < threshold) acc.add(i, j, a, thumb_tips[j], voxel, keep);
            }
          }
        }
      }
    }
  }

  Accumulator total = std::move(partial[0]);
  for (std::size_t t = 1; t < partial.size(); ++t) total.merge(std::move(partial[t]));
  return std::move(total).finish(keep);
}

OpposabilityRun opposability_volume(const HandModel& model, std::string_view finger, std::size_t n,
                                    std::uint64_t seed, double threshold, double voxel, ContactKeep keep) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  check_search_args(threshold, voxel);
  if (finger == "thumb") throw std::invalid_argument("finger must not be the thumb");
  const KinematicChain& finger_chain = model.chain(finger);
  const KinematicChain& thumb_chain = model.chain("thumb");

  const auto finger_samples = sample_workspace(finger_chain, finger, n, seed, kFingerStream);
  const auto thumb_samples = sample_workspace(thumb_chain, "thumb", n, seed, kThumbStream);
  std::vector<Eigen::Vector3d> finger_tips(n), thumb_tips(n);
  for (std::size_t i = 0; i < n; ++i) {
    finger_tips[i] = finger_samples[i].tip;
    thumb_tips[i] = thumb_samples[i].tip;
  }

  const ContactSearch search = find_contacts(finger_tips, thumb_tips, threshold, voxel, keep);

  OpposabilityRun run;
  auto& r = run.result;
  r.model = model.name;
  r.finger = std::string(finger);
  r.samples = n;
  r.pairs = n * n;
  r.contacts = search.contact_count;
  const double edge_mm = voxel * 1000.0;
  r.volume_mm3 = static_cast<double>(search.occupied.size()) * edge_mm * edge_mm * edge_mm;
  r.seed = seed;
  r.threshold = threshold;
  r.voxel = voxel;

  run.contacts.reserve(search.kept.size());
  for (const auto& [i, j] : search.kept) {
    ContactRecord c;
    c.finger_sample = i;
    c.thumb_sample = j;
    c.finger_q = finger_samples[i].q;
    c.thumb_q = thumb_samples[j].q;
    c.finger_tip = finger_tips[i];
    c.thumb_tip = thumb_tips[j];
    c.point = contact_point(c.finger_tip, c.thumb_tip);
    c.distance = (c.finger_tip - c.thumb_tip).norm();
    run.contacts.push_back(std::move(c));
  }
  return run;
}

std::string point_cloud_csv(const std::vector<Eigen::Vector3d>& points) {
  std::string out = "x,y,z\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", p.x(), p.y(), p.z());
    out += buf;
  }
  return out;
}

std::string opposability_json(const std::vector<OpposabilityResult>& results) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    list.push_back({{"model", r.model},
                    {"finger", r.finger},
                    {"samples", r.samples},
                    {"pairs", r.pairs},
                    {"contacts", r.contacts},
                    {"volume_mm3", r.volume_mm3},
                    {"seed", r.seed},
                    {"threshold", r.threshold},
                    {"voxel", r.voxel}});
  }
  return list.dump(2) + "\n";
}

}  // namespace dexkin
