#include <benchmark/benchmark.h>

#include "dexkin/archetype.hpp"
#include "dexkin/workspace.hpp"

namespace {

using namespace dexkin;

struct Clouds {
  std::vector<Eigen::Vector3d> finger;
  std::vector<Eigen::Vector3d> thumb;
};

Clouds make_clouds(std::size_t n) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  Clouds c;
  for (const auto& s : sample_workspace(m.chain("index"), "index", n, 0, kFingerStream)) c.finger.push_back(s.tip);
  for (const auto& s : sample_workspace(m.chain("thumb"), "thumb", n, 0, kThumbStream)) c.thumb.push_back(s.tip);
  return c;
}

void BM_FindContactsGrid(benchmark::State& state) {
  const Clouds c = make_clouds(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_contacts(c.finger, c.thumb, kDefaultContactThreshold, kDefaultVoxel, ContactKeep::kNone).contact_count);
  }
  state.SetComplexityN(state.range(0));
}

void BM_FindContactsReference(benchmark::State& state) {
  const Clouds c = make_clouds(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_contacts_reference(c.finger, c.thumb, kDefaultContactThreshold, kDefaultVoxel, ContactKeep::kNone)
            .contact_count);
  }
  state.SetComplexityN(state.range(0));
}

void BM_SampleWorkspace(benchmark::State& state) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const auto exec = state.range(1) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_workspace(m.chain("index"), "index", static_cast<std::size_t>(state.range(0)), 0, kFingerStream, exec));
  }
}

}  // namespace

BENCHMARK(BM_FindContactsGrid)->RangeMultiplier(4)->Range(500, 8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindContactsReference)->RangeMultiplier(4)->Range(500, 8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleWorkspace)->Args({25000, 0})->Args({25000, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
