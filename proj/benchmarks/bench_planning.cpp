#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "cogmap/datagen.hpp"
#include "cogmap/lookup_table.hpp"
#include "cogmap/obstacles.hpp"
#include "cogmap/replan.hpp"
#include "cogmap/scenario.hpp"
#include "cogmap/search.hpp"
#include "cogmap/smoothing.hpp"
#include "cogmap/training.hpp"

using namespace cogmap;

namespace {

const Scenario& pillar() {
  static const Scenario s = load_scenario(std::string(COGMAP_DATA_DIR) + "/scenarios/pillar.yaml");
  return s;
}

const Dataset& pillar_data() {
  static const Dataset d = [] {
    DatagenParams p;
    p.sampler = pillar().sampler;
    return generate_pick_place(pillar().model, pillar().regions, pillar().datagen_trajectories, pillar().datagen_seed, p);
  }();
  return d;
}

/// GNG on the pillar dataset, cached per size.
const Network& gng(std::size_t neurons) {
  static std::map<std::size_t, Network> cache;
  auto it = cache.find(neurons);
  if (it == cache.end()) {
    TrainParams p;
    p.target_neurons = neurons;
    p.lambda = neurons > 1000 ? 10 : 100;
    p.iterations = neurons > 1000 ? 12 * neurons : 60000;
    it = cache.emplace(neurons, train_gng(pillar_data(), p, 1)).first;
  }
  return it->second;
}

const LookupTable& lut(std::size_t neurons) {
  static std::map<std::size_t, LookupTable> cache;
  auto it = cache.find(neurons);
  if (it == cache.end()) it = cache.emplace(neurons, build_lookup(gng(neurons), pillar().model, pillar().grid)).first;
  return it->second;
}

void BM_Bmu(benchmark::State& state) {
  const Network& net = gng(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  std::vector<JointConfig> queries;
  for (int i = 0; i < 256; ++i) queries.push_back(JointConfig{{c(rng), c(rng)}});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(best_matching_unit(net, queries[i++ % queries.size()]));
}
BENCHMARK(BM_Bmu)->Arg(500)->Arg(10000);

void BM_BuildLookup(benchmark::State& state) {
  const Network& net = gng(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_lookup(net, pillar().model, pillar().grid));
}
BENCHMARK(BM_BuildLookup)->Arg(500)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Blocking(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  lut(n);
  const VoxelSet occ = voxelize_obstacles(pillar().obstacles, 0.0, pillar().grid);
  for (auto _ : state) benchmark::DoNotOptimize(blocked_neurons(lut(n), occ));
}
BENCHMARK(BM_Blocking)->Arg(500)->Arg(10000);

void BM_Search(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto algo = state.range(1) == 0 ? SearchAlgorithm::Wavefront : SearchAlgorithm::Dijkstra;
  const Network& net = gng(n);
  const BlockedSet blocked = blocked_neurons(lut(n), voxelize_obstacles(pillar().obstacles, 0.0, pillar().grid));
  const NeuronId s = best_matching_unit(net, pillar().start), g = best_matching_unit(net, pillar().goal);
  for (auto _ : state) benchmark::DoNotOptimize(search(algo, net, s, g, blocked));
  state.SetLabel(to_string(algo));
}
BENCHMARK(BM_Search)->Args({500, 0})->Args({500, 1})->Args({10000, 0})->Args({10000, 1});

void BM_PlanCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network& net = gng(n);
  const VoxelSet occ = voxelize_obstacles(pillar().obstacles, 0.0, pillar().grid);
  const NeuronId s = best_matching_unit(net, pillar().start), g = best_matching_unit(net, pillar().goal);
  for (auto _ : state) {
    ReplanState rs;
    rs.blocked = blocked_neurons(lut(n), occ);
    benchmark::DoNotOptimize(replan_decide(rs, search(SearchAlgorithm::Dijkstra, net, s, g, rs.blocked), 0.0, 0.6));
  }
}
BENCHMARK(BM_PlanCycle)->Arg(500)->Arg(10000);

void BM_SmoothValidated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network& net = gng(n);
  const BlockedSet blocked = blocked_neurons(lut(n), voxelize_obstacles(pillar().obstacles, 0.0, pillar().grid));
  const Path path = search(SearchAlgorithm::Dijkstra, net, best_matching_unit(net, pillar().start),
                           best_matching_unit(net, pillar().goal), blocked);
  int degree = 0;
  for (auto _ : state) {
    const auto t = smooth_validated(path, net, blocked, 3, 10);
    degree = t.degree;
    benchmark::DoNotOptimize(t.samples.data());
  }
  state.counters["hops"] = static_cast<double>(path.hop_count());
  state.counters["degree"] = degree;
}
BENCHMARK(BM_SmoothValidated)->Arg(500)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
