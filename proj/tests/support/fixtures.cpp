#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <unistd.h>

#include "cogmap/datagen.hpp"
#include "cogmap/training.hpp"

namespace cogmap::fixtures {

std::filesystem::path data_path(const std::string& relative) { return std::filesystem::path(COGMAP_DATA_DIR) / relative; }

const Scenario& pillar_scenario() {
  static const Scenario s = load_scenario(data_path("scenarios/pillar.yaml"));
  return s;
}

const Scenario& wrist_scenario() {
  static const Scenario s = load_scenario(data_path("scenarios/wrist_constant.yaml"));
  return s;
}

namespace {

Dataset scenario_dataset(const Scenario& s) {
  DatagenParams p;
  p.sampler = s.sampler;
  return generate_pick_place(s.model, s.regions, s.datagen_trajectories, s.datagen_seed, p);
}

}  // namespace

const Dataset& pillar_dataset() {
  static const Dataset d = scenario_dataset(pillar_scenario());
  return d;
}

const Dataset& wrist_dataset() {
  static const Dataset d = scenario_dataset(wrist_scenario());
  return d;
}

Network pillar_gng(std::uint64_t seed) {
  TrainParams p;
  p.target_neurons = 500;
  p.iterations = 60000;
  return train_gng(pillar_dataset(), p, seed);
}

const Network& pillar_network() {
  static const Network net = pillar_gng(1);
  return net;
}

const LookupTable& pillar_lut() {
  static const LookupTable lut = build_lookup(pillar_network(), pillar_scenario().model, pillar_scenario().grid);
  return lut;
}

const Network& reference_gng() {
  static const Network net = [] {
    TrainParams p;
    p.target_neurons = 10000;
    p.iterations = 120000;
    p.lambda = 10;
    return train_gng(pillar_dataset(), p, 1);
  }();
  return net;
}

Network random_network(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::bernoulli_distribution edge(p);
  std::vector<double> w(n * 2);
  for (auto& x : w) x = coord(rng);
  std::vector<std::pair<NeuronId, NeuronId>> edges;
  for (NeuronId a = 0; a < n; ++a) {
    for (NeuronId b = a + 1; b < n; ++b) {
      if (edge(rng)) edges.emplace_back(a, b);
    }
  }
  return Network(NetworkKind::Gng, 2, std::move(w), std::move(edges));
}

BlockedSet random_blocked(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution pick(p);
  BlockedSet s(n);
  for (NeuronId i = 0; i < n; ++i) {
    if (pick(rng)) s.insert(i);
  }
  return s;
}

Network divergence_fixture() {
  return Network(NetworkKind::Gng, 2, {0.0, 0.0, 1.5, 3.0, 1.0, 0.1, 2.0, 0.1, 1.5, -2.0, 3.0, 0.0},
                 {{0, 1}, {1, 5}, {0, 2}, {2, 3}, {3, 5}, {2, 4}, {3, 4}});
}

std::vector<long> bfs_hops(const Network& net, const BlockedSet& blocked, NeuronId start) {
  std::vector<long> dist(net.size(), -1);
  if (blocked.contains(start)) return dist;
  std::deque<NeuronId> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const NeuronId u = queue.front();
    queue.pop_front();
    for (const Edge& e : net.edges()) {
      if (e.a != u && e.b != u) continue;
      const NeuronId v = e.a == u ? e.b : e.a;
      if (blocked.contains(v) || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::vector<NeuronId> bfs_oracle_path(const Network& net, const BlockedSet& blocked, NeuronId start, NeuronId goal) {
  const auto dist = bfs_hops(net, blocked, start);
  if (dist[goal] < 0) return {};
  std::vector<NeuronId> path{goal};
  NeuronId v = goal;
  while (v != start) {
    NeuronId best = static_cast<NeuronId>(net.size());
    for (const Edge& e : net.edges()) {
      if (e.a != v && e.b != v) continue;
      const NeuronId u = e.a == v ? e.b : e.a;
      if (dist[u] == dist[v] - 1 && u < best) best = u;
    }
    v = best;
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::vector<double>> floyd_warshall(const Network& net, const BlockedSet& blocked) {
  const std::size_t n = net.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    if (!blocked.contains(static_cast<NeuronId>(i))) d[i][i] = 0.0;
  }
  for (const Edge& e : net.edges()) {
    if (blocked.contains(e.a) || blocked.contains(e.b)) continue;
    const double w = (net.weight(e.a) - net.weight(e.b)).norm();
    d[e.a][e.b] = std::min(d[e.a][e.b], w);
    d[e.b][e.a] = std::min(d[e.b][e.a], w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

VoxelSet planar_coverage_oracle(const std::vector<double>& lengths, double radius, const JointConfig& q,
                                const VoxelGrid& grid) {
  std::vector<std::array<double, 4>> segs;
  double x = 0.0, y = 0.0, heading = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    heading += q[static_cast<Eigen::Index>(i)];
    const double nx = x + lengths[i] * std::cos(heading);
    const double ny = y + lengths[i] * std::sin(heading);
    segs.push_back({x, y, nx, ny});
    x = nx;
    y = ny;
  }
  const double margin = radius + grid.resolution * std::sqrt(2.0) / 2.0;
  VoxelSet out;
  for (std::uint32_t iy = 0; iy < grid.dims[1]; ++iy) {
    for (std::uint32_t ix = 0; ix < grid.dims[0]; ++ix) {
      const double cx = grid.origin.x() + (ix + 0.5) * grid.resolution;
      const double cy = grid.origin.y() + (iy + 0.5) * grid.resolution;
      for (const auto& s : segs) {
        const double dx = s[2] - s[0], dy = s[3] - s[1];
        const double t = std::clamp(((cx - s[0]) * dx + (cy - s[1]) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
        if (std::hypot(cx - s[0] - t * dx, cy - s[1] - t * dy) <= margin) {
          out.push_back(grid.id(ix, iy));
          break;
        }
      }
    }
  }
  return out;
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("cogmap_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cogmap::fixtures
