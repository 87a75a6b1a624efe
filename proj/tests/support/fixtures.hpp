#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "cogmap/dataset.hpp"
#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/scenario.hpp"

namespace cogmap::fixtures {

std::filesystem::path data_path(const std::string& relative);

/// Bundled scenarios, loaded once.
const Scenario& pillar_scenario();
const Scenario& wrist_scenario();

/// Pick-and-place datasets for the bundled scenarios (datagen defaults).
const Dataset& pillar_dataset();
const Dataset& wrist_dataset();

/// GNG with 500 neurons on pillar_dataset().
Network pillar_gng(std::uint64_t seed);

/// pillar_gng(1) and its lookup table over the pillar grid, built once.
const Network& pillar_network();
const LookupTable& pillar_lut();

/// 10 000-neuron GNG on pillar_dataset(), trained once per process.
const Network& reference_gng();

/// Random 2-D network: n neurons uniform in [-1, 1]^2, each pair connected
/// with probability p.
Network random_network(std::size_t n, double p, std::mt19937_64& rng);

/// Random subset of neurons, each included with probability p.
BlockedSet random_blocked(std::size_t n, double p, std::mt19937_64& rng);

/// Six neurons where the fewest-hop route 0-1-5 uses two long edges and the
/// three-hop route 0-2-3-5 is metrically shorter. Neuron 4 hangs off 2 and 3.
Network divergence_fixture();

/// Hop distance from `start` to every neuron over unblocked neurons;
/// unreachable entries are -1.
std::vector<long> bfs_hops(const Network& net, const BlockedSet& blocked, NeuronId start);

/// Minimum-hop path from start to goal that picks the lowest-index neighbor
/// one level closer at every step back from the goal. Empty if unreachable.
std::vector<NeuronId> bfs_oracle_path(const Network& net, const BlockedSet& blocked, NeuronId start, NeuronId goal);

/// All-pairs shortest lengths over unblocked neurons (infinity if unreachable).
std::vector<std::vector<double>> floyd_warshall(const Network& net, const BlockedSet& blocked);

/// Cells covered by a planar arm at q, computed from scratch with explicit
/// trigonometry and an independent point-to-segment distance.
VoxelSet planar_coverage_oracle(const std::vector<double>& lengths, double radius, const JointConfig& q,
                                const VoxelGrid& grid);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

}  // namespace cogmap::fixtures
