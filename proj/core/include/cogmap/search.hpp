#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"

namespace cogmap {

/// A path over the cognitive map.
struct Path {
  std::vector<NeuronId> neuron_ids;
  std::vector<JointConfig> configs;
  double cspace_length = 0.0;

  std::size_t hop_count() const { return neuron_ids.empty() ? 0 : neuron_ids.size() - 1; }
  /// Builds configs and cspace_length from the neuron sequence.
  static Path from_neurons(const Network& net, std::vector<NeuronId> ids);
};

/// Sum of Euclidean distances between consecutive configurations.
double polyline_length(const std::vector<JointConfig>& configs);

enum class SearchAlgorithm { Wavefront, Dijkstra };

const char* to_string(SearchAlgorithm algo);
SearchAlgorithm parse_search_algorithm(const std::string& name);

enum class PlanFailure { StartBlocked, GoalBlocked, Unreachable };

const char* to_string(PlanFailure failure);

class PlanError : public std::runtime_error {
 public:
  explicit PlanError(PlanFailure failure) : std::runtime_error(to_string(failure)), failure_(failure) {}
  PlanFailure failure() const noexcept { return failure_; }

 private:
  PlanFailure failure_;
};

/// Breadth-first minimum-hop search over unblocked neurons. Among
/// predecessors at equal depth the lowest index wins.
Path wavefront(const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked);

/// Minimum C-space length search. On equal tentative distance the lower
/// index settles first; predecessors change only on strict improvement.
Path dijkstra(const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked);

Path search(SearchAlgorithm algo, const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked);

}  // namespace cogmap
