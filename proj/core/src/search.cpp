#include "cogmap/search.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cogmap {

Path Path::from_neurons(const Network& net, std::vector<NeuronId> ids) {
  Path p;
  p.neuron_ids = std::move(ids);
  p.configs.reserve(p.neuron_ids.size());
  for (NeuronId n : p.neuron_ids) p.configs.emplace_back(net.weight(n));
  p.cspace_length = polyline_length(p.configs);
  return p;
}

double polyline_length(const std::vector<JointConfig>& configs) {
  double total = 0.0;
  for (std::size_t i = 1; i < configs.size(); ++i) total += (configs[i] - configs[i - 1]).norm();
  return total;
}

const char* to_string(SearchAlgorithm algo) {
  return algo == SearchAlgorithm::Wavefront ? "wavefront" : "dijkstra";
}

SearchAlgorithm parse_search_algorithm(const std::string& name) {
  if (name == "wavefront") return SearchAlgorithm::Wavefront;
  if (name == "dijkstra") return SearchAlgorithm::Dijkstra;
  throw std::invalid_argument("unknown search algorithm '" + name + "'");
}

const char* to_string(PlanFailure failure) {
  switch (failure) {
    case PlanFailure::StartBlocked: return "start_blocked";
    case PlanFailure::GoalBlocked: return "goal_blocked";
    case PlanFailure::Unreachable: return "unreachable";
  }
  return "unknown";
}

namespace {

constexpr NeuronId kNone = std::numeric_limits<NeuronId>::max();

void check_endpoints(const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked) {
  if (start >= net.size() || goal >= net.size()) throw std::invalid_argument("endpoint is not a neuron of the network");
  if (blocked.capacity() != 0 && blocked.capacity() != net.size()) {
    throw std::invalid_argument("blocked set size does not match network");
  }
  if (blocked.contains(start)) throw PlanError(PlanFailure::StartBlocked);
  if (blocked.contains(goal)) throw PlanError(PlanFailure::GoalBlocked);
}

Path unwind(const Network& net, const std::vector<NeuronId>& pred, NeuronId start, NeuronId goal) {
  std::vector<NeuronId> ids;
  for (NeuronId n = goal; n != start; n = pred[n]) ids.push_back(n);
  ids.push_back(start);
  std::reverse(ids.begin(), ids.end());
  return Path::from_neurons(net, std::move(ids));
}

}  // namespace

Path wavefront(const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked) {
  check_endpoints(net, start, goal, blocked);
  if (start == goal) return Path::from_neurons(net, {start});

  const std::size_t n = net.size();
  std::vector<std::uint32_t> depth(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<NeuronId> pred(n, kNone);
  std::vector<NeuronId> frontier{start};
  std::vector<NeuronId> next;
  depth[start] = 0;
  std::uint32_t level = 0;
  while (!frontier.empty() && depth[goal] == std::numeric_limits<std::uint32_t>::max()) {
    next.clear();
    for (NeuronId u : frontier) {
      for (const auto& nb : net.neighbors(u)) {
        const NeuronId v = nb.id;
        if (blocked.contains(v)) continue;
        if (depth[v] == std::numeric_limits<std::uint32_t>::max()) {
          depth[v] = level + 1;
          pred[v] = u;
          next.push_back(v);
        } else if (depth[v] == level + 1 && u < pred[v]) {
          pred[v] = u;
        }
      }
    }
    frontier.swap(next);
    ++level;
  }
  if (depth[goal] == std::numeric_limits<std::uint32_t>::max()) throw PlanError(PlanFailure::Unreachable);
  return unwind(net, pred, start, goal);
}

Path dijkstra(const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked) {
  check_endpoints(net, start, goal, blocked);
  if (start == goal) return Path::from_neurons(net, {start});

  const std::size_t n = net.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<NeuronId> pred(n, kNone);
  std::vector<std::uint8_t> settled(n, 0);
  using Entry = std::pair<double, NeuronId>;
  // Min-heap on (distance, index): equal distances settle the lower index first.
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[start] = 0.0;
  heap.emplace(0.0, start);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == goal) break;
    for (const auto& nb : net.neighbors(u)) {
      const NeuronId v = nb.id;
      if (settled[v] || blocked.contains(v)) continue;
      const double alt = d + nb.weight;
      if (alt < dist[v]) {
        dist[v] = alt;
        pred[v] = u;
        heap.emplace(alt, v);
      }
    }
  }
  if (!settled[goal]) throw PlanError(PlanFailure::Unreachable);
  return unwind(net, pred, start, goal);
}

Path search(SearchAlgorithm algo, const Network& net, NeuronId start, NeuronId goal, const BlockedSet& blocked) {
  return algo == SearchAlgorithm::Wavefront ? wavefront(net, start, goal, blocked) : dijkstra(net, start, goal, blocked);
}

}  // namespace cogmap
