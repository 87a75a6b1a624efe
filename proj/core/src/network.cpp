#include "cogmap/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cogmap {

const char* to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::Som: return "som";
    case NetworkKind::GammaSom: return "gamma_som";
    case NetworkKind::Gng: return "gng";
  }
  return "unknown";
}

Network::Network(NetworkKind kind, std::size_t dim, std::vector<double> weights,
                 std::vector<std::pair<NeuronId, NeuronId>> edge_pairs, std::optional<GridShape> grid,
                 std::size_t context_depth, std::vector<double> contexts)
    : kind_(kind),
      dim_(dim),
      weights_(std::move(weights)),
      grid_(grid),
      context_depth_(context_depth),
      contexts_(std::move(contexts)) {
  if (dim_ == 0) throw std::invalid_argument("network dimension must be positive");
  if (weights_.size() % dim_ != 0) throw std::invalid_argument("weight array is not a multiple of dim");
  if (size() > std::numeric_limits<NeuronId>::max()) throw std::invalid_argument("too many neurons");
  if (!contexts_.empty() && contexts_.size() != size() * context_depth_ * dim_) {
    throw std::invalid_argument("context array size mismatch");
  }
  const auto n = static_cast<NeuronId>(size());
  for (auto& [a, b] : edge_pairs) {
    if (a == b) throw std::invalid_argument("self-loop edge");
    if (a >= n || b >= n) throw std::invalid_argument("edge references unknown neuron");
    if (a > b) std::swap(a, b);
  }
  std::sort(edge_pairs.begin(), edge_pairs.end());
  if (std::adjacent_find(edge_pairs.begin(), edge_pairs.end()) != edge_pairs.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  edges_.reserve(edge_pairs.size());
  for (const auto& [a, b] : edge_pairs) {
    edges_.push_back({a, b, (weight(a) - weight(b)).norm()});
  }
  build_adjacency();
}

Network Network::lattice(NetworkKind kind, GridShape grid, std::size_t dim, std::vector<double> weights,
                         std::size_t context_depth, std::vector<double> contexts) {
  std::vector<std::pair<NeuronId, NeuronId>> pairs;
  for (std::uint32_t r = 0; r < grid.rows; ++r) {
    for (std::uint32_t c = 0; c < grid.cols; ++c) {
      const NeuronId id = r * grid.cols + c;
      if (c + 1 < grid.cols) pairs.emplace_back(id, id + 1);
      if (r + 1 < grid.rows) pairs.emplace_back(id, id + grid.cols);
    }
  }
  Network net(kind, dim, std::move(weights), std::move(pairs), grid, context_depth, std::move(contexts));
  if (net.size() != static_cast<std::size_t>(grid.rows) * grid.cols) {
    throw std::invalid_argument("lattice neuron count must equal rows * cols");
  }
  return net;
}

void Network::build_adjacency() {
  const std::size_t n = size();
  adjacency_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++adjacency_offsets_[e.a + 1];
    ++adjacency_offsets_[e.b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) adjacency_offsets_[i + 1] += adjacency_offsets_[i];
  adjacency_.assign(adjacency_offsets_[n], Neighbor{});
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.a]++] = {e.b, e.weight};
    adjacency_[fill[e.b]++] = {e.a, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[i + 1]),
              [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
  }
}

bool Network::adjacent(NeuronId a, NeuronId b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), Neighbor{b, 0.0},
                            [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
}

void Network::validate() const {
  const auto n = static_cast<NeuronId>(size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.a >= n || e.b >= n) throw std::logic_error("edge references unknown neuron");
    if (e.a >= e.b) throw std::logic_error("edge not canonical or self-loop");
    if (i > 0 && edges_[i - 1].a == e.a && edges_[i - 1].b == e.b) throw std::logic_error("duplicate edge");
    if (std::abs(e.weight - (weight(e.a) - weight(e.b)).norm()) > 1e-9) {
      throw std::logic_error("edge weight differs from endpoint distance");
    }
  }
  if (kind_ != NetworkKind::Gng) {
    if (!grid_) throw std::logic_error("SOM network without grid shape");
    if (static_cast<std::size_t>(grid_->rows) * grid_->cols != size()) {
      throw std::logic_error("grid shape does not match neuron count");
    }
    const std::size_t expected =
        static_cast<std::size_t>(grid_->rows) * (grid_->cols - 1) + static_cast<std::size_t>(grid_->cols) * (grid_->rows - 1);
    if (edges_.size() != expected) throw std::logic_error("SOM edges are not the 4-neighborhood lattice");
    for (const auto& e : edges_) {
      const bool horizontal = e.b == e.a + 1 && e.a % grid_->cols != grid_->cols - 1;
      const bool vertical = e.b == e.a + grid_->cols;
      if (!horizontal && !vertical) throw std::logic_error("SOM edge outside the lattice");
    }
  }
}

namespace {

struct Candidate {
  double dist2 = std::numeric_limits<double>::infinity();
  NeuronId id = std::numeric_limits<NeuronId>::max();
};

void check_dim(const Network& net, const JointConfig& q) {
  if (static_cast<std::size_t>(q.size()) != net.dim()) {
    throw std::invalid_argument("query dimension does not match network");
  }
  if (net.size() == 0) throw std::invalid_argument("network has no neurons");
}

}  // namespace

NeuronId best_matching_unit(const Network& net, const JointConfig& q) {
  check_dim(net, q);
  const std::size_t dim = net.dim();
  const std::size_t n = net.size();
  const double* w = net.raw_weights().data();
  const double* x = q.data();
  Candidate best;
  for (std::size_t i = 0; i < n; ++i, w += dim) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = w[k] - x[k];
      d2 += diff * diff;
    }
    // Strict comparison keeps the lowest index on ties.
    if (d2 < best.dist2) best = {d2, static_cast<NeuronId>(i)};
  }
  return best.id;
}

std::pair<NeuronId, NeuronId> two_best_matching_units(const Network& net, const JointConfig& q) {
  check_dim(net, q);
  if (net.size() < 2) throw std::invalid_argument("second BMU needs at least two neurons");
  const std::size_t dim = net.dim();
  const std::size_t n = net.size();
  const double* w = net.raw_weights().data();
  const double* x = q.data();
  Candidate first;
  Candidate second;
  for (std::size_t i = 0; i < n; ++i, w += dim) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = w[k] - x[k];
      d2 += diff * diff;
    }
    const Candidate c{d2, static_cast<NeuronId>(i)};
    if (d2 < first.dist2) {
      second = first;
      first = c;
    } else if (d2 < second.dist2) {
      second = c;
    }
  }
  return {first.id, second.id};
}

NeuronId second_bmu(const Network& net, const JointConfig& q) { return two_best_matching_units(net, q).second; }

double quantization_error(const Network& net, const Dataset& data) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& traj : data.trajectories) {
    for (const auto& q : traj) {
      total += (net.weight(best_matching_unit(net, q)) - q).norm();
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace cogmap
