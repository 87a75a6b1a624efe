#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cogmap/dataset.hpp"
#include "cogmap/types.hpp"

namespace cogmap {

enum class NetworkKind : std::uint8_t { Som = 0, GammaSom = 1, Gng = 2 };

const char* to_string(NetworkKind kind);

struct GridShape {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  bool operator==(const GridShape&) const = default;
};

/// Undirected edge, stored with a < b. `weight` is the Euclidean distance
/// between the endpoint weight vectors.
struct Edge {
  NeuronId a = 0;
  NeuronId b = 0;
  double weight = 0.0;
};

struct Neighbor {
  NeuronId id = 0;
  double weight = 0.0;
};

/// The trained cognitive map: neuron weight vectors in configuration space
/// plus the topological edges between them. Immutable once built; edge
/// weights and the adjacency index are derived from weights and edge pairs.
class Network {
 public:
  Network() = default;

  /// `weights` is row-major, size() * dim entries. Edge pairs are
  /// canonicalized (sorted, a < b); self-loops and duplicates are rejected.
  /// `contexts`, when non-empty, holds size() * context_depth * dim entries.
  Network(NetworkKind kind, std::size_t dim, std::vector<double> weights,
          std::vector<std::pair<NeuronId, NeuronId>> edge_pairs,
          std::optional<GridShape> grid = std::nullopt, std::size_t context_depth = 0,
          std::vector<double> contexts = {});

  /// SOM-style lattice network with 4-neighborhood edges.
  static Network lattice(NetworkKind kind, GridShape grid, std::size_t dim, std::vector<double> weights,
                         std::size_t context_depth = 0, std::vector<double> contexts = {});

  NetworkKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : weights_.size() / dim_; }
  const std::optional<GridShape>& grid_shape() const { return grid_; }
  std::size_t context_depth() const { return context_depth_; }

  Eigen::Map<const JointConfig> weight(NeuronId n) const {
    return Eigen::Map<const JointConfig>(weights_.data() + static_cast<std::size_t>(n) * dim_,
                                         static_cast<Eigen::Index>(dim_));
  }
  std::span<const double> raw_weights() const { return weights_; }
  std::span<const double> raw_contexts() const { return contexts_; }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NeuronId n) const {
    return {adjacency_.data() + adjacency_offsets_[n], adjacency_.data() + adjacency_offsets_[n + 1]};
  }
  std::size_t degree(NeuronId n) const { return adjacency_offsets_[n + 1] - adjacency_offsets_[n]; }
  bool adjacent(NeuronId a, NeuronId b) const;

  /// Throws std::logic_error describing the first violated invariant.
  void validate() const;

 private:
  void build_adjacency();

  NetworkKind kind_ = NetworkKind::Gng;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
  std::vector<Edge> edges_;
  std::optional<GridShape> grid_;
  std::size_t context_depth_ = 0;
  std::vector<double> contexts_;
  std::vector<std::size_t> adjacency_offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Nearest neuron by Euclidean weight distance; ties go to the lower index.
NeuronId best_matching_unit(const Network& net, const JointConfig& q);
/// Second nearest neuron under the same ordering. Needs >= 2 neurons.
NeuronId second_bmu(const Network& net, const JointConfig& q);
/// Both at once: {best, second}.
std::pair<NeuronId, NeuronId> two_best_matching_units(const Network& net, const JointConfig& q);

/// Mean distance from each sample to its BMU.
double quantization_error(const Network& net, const Dataset& data);

/// Binary file format, see docs/file_formats.md.
std::vector<std::uint8_t> serialize_network(const Network& net);
Network deserialize_network(std::span<const std::uint8_t> bytes);
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

/// FNV-1a over the serialized bytes; stored in lookup tables.
std::uint64_t network_fingerprint(const Network& net);

}  // namespace cogmap
