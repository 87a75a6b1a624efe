#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cogmap/kinematics.hpp"
#include "cogmap/network.hpp"
#include "cogmap/voxel_grid.hpp"

namespace cogmap {

/// Set of blocked neurons, held as a membership mask over the network.
class BlockedSet {
 public:
  BlockedSet() = default;
  explicit BlockedSet(std::size_t neuron_count) : mask_(neuron_count, 0) {}
  static BlockedSet from_ids(std::size_t neuron_count, std::span<const NeuronId> ids);

  bool contains(NeuronId n) const { return n < mask_.size() && mask_[n] != 0; }
  void insert(NeuronId n);
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return mask_.size(); }
  bool empty() const { return count_ == 0; }
  /// Sorted ids.
  std::vector<NeuronId> ids() const;

  bool operator==(const BlockedSet& other) const { return mask_ == other.mask_; }

 private:
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

/// Neurons whose weight vector violated the joint limits during a build;
/// they receive empty coverage.
struct BuildReport {
  std::vector<NeuronId> out_of_limits;
};

/// Bidirectional association between task-space voxels and the neurons
/// whose configuration covers them. Both directions are stored as
/// offset-indexed sorted id arrays.
class LookupTable {
 public:
  LookupTable() = default;
  LookupTable(VoxelGrid grid, std::uint64_t network_fingerprint, std::vector<std::uint64_t> forward_offsets,
              std::vector<VoxelId> forward_ids, std::vector<std::uint64_t> inverse_offsets,
              std::vector<NeuronId> inverse_ids);

  const VoxelGrid& grid() const { return grid_; }
  std::uint64_t network_fingerprint() const { return fingerprint_; }
  std::size_t neuron_count() const { return forward_offsets_.size() - 1; }
  std::size_t voxel_count() const { return inverse_offsets_.size() - 1; }
  std::size_t entry_count() const { return forward_ids_.size(); }

  std::span<const VoxelId> forward(NeuronId n) const {
    return {forward_ids_.data() + forward_offsets_[n], forward_ids_.data() + forward_offsets_[n + 1]};
  }
  std::span<const NeuronId> inverse(VoxelId v) const {
    return {inverse_ids_.data() + inverse_offsets_[v], inverse_ids_.data() + inverse_offsets_[v + 1]};
  }

  /// Exhaustive check that inverse is the exact transpose of forward and that
  /// both sides are sorted and duplicate-free.
  bool is_consistent() const;

  /// Throws std::runtime_error when `net` is not the network this table was built from.
  void require_network(const Network& net) const;

  bool operator==(const LookupTable&) const = default;

  // Raw arrays for serialization.
  const std::vector<std::uint64_t>& forward_offsets() const { return forward_offsets_; }
  const std::vector<VoxelId>& forward_ids() const { return forward_ids_; }
  const std::vector<std::uint64_t>& inverse_offsets() const { return inverse_offsets_; }
  const std::vector<NeuronId>& inverse_ids() const { return inverse_ids_; }

 private:
  VoxelGrid grid_;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::uint64_t> forward_offsets_{0};
  std::vector<VoxelId> forward_ids_;
  std::vector<std::uint64_t> inverse_offsets_{0};
  std::vector<NeuronId> inverse_ids_;
};

/// forward[n] = occupied_cells(model, weight(n), grid) for every neuron.
/// Throws std::invalid_argument when dimensions disagree or the grid does
/// not cover the robot's reach. `threads == 0` picks the hardware count.
LookupTable build_lookup(const Network& net, const RobotModel& model, const VoxelGrid& grid,
                         BuildReport* report = nullptr, unsigned threads = 0);

/// Union of inverse[v] over the occupied voxels. Unknown ids throw
/// std::invalid_argument.
BlockedSet blocked_neurons(const LookupTable& lut, std::span<const VoxelId> occupied);

std::vector<std::uint8_t> serialize_lookup(const LookupTable& lut);
LookupTable deserialize_lookup(std::span<const std::uint8_t> bytes);
void save_lookup(const LookupTable& lut, const std::filesystem::path& path);
LookupTable load_lookup(const std::filesystem::path& path);

}  // namespace cogmap
