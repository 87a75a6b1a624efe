#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cogmap/kinematics.hpp"
#include "cogmap/voxel_grid.hpp"

namespace cogmap {

struct SamplerParams {
  double step_size = 0.1;  ///< radians
  double goal_bias = 0.05;
  std::size_t max_iterations = 20000;
  std::size_t prm_samples = 400;
  std::size_t prm_k = 10;
  std::uint64_t seed = 1;

  void validate() const;
  /// Edges are checked at this spacing: step_size / 2.
  double collision_resolution() const { return step_size / 2.0; }
};

using Validity = std::function<bool(const JointConfig&)>;

/// True iff q is within limits and the robot at q touches none of `occupied`.
bool collision_free(const RobotModel& model, const VoxelGrid& grid, std::span<const VoxelId> occupied,
                    const JointConfig& q);

/// collision_free with the occupied set held as a mask, for repeated queries.
class CollisionChecker {
 public:
  CollisionChecker(RobotModel model, VoxelGrid grid, std::span<const VoxelId> occupied);

  bool operator()(const JointConfig& q) const;
  const RobotModel& model() const { return model_; }

 private:
  RobotModel model_;
  VoxelGrid grid_;
  std::vector<std::uint8_t> mask_;
  bool any_ = false;
};

/// Every config of the straight interpolation from a to b at `resolution` is valid.
bool motion_valid(const Validity& valid, const JointConfig& a, const JointConfig& b, double resolution);

struct SamplerResult {
  bool success = false;
  std::vector<JointConfig> path;
  std::size_t iterations = 0;
  std::size_t nodes = 0;
};

/// Single-tree RRT with goal bias. Samples are drawn uniformly within `bounds`.
/// Throws std::invalid_argument if either endpoint is invalid.
SamplerResult rrt(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                  std::span<const JointLimit> bounds, const SamplerParams& params);

/// Bidirectional RRT with the greedy connect heuristic.
SamplerResult rrt_connect(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                          std::span<const JointLimit> bounds, const SamplerParams& params);

/// Roadmap of valid samples with validated k-nearest edges, undirected.
struct Roadmap {
  std::vector<JointConfig> nodes;
  std::vector<std::vector<std::size_t>> adjacency;  ///< sorted per node, symmetric
};

/// Samples prm_samples valid configs and links each to its prm_k nearest
/// neighbors where the straight motion validates. `extra` nodes are
/// inserted first, in order.
Roadmap build_roadmap(const Validity& valid, std::span<const JointLimit> bounds, const SamplerParams& params,
                      const std::vector<JointConfig>& extra = {});

/// PRM query: roadmap over samples plus both endpoints, shortest path by
/// joint-space length.
SamplerResult prm(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                  std::span<const JointLimit> bounds, const SamplerParams& params);

}  // namespace cogmap
