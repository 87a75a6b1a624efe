#pragma once

#include <span>

#include "cogmap/kinematics.hpp"
#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/search.hpp"
#include "cogmap/smoothing.hpp"

namespace cogmap {

struct PlannerConfig {
  SearchAlgorithm algorithm = SearchAlgorithm::Dijkstra;
  int smoothing_degree = 3;
  int samples_per_hop = 10;
  double replan_period = 0.3;     ///< seconds
  double stability_window = 0.6;  ///< seconds
  double joint_speed = 1.0;       ///< rad/s, simulated playback

  void validate() const;
};

/// Intermediate results of one planning query.
struct PlanTrace {
  BlockedSet blocked;
  NeuronId bmu_start = 0;
  NeuronId bmu_goal = 0;
};

/// Blocks the neurons covering `occupied`, anchors both configs at their
/// BMUs and searches between them. Throws PlanError on a blocked endpoint or
/// when the goal is unreachable, std::invalid_argument on dimension errors.
Path plan(const Network& net, const LookupTable& lut, const RobotModel& model, const JointConfig& q_start,
          const JointConfig& q_goal, std::span<const VoxelId> occupied, SearchAlgorithm algo,
          PlanTrace* trace = nullptr);

/// True when the robot at every config of the 0.05 rad (or `max_step`)
/// interpolation of `configs` stays clear of `occupied`.
bool trajectory_clear(const RobotModel& model, const VoxelGrid& grid, std::span<const VoxelId> occupied,
                      const std::vector<JointConfig>& configs, double max_step = 0.05);

}  // namespace cogmap
