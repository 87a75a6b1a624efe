#include "cogmap/planner.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogmap {

void PlannerConfig::validate() const {
  if (smoothing_degree < 0) throw std::invalid_argument("smoothing_degree must be >= 0");
  if (samples_per_hop < 1) throw std::invalid_argument("samples_per_hop must be >= 1");
  if (!(replan_period > 0.0)) throw std::invalid_argument("replan_period must be positive");
  if (!(stability_window >= 0.0)) throw std::invalid_argument("stability_window must be >= 0");
  if (!(joint_speed > 0.0)) throw std::invalid_argument("joint_speed must be positive");
}

Path plan(const Network& net, const LookupTable& lut, const RobotModel& model, const JointConfig& q_start,
          const JointConfig& q_goal, std::span<const VoxelId> occupied, SearchAlgorithm algo, PlanTrace* trace) {
  const auto dof = static_cast<Eigen::Index>(model.joint_count());
  if (net.dim() != model.joint_count() || q_start.size() != dof || q_goal.size() != dof) {
    throw std::invalid_argument("query, network and robot dimensions differ");
  }
  if (lut.neuron_count() != net.size()) throw std::invalid_argument("lookup table does not match network size");
  if (net.size() == 0) throw std::invalid_argument("empty network");

  BlockedSet blocked = blocked_neurons(lut, occupied);
  const NeuronId s = best_matching_unit(net, q_start);
  const NeuronId g = best_matching_unit(net, q_goal);
  if (trace) {
    trace->bmu_start = s;
    trace->bmu_goal = g;
  }
  Path p = search(algo, net, s, g, blocked);
  if (trace) trace->blocked = std::move(blocked);
  return p;
}

bool trajectory_clear(const RobotModel& model, const VoxelGrid& grid, std::span<const VoxelId> occupied,
                      const std::vector<JointConfig>& configs, double max_step) {
  if (configs.empty()) return true;
  std::vector<std::uint8_t> mask(grid.cell_count(), 0);
  for (VoxelId v : occupied) {
    if (v < mask.size()) mask[v] = 1;
  }
  auto clear = [&](const JointConfig& q) {
    if (!model.within_limits(q)) return false;
    const VoxelSet cells = occupied_cells(model, q, grid);
    return std::none_of(cells.begin(), cells.end(), [&](VoxelId v) { return mask[v] != 0; });
  };
  if (!clear(configs.front())) return false;
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const auto dense = interpolate(configs[i - 1], configs[i], max_step);
    for (std::size_t k = 1; k < dense.size(); ++k) {
      if (!clear(dense[k])) return false;
    }
  }
  return true;
}

}  // namespace cogmap
