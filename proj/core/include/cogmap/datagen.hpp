#pragma once

#include <cstdint>
#include <vector>

#include "cogmap/baselines.hpp"
#include "cogmap/dataset.hpp"
#include "cogmap/kinematics.hpp"

namespace cogmap {

/// Axis-aligned box in joint space. lo == hi on an axis pins that joint.
struct JointBox {
  JointConfig lo;
  JointConfig hi;

  bool contains(const JointConfig& q, double tol = 0.0) const;
  void validate(std::size_t dof) const;
};

struct DatagenParams {
  SamplerParams sampler;
  double max_step = 0.05;        ///< densification, infinity norm
  std::size_t max_retries = 20;  ///< redraws per trajectory before giving up
  unsigned threads = 1;
};

/// n_traj pick-and-place reaches. Trajectory i runs from a uniform draw in
/// regions[i % R] to one in regions[(i + 1) % R], planned by rrt_connect in
/// obstacle-free space and densified. Samples are drawn within the bounding
/// box of all regions. Each trajectory uses its own seed derived from
/// (seed, i), so output is independent of thread count.
/// Throws std::runtime_error when a trajectory exhausts its retries.
Dataset generate_pick_place(const RobotModel& model, const std::vector<JointBox>& regions, std::size_t n_traj,
                            std::uint64_t seed, const DatagenParams& params = {});

/// splitmix64 step, used to derive per-item seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cogmap
