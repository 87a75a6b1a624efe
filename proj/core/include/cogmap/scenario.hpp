#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/baselines.hpp"
#include "cogmap/commands.hpp"
#include "cogmap/datagen.hpp"
#include "cogmap/kinematics.hpp"
#include "cogmap/obstacles.hpp"
#include "cogmap/planner.hpp"
#include "cogmap/training.hpp"
#include "cogmap/voxel_grid.hpp"

namespace cogmap {

/// Everything a planning or replay run needs besides the trained network.
/// Loaded from YAML; see docs/file_formats.md for the schema.
struct Scenario {
  std::string name;
  RobotModel model;
  VoxelGrid grid;
  ObstacleSet obstacles;
  JointConfig start;
  JointConfig goal;
  std::vector<JointBox> regions;
  PlannerConfig planner;
  SamplerParams sampler;
  std::vector<TimedCommand> commands;  ///< sorted by time
  double duration = 10.0;              ///< replay length, seconds
  double dt = 0.05;                    ///< replay tick, seconds
  std::size_t datagen_trajectories = 300;
  std::uint64_t datagen_seed = 1;

  void validate() const;
};

/// Throws ParseError (with a 1-based line) on malformed input and
/// std::invalid_argument on semantically invalid values.
Scenario parse_scenario(std::string_view yaml);
Scenario load_scenario(const std::filesystem::path& path);

/// Training run description. Relative dataset/output paths are resolved
/// against the config file's directory by load_train_config.
struct TrainConfig {
  NetworkKind kind = NetworkKind::Gng;
  std::filesystem::path dataset;
  std::filesystem::path output;
  std::uint64_t seed = 1;
  TrainParams params;
};

TrainConfig parse_train_config(std::string_view yaml);
TrainConfig load_train_config(const std::filesystem::path& path);

NetworkKind parse_network_kind(const std::string& name);

}  // namespace cogmap
