#pragma once

#include <optional>
#include <vector>

#include "cogmap/types.hpp"
#include "cogmap/voxel_grid.hpp"

namespace cogmap {

enum class ShapeKind { Box, Sphere };

struct Keyframe {
  double time = 0.0;
  Point3 position = Point3::Zero();
};

/// Geometric stand-in for a detected obstacle. The timeline, when present,
/// overrides `center`: the pose is interpolated linearly between keyframes
/// and held constant before the first and after the last one.
struct Obstacle {
  int id = 0;
  ShapeKind shape = ShapeKind::Box;
  Point3 center = Point3::Zero();
  Point3 half_extents = Point3::Zero();  ///< box only
  double radius = 0.0;                   ///< sphere only
  std::vector<Keyframe> timeline;

  Point3 position_at(double t) const;
  bool contains(const Point3& p, double t) const;
};

struct ObstacleSet {
  std::vector<Obstacle> obstacles;

  void validate() const;
  Obstacle* find(int id);
  const Obstacle* find(int id) const;
  bool empty() const { return obstacles.empty(); }
};

/// Cells whose centers lie inside any obstacle at time t.
VoxelSet voxelize_obstacles(const ObstacleSet& obstacles, double t, const VoxelGrid& grid);

}  // namespace cogmap
