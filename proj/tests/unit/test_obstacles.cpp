#include <gtest/gtest.h>

#include <random>

#include "cogmap/obstacles.hpp"
#include "cogmap/voxel_grid.hpp"

using namespace cogmap;

TEST(VoxelGrid, IdAndCoordsRoundTrip) {
  const VoxelGrid g = VoxelGrid::spatial(Point3(-1, -1, -1), 0.25, 8, 5, 3);
  for (VoxelId v = 0; v < g.cell_count(); ++v) {
    const auto c = g.coords(v);
    EXPECT_EQ(g.id(c[0], c[1], c[2]), v);
  }
  EXPECT_EQ(g.center(0), Point3(-0.875, -0.875, -0.875));
}

TEST(VoxelGrid, PlanarCentersLieInPlane) {
  const VoxelGrid g = VoxelGrid::planar(-1, -1, 0.5, 4, 4);
  EXPECT_EQ(g.dims[2], 1u);
  for (VoxelId v = 0; v < g.cell_count(); ++v) EXPECT_EQ(g.center(v).z(), 0.0);
  EXPECT_TRUE(g.covers(Point3(-1, -1, 5), Point3(1, 1, 9)));
  EXPECT_FALSE(g.covers(Point3(-1.01, -1, 0), Point3(1, 1, 0)));
}

TEST(VoxelGrid, RejectsBadParameters) {
  EXPECT_THROW(VoxelGrid::planar(0, 0, 0.0, 4, 4), std::invalid_argument);
  EXPECT_THROW(VoxelGrid::planar(0, 0, 0.1, 0, 4), std::invalid_argument);
}

TEST(Obstacles, TimelineInterpolatesAndClamps) {
  Obstacle o;
  o.timeline = {{1.0, Point3(0, 0, 0)}, {3.0, Point3(2, 0, 0)}};
  EXPECT_EQ(o.position_at(0.0), Point3(0, 0, 0));
  EXPECT_EQ(o.position_at(2.0), Point3(1, 0, 0));
  EXPECT_EQ(o.position_at(10.0), Point3(2, 0, 0));
}

TEST(Obstacles, ValidationRejectsDuplicatesAndUnorderedTimelines) {
  ObstacleSet s;
  s.obstacles.resize(2);
  s.obstacles[0].id = 1;
  s.obstacles[1].id = 1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.obstacles[1].id = 2;
  s.obstacles[1].timeline = {{1.0, Point3::Zero()}, {1.0, Point3::Zero()}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Obstacles, VoxelizationMatchesExhaustiveContainment) {
  const VoxelGrid g = VoxelGrid::spatial(Point3(-1, -1, -1), 0.1, 20, 20, 20);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(-1.2, 1.2), size(0.0, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    ObstacleSet s;
    Obstacle box;
    box.id = 1;
    box.center = Point3(pos(rng), pos(rng), pos(rng));
    box.half_extents = Point3(size(rng), size(rng), size(rng));
    Obstacle ball;
    ball.id = 2;
    ball.shape = ShapeKind::Sphere;
    ball.center = Point3(pos(rng), pos(rng), pos(rng));
    ball.radius = size(rng);
    s.obstacles = {box, ball};
    VoxelSet expected;
    for (VoxelId v = 0; v < g.cell_count(); ++v) {
      if (box.contains(g.center(v), 0.0) || ball.contains(g.center(v), 0.0)) expected.push_back(v);
    }
    EXPECT_EQ(voxelize_obstacles(s, 0.0, g), expected);
  }
}

TEST(Obstacles, AlignedBoxCoversExactCells) {
  const VoxelGrid g = VoxelGrid::planar(0, 0, 0.1, 10, 10);
  ObstacleSet s;
  Obstacle box;
  box.id = 1;
  // Cells x in 2..4, y == 3: centers 0.25..0.45 by 0.35.
  box.center = Point3(0.35, 0.35, 0);
  box.half_extents = Point3(0.14, 0.04, 0);
  s.obstacles = {box};
  EXPECT_EQ(voxelize_obstacles(s, 0.0, g), (VoxelSet{g.id(2, 3), g.id(3, 3), g.id(4, 3)}));
}

TEST(Obstacles, SmallSphereOnCellCenterCoversOneCell) {
  const VoxelGrid g = VoxelGrid::spatial(Point3(0, 0, 0), 0.1, 6, 6, 6);
  ObstacleSet s;
  Obstacle ball;
  ball.id = 4;
  ball.shape = ShapeKind::Sphere;
  ball.center = g.center(g.id(3, 1, 2));
  ball.radius = 0.04;
  s.obstacles = {ball};
  EXPECT_EQ(voxelize_obstacles(s, 0.0, g), (VoxelSet{g.id(3, 1, 2)}));
  EXPECT_TRUE(voxelize_obstacles(ObstacleSet{}, 0.0, g).empty());
}

TEST(Obstacles, MovingBoxAtMidpointMatchesStaticMidpointBox) {
  const VoxelGrid g = VoxelGrid::planar(-1, -1, 0.1, 20, 20);
  Obstacle moving;
  moving.id = 1;
  moving.half_extents = Point3(0.2, 0.1, 0);
  moving.timeline = {{0.0, Point3(-0.6, -0.3, 0)}, {2.0, Point3(0.4, 0.5, 0)}};
  Obstacle fixed = moving;
  fixed.timeline.clear();
  fixed.center = Point3(-0.1, 0.1, 0);
  EXPECT_EQ(voxelize_obstacles(ObstacleSet{{moving}}, 1.0, g), voxelize_obstacles(ObstacleSet{{fixed}}, 0.0, g));
  EXPECT_NE(voxelize_obstacles(ObstacleSet{{moving}}, 0.0, g), voxelize_obstacles(ObstacleSet{{fixed}}, 0.0, g));
}
