#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "cogmap/baselines.hpp"
#include "cogmap/kinematics.hpp"
#include "fixtures.hpp"

using namespace cogmap;

namespace {

using Planner = SamplerResult (*)(const JointConfig&, const JointConfig&, const Validity&, std::span<const JointLimit>,
                                  const SamplerParams&);

const std::vector<std::pair<const char*, Planner>>& planners() {
  static const std::vector<std::pair<const char*, Planner>> all{{"rrt", &rrt}, {"rrt_connect", &rrt_connect}, {"prm", &prm}};
  return all;
}

JointConfig vec2(double a, double b) {
  JointConfig q(2);
  q << a, b;
  return q;
}

struct Pillar {
  VoxelSet occupied;
  CollisionChecker checker;
};

const Pillar& pillar() {
  static const Pillar p = [] {
    const Scenario& s = fixtures::pillar_scenario();
    VoxelSet occ = voxelize_obstacles(s.obstacles, 0.0, s.grid);
    CollisionChecker c(s.model, s.grid, occ);
    return Pillar{occ, c};
  }();
  return p;
}

// Independent re-check: every consecutive pair interpolated at step / 2 maps
// to occupied cells disjoint from the obstacle.
bool path_valid(const std::vector<JointConfig>& path, double resolution) {
  const Scenario& s = fixtures::pillar_scenario();
  const auto& occ = pillar().occupied;
  for (std::size_t i = 1; i < path.size(); ++i) {
    for (const auto& q : interpolate(path[i - 1], path[i], resolution)) {
      if (!s.model.within_limits(q)) return false;
      const VoxelSet cells = occupied_cells(s.model, q, s.grid);
      std::vector<VoxelId> common;
      std::set_intersection(cells.begin(), cells.end(), occ.begin(), occ.end(), std::back_inserter(common));
      if (!common.empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Baselines, CollisionFreeSemantics) {
  const Scenario& s = fixtures::pillar_scenario();
  const JointConfig home = vec2(0.0, 0.0);
  EXPECT_TRUE(collision_free(s.model, s.grid, {}, home));
  const VoxelSet at_home = occupied_cells(s.model, home, s.grid);
  EXPECT_FALSE(collision_free(s.model, s.grid, at_home, home));
  EXPECT_FALSE(collision_free(s.model, s.grid, {}, vec2(4.0, 0.0)));
  // Home-pose cells not shared with the arm pointing up (the base region is).
  const VoxelSet up = occupied_cells(s.model, vec2(M_PI / 2, 0.0), s.grid);
  VoxelSet away;
  std::set_difference(at_home.begin(), at_home.end(), up.begin(), up.end(), std::back_inserter(away));
  const CollisionChecker c(s.model, s.grid, away);
  EXPECT_FALSE(c(home));
  EXPECT_TRUE(c(vec2(M_PI / 2, 0.0)));
}

TEST(Baselines, AddingVoxelsNeverFreesAConfig) {
  const Scenario& s = fixtures::pillar_scenario();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::bernoulli_distribution pick(0.01);
  for (int trial = 0; trial < 20; ++trial) {
    VoxelSet small, large;
    for (VoxelId v = 0; v < s.grid.cell_count(); ++v) {
      const bool a = pick(rng), b = pick(rng);
      if (a) small.push_back(v);
      if (a || b) large.push_back(v);
    }
    for (int k = 0; k < 20; ++k) {
      const JointConfig q = vec2(angle(rng), angle(rng));
      if (!collision_free(s.model, s.grid, small, q)) {
        EXPECT_FALSE(collision_free(s.model, s.grid, large, q));
      }
    }
  }
}

TEST(Baselines, EmptySpaceSuccessRate) {
  const Validity free = [](const JointConfig&) { return true; };
  const std::vector<JointLimit> bounds(2);
  for (const auto& [name, planner] : planners()) {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SamplerParams p;
      p.seed = seed;
      const auto r = planner(vec2(-2.5, -2.0), vec2(2.5, 2.0), free, bounds, p);
      if (r.success) {
        ++ok;
        EXPECT_EQ(r.path.front(), vec2(-2.5, -2.0)) << name;
        EXPECT_EQ(r.path.back(), vec2(2.5, 2.0)) << name;
      }
    }
    EXPECT_GE(ok, 19) << name;
  }
}

TEST(Baselines, StartEqualsGoal) {
  const Validity free = [](const JointConfig&) { return true; };
  const std::vector<JointLimit> bounds(2);
  for (const auto& [name, planner] : planners()) {
    const auto r = planner(vec2(0.5, 0.5), vec2(0.5, 0.5), free, bounds, SamplerParams{});
    EXPECT_TRUE(r.success) << name;
    EXPECT_EQ(r.path.size(), 1u) << name;
  }
}

TEST(Baselines, InvalidEndpointsThrow) {
  const Validity left_only = [](const JointConfig& q) { return q[0] < 0; };
  const std::vector<JointLimit> bounds(2);
  for (const auto& [name, planner] : planners()) {
    EXPECT_THROW(planner(vec2(0.5, 0), vec2(-0.5, 0), left_only, bounds, SamplerParams{}), std::invalid_argument) << name;
    EXPECT_THROW(planner(vec2(-0.5, 0), vec2(0.5, 0), left_only, bounds, SamplerParams{}), std::invalid_argument) << name;
  }
}

TEST(Baselines, PillarPathsAreValidAndDeterministic) {
  const Scenario& s = fixtures::pillar_scenario();
  const Validity valid = std::cref(pillar().checker);
  for (const auto& [name, planner] : planners()) {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SamplerParams p = s.sampler;
      p.seed = seed;
      const auto r = planner(s.start, s.goal, valid, s.model.limits, p);
      if (!r.success) continue;
      ++ok;
      EXPECT_TRUE(path_valid(r.path, p.collision_resolution())) << name << " seed " << seed;
      if (seed <= 3) {
        const auto again = planner(s.start, s.goal, valid, s.model.limits, p);
        EXPECT_EQ(again.path, r.path) << name;
      }
    }
    EXPECT_GE(ok, 18) << name;
  }
}

TEST(Baselines, RoadmapIsSymmetric) {
  const Validity valid = std::cref(pillar().checker);
  SamplerParams p;
  p.prm_samples = 200;
  const Roadmap map = build_roadmap(valid, fixtures::pillar_scenario().model.limits, p, {vec2(-1.0, 0.2)});
  EXPECT_EQ(map.nodes.front(), vec2(-1.0, 0.2));
  for (std::size_t a = 0; a < map.adjacency.size(); ++a) {
    EXPECT_TRUE(std::is_sorted(map.adjacency[a].begin(), map.adjacency[a].end()));
    for (std::size_t b : map.adjacency[a]) {
      EXPECT_NE(a, b);
      EXPECT_TRUE(std::binary_search(map.adjacency[b].begin(), map.adjacency[b].end(), a));
      EXPECT_TRUE(motion_valid(valid, map.nodes[a], map.nodes[b], p.collision_resolution()));
    }
  }
}

TEST(Baselines, ConnectNeedsFewerIterationsThanRrt) {
  const Scenario& s = fixtures::pillar_scenario();
  const Validity valid = std::cref(pillar().checker);
  double rrt_iter = 0, connect_iter = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SamplerParams p = s.sampler;
    p.seed = seed;
    rrt_iter += static_cast<double>(rrt(s.start, s.goal, valid, s.model.limits, p).iterations);
    connect_iter += static_cast<double>(rrt_connect(s.start, s.goal, valid, s.model.limits, p).iterations);
  }
  EXPECT_LT(connect_iter, rrt_iter);
}

TEST(Baselines, MotionValidChecksEveryStep) {
  // A thin invalid band at x in (0.49, 0.51) is caught at resolution 0.01.
  const Validity band = [](const JointConfig& q) { return !(q[0] > 0.49 && q[0] < 0.51); };
  EXPECT_FALSE(motion_valid(band, vec2(0, 0), vec2(1, 0), 0.01));
  EXPECT_TRUE(motion_valid(band, vec2(0, 0), vec2(0.4, 0), 0.01));
  SamplerParams p;
  EXPECT_DOUBLE_EQ(p.collision_resolution(), 0.05);
  p.goal_bias = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
