#include <gtest/gtest.h>

#include "cogmap/datagen.hpp"
#include "fixtures.hpp"

using namespace cogmap;

namespace {

JointBox box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  JointBox b;
  b.lo = Eigen::Map<const JointConfig>(lo.begin(), static_cast<Eigen::Index>(lo.size()));
  b.hi = Eigen::Map<const JointConfig>(hi.begin(), static_cast<Eigen::Index>(hi.size()));
  return b;
}

}  // namespace

TEST(Datagen, SinglePointRegionGivesTrivialTrajectory) {
  const RobotModel m = RobotModel::planar({1.0, 1.0}, 0.0);
  const Dataset d = generate_pick_place(m, {box({0.3, -0.2}, {0.3, -0.2})}, 1, 5);
  ASSERT_EQ(d.trajectories.size(), 1u);
  for (const auto& q : d.trajectories[0]) EXPECT_EQ(q, d.trajectories[0][0]);
  EXPECT_NO_THROW(d.validate());
}

TEST(Datagen, PlanarTrajectoriesRespectContract) {
  RobotModel m = RobotModel::planar({1.0, 1.0}, 0.1);
  m.limits = {{-2.0, 2.0}, {-2.5, 2.5}};
  const std::vector<JointBox> regions{box({-1.5, -1.0}, {-0.5, 1.0}), box({0.5, -1.0}, {1.5, 1.0})};
  const Dataset d = generate_pick_place(m, regions, 50, 9);
  ASSERT_EQ(d.trajectories.size(), 50u);
  EXPECT_EQ(d.dof, 2u);
  for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
    const auto& t = d.trajectories[i];
    EXPECT_TRUE(regions[i % 2].contains(t.front(), 1e-12)) << i;
    EXPECT_TRUE(regions[(i + 1) % 2].contains(t.back(), 1e-12)) << i;
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_TRUE(m.within_limits(t[k]));
      if (k > 0) {
        EXPECT_LE((t[k] - t[k - 1]).cwiseAbs().maxCoeff(), 0.05 + 1e-12);
      }
    }
  }
}

TEST(Datagen, OutputIndependentOfThreadCount) {
  const RobotModel m = RobotModel::planar({1.0, 1.0}, 0.0);
  const std::vector<JointBox> regions{box({-1, -1}, {0, 1}), box({1, -1}, {2, 1})};
  DatagenParams one, four;
  four.threads = 4;
  EXPECT_EQ(format_dataset(generate_pick_place(m, regions, 24, 3, one)),
            format_dataset(generate_pick_place(m, regions, 24, 3, four)));
  EXPECT_NE(format_dataset(generate_pick_place(m, regions, 24, 3, one)),
            format_dataset(generate_pick_place(m, regions, 24, 4, one)));
}

TEST(Datagen, PinnedJointStaysConstant) {
  const Dataset& d = fixtures::wrist_dataset();
  for (const auto& t : d.trajectories) {
    for (const auto& q : t) EXPECT_EQ(q[2], 0.5);
  }
}

TEST(Datagen, RejectsBadArguments) {
  const RobotModel m = RobotModel::planar({1.0, 1.0}, 0.0);
  EXPECT_THROW(generate_pick_place(m, {}, 3, 1), std::invalid_argument);
  EXPECT_THROW(generate_pick_place(m, {box({0, 0}, {1, 1})}, 0, 1), std::invalid_argument);
  EXPECT_THROW(generate_pick_place(m, {box({0, 0, 0}, {1, 1, 1})}, 1, 1), std::invalid_argument);
  EXPECT_THROW(generate_pick_place(m, {box({1, 0}, {0, 1})}, 1, 1), std::invalid_argument);
  EXPECT_THROW(generate_pick_place(m, {box({0, 0}, {4, 1})}, 1, 1), std::invalid_argument);
}

TEST(Datagen, SplitmixIsStable) {
  // Reference outputs of splitmix64 seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_NE(splitmix64(1), splitmix64(2));
}
