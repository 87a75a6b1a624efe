#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cogmap/lookup_table.hpp"
#include "cogmap/obstacles.hpp"
#include "fixtures.hpp"

using namespace cogmap;

namespace {

struct TableFixture {
  RobotModel model = RobotModel::planar({1.0, 1.0}, 0.1);
  VoxelGrid grid = VoxelGrid::planar(-2.2, -2.2, 0.1, 44, 44);
  Network net;
  LookupTable lut;
};

const TableFixture& table_fixture() {
  static const TableFixture s = [] {
    TableFixture out;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::vector<double> w(300 * 2);
    for (auto& x : w) x = angle(rng);
    out.net = Network(NetworkKind::Gng, 2, std::move(w), {{0, 1}});
    out.lut = build_lookup(out.net, out.model, out.grid);
    return out;
  }();
  return s;
}

}  // namespace

TEST(LookupTable, ForwardMatchesIndependentCoverage) {
  const TableFixture& s = table_fixture();
  for (NeuronId n = 0; n < s.net.size(); ++n) {
    const auto fwd = s.lut.forward(n);
    EXPECT_EQ(VoxelSet(fwd.begin(), fwd.end()),
              fixtures::planar_coverage_oracle({1.0, 1.0}, 0.1, s.net.weight(n), s.grid))
        << n;
  }
}

TEST(LookupTable, InverseIsExactTranspose) {
  const TableFixture& s = table_fixture();
  EXPECT_TRUE(s.lut.is_consistent());
  std::set<std::pair<VoxelId, NeuronId>> fwd, inv;
  for (NeuronId n = 0; n < s.lut.neuron_count(); ++n) {
    for (VoxelId v : s.lut.forward(n)) fwd.emplace(v, n);
  }
  for (VoxelId v = 0; v < s.lut.voxel_count(); ++v) {
    for (NeuronId n : s.lut.inverse(v)) inv.emplace(v, n);
  }
  EXPECT_EQ(fwd, inv);
  EXPECT_EQ(s.lut.entry_count(), fwd.size());
}

TEST(LookupTable, SingleNeuronTableEqualsOccupiedCells) {
  const TableFixture& s = table_fixture();
  const Network one(NetworkKind::Gng, 2, {0.0, 0.0}, {});
  const LookupTable lut = build_lookup(one, s.model, s.grid);
  const auto fwd = lut.forward(0);
  EXPECT_EQ(VoxelSet(fwd.begin(), fwd.end()), occupied_cells(s.model, JointConfig::Zero(2), s.grid));
}

TEST(LookupTable, BlockedNeuronsMatchPerNeuronOracle) {
  const TableFixture& s = table_fixture();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> pos(-2.0, 2.0), size(0.05, 0.4);
  for (int trial = 0; trial < 30; ++trial) {
    ObstacleSet obs;
    Obstacle box;
    box.id = 1;
    box.center = Point3(pos(rng), pos(rng), 0);
    box.half_extents = Point3(size(rng), size(rng), 0);
    obs.obstacles = {box};
    const VoxelSet occupied = voxelize_obstacles(obs, 0.0, s.grid);
    const BlockedSet blocked = blocked_neurons(s.lut, occupied);
    for (NeuronId n = 0; n < s.net.size(); ++n) {
      const VoxelSet cover = fixtures::planar_coverage_oracle({1.0, 1.0}, 0.1, s.net.weight(n), s.grid);
      std::vector<VoxelId> common;
      std::set_intersection(cover.begin(), cover.end(), occupied.begin(), occupied.end(), std::back_inserter(common));
      EXPECT_EQ(blocked.contains(n), !common.empty()) << "trial " << trial << " neuron " << n;
    }
  }
}

TEST(LookupTable, BlockedNeuronsEdgeCases) {
  const TableFixture& s = table_fixture();
  EXPECT_TRUE(blocked_neurons(s.lut, {}).empty());
  VoxelSet all(s.grid.cell_count());
  for (VoxelId v = 0; v < all.size(); ++v) all[v] = v;
  EXPECT_EQ(blocked_neurons(s.lut, all).size(), s.net.size());
  const VoxelSet bad{static_cast<VoxelId>(s.grid.cell_count())};
  EXPECT_THROW(blocked_neurons(s.lut, bad), std::invalid_argument);
}

TEST(LookupTable, BlockingIsMonotone) {
  const TableFixture& s = table_fixture();
  std::mt19937_64 rng(31);
  std::bernoulli_distribution pick(0.02);
  for (int trial = 0; trial < 20; ++trial) {
    VoxelSet small, large;
    for (VoxelId v = 0; v < s.grid.cell_count(); ++v) {
      const bool a = pick(rng), b = pick(rng);
      if (a) small.push_back(v);
      if (a || b) large.push_back(v);
    }
    const auto lo = blocked_neurons(s.lut, small).ids();
    const auto hi = blocked_neurons(s.lut, large).ids();
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
  }
}

TEST(LookupTable, SerializationRoundTripAndFingerprint) {
  const TableFixture& s = table_fixture();
  const auto bytes = serialize_lookup(s.lut);
  const LookupTable back = deserialize_lookup(bytes);
  EXPECT_EQ(back, s.lut);
  EXPECT_TRUE(back.is_consistent());
  EXPECT_EQ(serialize_lookup(back), bytes);
  EXPECT_NO_THROW(back.require_network(s.net));
  const Network other(NetworkKind::Gng, 2, {0.0, 0.0, 1.0, 1.0}, {});
  EXPECT_THROW(back.require_network(other), std::runtime_error);

  const auto dir = fixtures::temp_dir("lut");
  save_lookup(s.lut, dir / "t.lut");
  EXPECT_EQ(load_lookup(dir / "t.lut"), s.lut);
  EXPECT_THROW(deserialize_lookup(std::span(bytes.data(), bytes.size() - 3)), ParseError);
}

TEST(LookupTable, RejectsGridNotCoveringReach) {
  const TableFixture& s = table_fixture();
  EXPECT_THROW(build_lookup(s.net, s.model, VoxelGrid::planar(5, 5, 0.1, 10, 10)), std::invalid_argument);
  EXPECT_THROW(build_lookup(s.net, s.model, VoxelGrid::planar(-1, -1, 0.1, 20, 20)), std::invalid_argument);
  EXPECT_THROW(build_lookup(s.net, RobotModel::planar({1.0, 0.5, 0.3}, 0.0), s.grid), std::invalid_argument);
}

TEST(LookupTable, OutOfLimitNeuronsGetEmptyCoverage) {
  RobotModel model = RobotModel::planar({1.0, 1.0}, 0.0);
  model.limits[0] = {-1.0, 1.0};
  const Network net(NetworkKind::Gng, 2, {0.0, 0.0, 2.0, 0.0}, {{0, 1}});
  BuildReport report;
  const LookupTable lut = build_lookup(net, model, VoxelGrid::planar(-2.2, -2.2, 0.1, 44, 44), &report);
  EXPECT_EQ(report.out_of_limits, std::vector<NeuronId>{1});
  EXPECT_TRUE(lut.forward(1).empty());
  EXPECT_FALSE(lut.forward(0).empty());
}

TEST(LookupTable, ThreadCountDoesNotChangeResult) {
  const TableFixture& s = table_fixture();
  EXPECT_EQ(build_lookup(s.net, s.model, s.grid, nullptr, 1), build_lookup(s.net, s.model, s.grid, nullptr, 3));
}
