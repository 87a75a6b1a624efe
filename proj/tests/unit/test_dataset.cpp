#include <gtest/gtest.h>

#include "cogmap/dataset.hpp"
#include "fixtures.hpp"

using namespace cogmap;

namespace {

Dataset small() {
  Dataset d;
  d.dof = 2;
  JointConfig a(2), b(2), c(2);
  a << 0.25, -1.5;
  b << 0.5, -1.25;
  c << 3.0, 0.125;
  d.trajectories = {{a, b}, {b, c, a}};
  return d;
}

}  // namespace

TEST(Dataset, TextRoundTripIsExact) {
  const Dataset d = small();
  const Dataset back = parse_dataset(format_dataset(d));
  ASSERT_EQ(back.dof, 2u);
  ASSERT_EQ(back.trajectories.size(), 2u);
  for (std::size_t t = 0; t < 2; ++t) {
    ASSERT_EQ(back.trajectories[t].size(), d.trajectories[t].size());
    for (std::size_t i = 0; i < d.trajectories[t].size(); ++i) EXPECT_EQ(back.trajectories[t][i], d.trajectories[t][i]);
  }
  EXPECT_EQ(back.sample_count(), 5u);
}

TEST(Dataset, FileRoundTrip) {
  const auto dir = fixtures::temp_dir("dataset");
  const Dataset d = small();
  save_dataset(d, dir / "d.txt");
  EXPECT_EQ(format_dataset(load_dataset(dir / "d.txt")), format_dataset(d));
}

TEST(Dataset, ValidateRejectsShortTrajectories) {
  Dataset d = small();
  d.trajectories.push_back({});
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.trajectories.back() = {JointConfig::Zero(2)};
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.trajectories.back() = {JointConfig::Zero(3), JointConfig::Zero(3)};
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Dataset, ParseErrorsReportLine) {
  try {
    parse_dataset("#dof 2\n0 0\n1 1\n\n2 x\n3 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 5u);
  }
  try {
    parse_dataset("#dof 2\n0 0\n1 1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 3u);
  }
  EXPECT_THROW(parse_dataset(""), ParseError);
  EXPECT_THROW(parse_dataset("0 0\n1 1\n"), ParseError);
  EXPECT_THROW(parse_dataset("#dof 2\n0 0 0\n1 1\n"), ParseError);
  EXPECT_THROW(parse_dataset("#dof 2\n0 0\n\n1 1\n2 2\n"), ParseError);
}

TEST(Dataset, BundledToyDatasetLoads) {
  const Dataset d = load_dataset(fixtures::data_path("datasets/toy.txt"));
  EXPECT_EQ(d.dof, 2u);
  EXPECT_EQ(d.trajectories.size(), 20u);
  EXPECT_NO_THROW(d.validate());
}
