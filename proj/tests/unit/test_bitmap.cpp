#include <gtest/gtest.h>

#include <random>
#include <string>

#include "cogmap/bitmap.hpp"
#include "fixtures.hpp"

using namespace cogmap;

namespace {

Network lattice(std::uint32_t rows, std::uint32_t cols) {
  std::vector<double> w(static_cast<std::size_t>(rows) * cols * 2, 0.0);
  return Network::lattice(NetworkKind::Som, GridShape{rows, cols}, 2, std::move(w));
}

}  // namespace

TEST(Bitmap, LayoutUsesLatticeForSomAndSquareForGng) {
  const auto som = bitmap_layout(lattice(4, 7));
  EXPECT_EQ(som.width, 7u);
  EXPECT_EQ(som.height, 4u);
  for (NeuronId i = 0; i < 28; ++i) EXPECT_EQ(som.pixel_of[i], i);

  std::mt19937_64 rng(1);
  const auto gng = bitmap_layout(fixtures::random_network(10, 0.0, rng));
  EXPECT_EQ(gng.width, 4u);
  EXPECT_EQ(gng.height, 4u);
  EXPECT_EQ(gng.pixel_of.size(), 10u);
}

TEST(Bitmap, FreeNetworkRendersWhite) {
  const Network net = lattice(5, 5);
  const Image img = render_bitmap(net, BlockedSet(net.size()));
  EXPECT_EQ(img.count(kFreeColor), 25u);
}

TEST(Bitmap, BlockedPixelsAreRedAndPathPixelsNeverRed) {
  std::mt19937_64 rng(8);
  const Network net = fixtures::random_network(200, 0.0, rng);
  const BlockedSet blocked = fixtures::random_blocked(200, 0.3, rng);
  const std::vector<NeuronId> path = [&] {
    std::vector<NeuronId> p;
    for (NeuronId i = 0; i < 200 && p.size() < 6; ++i) {
      if (!blocked.contains(i)) p.push_back(i);
    }
    return p;
  }();
  const Image img = render_bitmap(net, blocked, path);
  const auto layout = bitmap_layout(net);
  EXPECT_EQ(img.count(kBlockedColor), blocked.size());
  EXPECT_EQ(img.count(kPathColor), path.size() - 2);
  EXPECT_EQ(img.count(kEndpointColor), 2u);
  for (NeuronId id : path) {
    const auto px = layout.pixel_of[id];
    EXPECT_NE(img.at(px % img.width, px / img.width), kBlockedColor);
  }
  const auto first = layout.pixel_of[path.front()];
  EXPECT_EQ(img.at(first % img.width, first / img.width), kEndpointColor);
}

TEST(Bitmap, PpmHeaderAndSize) {
  const Image img = render_bitmap(lattice(3, 5), BlockedSet(15));
  const auto bytes = encode_ppm(img);
  const std::string header = "P6\n5 3\n255\n";
  ASSERT_GE(bytes.size(), header.size());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + static_cast<long>(header.size())), header);
  EXPECT_EQ(bytes.size(), header.size() + 15 * 3);
}

TEST(Bitmap, RleRoundTrips) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution bit(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(trial) * 7);
    for (auto& m : mask) m = bit(rng);
    EXPECT_EQ(rle_decode(rle_encode(mask), mask.size()), mask);
  }
  const std::vector<std::uint8_t> ones{1, 1, 0};
  EXPECT_EQ(rle_encode(ones), (std::vector<std::uint32_t>{0, 2, 1}));
}

TEST(Bitmap, RleDecodeRejectsWrongTotal) {
  const std::vector<std::uint32_t> runs{2, 3};
  EXPECT_THROW(rle_decode(runs, 4), std::invalid_argument);
  EXPECT_EQ(rle_decode(runs, 5).size(), 5u);
}
