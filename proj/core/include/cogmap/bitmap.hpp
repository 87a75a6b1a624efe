#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"

namespace cogmap {

/// Placement of neurons on a 2-D image of the output space. Lattice
/// networks use their rows x cols grid; GNG neurons fill a ceil(sqrt(n))
/// square row-major by index, leaving the tail pixels unused.
struct BitmapLayout {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint32_t> pixel_of;  ///< per neuron

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

BitmapLayout bitmap_layout(const Network& net);

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kFreeColor{255, 255, 255};
inline constexpr Rgb kBlockedColor{255, 0, 0};
inline constexpr Rgb kPathColor{0, 0, 255};
inline constexpr Rgb kEndpointColor{0, 255, 0};

struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> rgb;  ///< row-major, 3 bytes per pixel

  Rgb at(std::uint32_t x, std::uint32_t y) const;
  std::size_t count(const Rgb& color) const;
};

/// Free pixels white, blocked red, path blue, path endpoints green.
Image render_bitmap(const Network& net, const BlockedSet& blocked, std::span<const NeuronId> path = {});

/// Binary PPM (P6).
std::vector<std::uint8_t> encode_ppm(const Image& image);

/// Per-pixel 0/1 masks in layout order.
std::vector<std::uint8_t> blocked_mask(const BitmapLayout& layout, const BlockedSet& blocked);
std::vector<std::uint8_t> path_mask(const BitmapLayout& layout, std::span<const NeuronId> path);

/// Run lengths of alternating 0/1 values, starting with a (possibly empty)
/// run of zeros.
std::vector<std::uint32_t> rle_encode(std::span<const std::uint8_t> mask);
/// Throws std::invalid_argument if the runs do not sum to `size`.
std::vector<std::uint8_t> rle_decode(std::span<const std::uint32_t> runs, std::size_t size);

}  // namespace cogmap
