#include "cogmap/bitmap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogmap {

BitmapLayout bitmap_layout(const Network& net) {
  BitmapLayout layout;
  const std::size_t n = net.size();
  if (net.grid_shape() && net.kind() != NetworkKind::Gng) {
    layout.width = net.grid_shape()->cols;
    layout.height = net.grid_shape()->rows;
  } else {
    auto side = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (static_cast<std::size_t>(side) * side < n) ++side;
    layout.width = side;
    layout.height = side;
  }
  layout.pixel_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) layout.pixel_of[i] = static_cast<std::uint32_t>(i);
  return layout;
}

Rgb Image::at(std::uint32_t x, std::uint32_t y) const {
  const std::size_t o = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[o], rgb[o + 1], rgb[o + 2]};
}

std::size_t Image::count(const Rgb& color) const {
  std::size_t c = 0;
  for (std::size_t o = 0; o + 2 < rgb.size(); o += 3) {
    if (rgb[o] == color[0] && rgb[o + 1] == color[1] && rgb[o + 2] == color[2]) ++c;
  }
  return c;
}

Image render_bitmap(const Network& net, const BlockedSet& blocked, std::span<const NeuronId> path) {
  const BitmapLayout layout = bitmap_layout(net);
  Image img;
  img.width = layout.width;
  img.height = layout.height;
  img.rgb.assign(layout.pixel_count() * 3, 255);
  auto paint = [&](NeuronId n, const Rgb& c) {
    if (n >= layout.pixel_of.size()) throw std::invalid_argument("neuron id outside network");
    const std::size_t o = static_cast<std::size_t>(layout.pixel_of[n]) * 3;
    img.rgb[o] = c[0];
    img.rgb[o + 1] = c[1];
    img.rgb[o + 2] = c[2];
  };
  for (NeuronId n : blocked.ids()) paint(n, kBlockedColor);
  for (NeuronId n : path) paint(n, kPathColor);
  if (!path.empty()) {
    paint(path.front(), kEndpointColor);
    paint(path.back(), kEndpointColor);
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  const std::string header = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

std::vector<std::uint8_t> blocked_mask(const BitmapLayout& layout, const BlockedSet& blocked) {
  std::vector<std::uint8_t> mask(layout.pixel_count(), 0);
  for (NeuronId n : blocked.ids()) mask[layout.pixel_of.at(n)] = 1;
  return mask;
}

std::vector<std::uint8_t> path_mask(const BitmapLayout& layout, std::span<const NeuronId> path) {
  std::vector<std::uint8_t> mask(layout.pixel_count(), 0);
  for (NeuronId n : path) mask[layout.pixel_of.at(n)] = 1;
  return mask;
}

std::vector<std::uint32_t> rle_encode(std::span<const std::uint8_t> mask) {
  std::vector<std::uint32_t> runs;
  std::uint8_t value = 0;
  std::uint32_t length = 0;
  for (std::uint8_t m : mask) {
    const std::uint8_t bit = m != 0 ? 1 : 0;
    if (bit != value) {
      runs.push_back(length);
      value = bit;
      length = 0;
    }
    ++length;
  }
  if (length > 0) runs.push_back(length);
  return runs;
}

std::vector<std::uint8_t> rle_decode(std::span<const std::uint32_t> runs, std::size_t size) {
  std::vector<std::uint8_t> mask;
  mask.reserve(size);
  std::uint8_t value = 0;
  for (std::uint32_t r : runs) {
    if (mask.size() + r > size) throw std::invalid_argument("run lengths exceed mask size");
    mask.insert(mask.end(), r, value);
    value ^= 1;
  }
  if (mask.size() != size) throw std::invalid_argument("run lengths do not cover mask");
  return mask;
}

}  // namespace cogmap
