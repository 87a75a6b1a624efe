#include <string>

#include "cogmap/file_io.hpp"
#include "cogmap/network.hpp"

namespace cogmap {

namespace {
constexpr std::string_view kMagic = "CGMN";
constexpr std::uint32_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> serialize_network(const Network& net) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u8(static_cast<std::uint8_t>(net.kind()));
  w.u32(static_cast<std::uint32_t>(net.dim()));
  w.u32(static_cast<std::uint32_t>(net.size()));
  for (double v : net.raw_weights()) w.f64(v);
  w.u32(static_cast<std::uint32_t>(net.edges().size()));
  for (const auto& e : net.edges()) {
    w.u32(e.a);
    w.u32(e.b);
  }
  if (const auto& g = net.grid_shape()) {
    w.u8(1);
    w.u32(g->rows);
    w.u32(g->cols);
  } else {
    w.u8(0);
  }
  if (!net.raw_contexts().empty()) {
    w.u8(1);
    w.u32(static_cast<std::uint32_t>(net.context_depth()));
    for (double v : net.raw_contexts()) w.f64(v);
  } else {
    w.u8(0);
  }
  return w.take();
}

Network deserialize_network(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.raw(kMagic.size()) != kMagic) throw ParseError("not a network file", 0);
  const std::size_t version_at = r.offset();
  if (r.u32() != kVersion) throw ParseError("unsupported network file version", version_at);
  const std::size_t kind_at = r.offset();
  const auto kind_tag = r.u8();
  if (kind_tag > static_cast<std::uint8_t>(NetworkKind::Gng)) throw ParseError("unknown network kind", kind_at);
  const auto kind = static_cast<NetworkKind>(kind_tag);
  const std::size_t dim = r.u32();
  const std::size_t n = r.u32();
  if (dim == 0) throw ParseError("zero network dimension", r.offset());
  if (r.remaining() / 8 < n * dim) throw ParseError("weight block truncated", r.offset());
  std::vector<double> weights(n * dim);
  for (auto& v : weights) v = r.f64();
  const std::size_t edge_count = r.u32();
  if (r.remaining() / 8 < edge_count) throw ParseError("edge block truncated", r.offset());
  std::vector<std::pair<NeuronId, NeuronId>> pairs(edge_count);
  for (auto& [a, b] : pairs) {
    a = r.u32();
    b = r.u32();
  }
  std::optional<GridShape> grid;
  if (r.u8() != 0) {
    GridShape g;
    g.rows = r.u32();
    g.cols = r.u32();
    grid = g;
  }
  std::size_t depth = 0;
  std::vector<double> contexts;
  if (r.u8() != 0) {
    depth = r.u32();
    if (r.remaining() / 8 < n * depth * dim) throw ParseError("context block truncated", r.offset());
    contexts.resize(n * depth * dim);
    for (auto& v : contexts) v = r.f64();
  }
  r.expect_end();
  const std::size_t end = r.offset();
  try {
    Network net(kind, dim, std::move(weights), std::move(pairs), grid, depth, std::move(contexts));
    net.validate();
    return net;
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("invalid network: ") + e.what(), end);
  }
}

void save_network(const Network& net, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_network(net));
}

Network load_network(const std::filesystem::path& path) { return deserialize_network(read_binary_file(path)); }

std::uint64_t network_fingerprint(const Network& net) { return fnv1a64(serialize_network(net)); }

}  // namespace cogmap
