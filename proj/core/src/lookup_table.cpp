#include "cogmap/lookup_table.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "cogmap/file_io.hpp"

namespace cogmap {

BlockedSet BlockedSet::from_ids(std::size_t neuron_count, std::span<const NeuronId> ids) {
  BlockedSet s(neuron_count);
  for (NeuronId n : ids) s.insert(n);
  return s;
}

void BlockedSet::insert(NeuronId n) {
  if (n >= mask_.size()) throw std::out_of_range("neuron id outside blocked set capacity");
  if (mask_[n] == 0) {
    mask_[n] = 1;
    ++count_;
  }
}

std::vector<NeuronId> BlockedSet::ids() const {
  std::vector<NeuronId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] != 0) out.push_back(static_cast<NeuronId>(i));
  }
  return out;
}

LookupTable::LookupTable(VoxelGrid grid, std::uint64_t network_fingerprint,
                         std::vector<std::uint64_t> forward_offsets, std::vector<VoxelId> forward_ids,
                         std::vector<std::uint64_t> inverse_offsets, std::vector<NeuronId> inverse_ids)
    : grid_(grid),
      fingerprint_(network_fingerprint),
      forward_offsets_(std::move(forward_offsets)),
      forward_ids_(std::move(forward_ids)),
      inverse_offsets_(std::move(inverse_offsets)),
      inverse_ids_(std::move(inverse_ids)) {
  auto check_offsets = [](const std::vector<std::uint64_t>& offsets, std::size_t total) {
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != total) {
      throw std::invalid_argument("lookup offsets do not span the id array");
    }
    if (!std::is_sorted(offsets.begin(), offsets.end())) throw std::invalid_argument("lookup offsets decrease");
  };
  check_offsets(forward_offsets_, forward_ids_.size());
  check_offsets(inverse_offsets_, inverse_ids_.size());
  if (inverse_offsets_.size() - 1 != grid_.cell_count()) {
    throw std::invalid_argument("inverse section does not match grid size");
  }
}

bool LookupTable::is_consistent() const {
  const std::size_t n = neuron_count();
  const std::size_t v = voxel_count();
  if (forward_ids_.size() != inverse_ids_.size()) return false;
  // Rebuild the transpose independently and compare.
  std::vector<std::uint64_t> counts(v + 1, 0);
  for (NeuronId i = 0; i < n; ++i) {
    const auto f = forward(i);
    if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end()) return false;
    for (VoxelId x : f) {
      if (x >= v) return false;
      ++counts[x + 1];
    }
  }
  for (std::size_t x = 0; x < v; ++x) counts[x + 1] += counts[x];
  if (counts != inverse_offsets_) return false;
  std::vector<std::uint64_t> fill(counts.begin(), counts.end() - 1);
  std::vector<NeuronId> expected(inverse_ids_.size());
  for (NeuronId i = 0; i < n; ++i) {
    for (VoxelId x : forward(i)) expected[fill[x]++] = i;
  }
  return expected == inverse_ids_;
}

void LookupTable::require_network(const Network& net) const {
  const std::uint64_t fp = cogmap::network_fingerprint(net);
  if (fp != fingerprint_ || net.size() != neuron_count()) {
    std::ostringstream ss;
    ss << "lookup table fingerprint " << std::hex << fingerprint_ << " does not match network " << fp;
    throw std::runtime_error(ss.str());
  }
}

LookupTable build_lookup(const Network& net, const RobotModel& model, const VoxelGrid& grid, BuildReport* report,
                         unsigned threads) {
  model.validate();
  grid.validate();
  if (net.dim() != model.joint_count()) throw std::invalid_argument("network dimension differs from robot joints");
  if ((model.mode == RobotMode::Planar) != (grid.axes == 2)) {
    throw std::invalid_argument("grid axes do not match robot mode");
  }
  const double reach = model.reach();
  if (!grid.covers(Point3::Constant(-reach), Point3::Constant(reach))) {
    throw std::invalid_argument("voxel grid does not cover the robot's reach");
  }

  const std::size_t n = net.size();
  std::vector<VoxelSet> coverage(n);
  std::vector<std::uint8_t> invalid(n, 0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  auto work = [&](std::size_t begin, std::size_t end) {
    JointConfig q(static_cast<Eigen::Index>(net.dim()));
    for (std::size_t i = begin; i < end; ++i) {
      q = net.weight(static_cast<NeuronId>(i));
      if (!model.within_limits(q)) {
        invalid[i] = 1;
        continue;
      }
      coverage[i] = occupied_cells(model, q, grid);
    }
  };
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  std::vector<std::uint64_t> fwd_offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) fwd_offsets[i + 1] = fwd_offsets[i] + coverage[i].size();
  std::vector<VoxelId> fwd_ids;
  fwd_ids.reserve(fwd_offsets[n]);
  const std::size_t v = grid.cell_count();
  std::vector<std::uint64_t> inv_offsets(v + 1, 0);
  for (const auto& cells : coverage) {
    fwd_ids.insert(fwd_ids.end(), cells.begin(), cells.end());
    for (VoxelId x : cells) ++inv_offsets[x + 1];
  }
  for (std::size_t x = 0; x < v; ++x) inv_offsets[x + 1] += inv_offsets[x];
  std::vector<NeuronId> inv_ids(inv_offsets[v]);
  std::vector<std::uint64_t> fill(inv_offsets.begin(), inv_offsets.end() - 1);
  // Neurons are visited in increasing order, so each inverse list comes out sorted.
  for (std::size_t i = 0; i < n; ++i) {
    for (VoxelId x : coverage[i]) inv_ids[fill[x]++] = static_cast<NeuronId>(i);
  }

  if (report) {
    report->out_of_limits.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (invalid[i]) report->out_of_limits.push_back(static_cast<NeuronId>(i));
    }
  }
  return LookupTable(grid, network_fingerprint(net), std::move(fwd_offsets), std::move(fwd_ids),
                     std::move(inv_offsets), std::move(inv_ids));
}

BlockedSet blocked_neurons(const LookupTable& lut, std::span<const VoxelId> occupied) {
  BlockedSet blocked(lut.neuron_count());
  const std::size_t v = lut.voxel_count();
  for (VoxelId x : occupied) {
    if (x >= v) throw std::invalid_argument("voxel id " + std::to_string(x) + " outside lookup grid");
    for (NeuronId n : lut.inverse(x)) blocked.insert(n);
  }
  return blocked;
}

namespace {
constexpr std::string_view kLutMagic = "CGML";
constexpr std::uint32_t kLutVersion = 1;
}  // namespace

std::vector<std::uint8_t> serialize_lookup(const LookupTable& lut) {
  ByteWriter w;
  w.raw(kLutMagic);
  w.u32(kLutVersion);
  const auto& g = lut.grid();
  w.u8(static_cast<std::uint8_t>(g.axes));
  for (int k = 0; k < 3; ++k) w.f64(g.origin[k]);
  w.f64(g.resolution);
  for (int k = 0; k < 3; ++k) w.u32(g.dims[static_cast<std::size_t>(k)]);
  w.u32(static_cast<std::uint32_t>(lut.neuron_count()));
  w.u64(lut.network_fingerprint());
  w.u64(lut.entry_count());
  for (auto o : lut.forward_offsets()) w.u64(o);
  for (auto id : lut.forward_ids()) w.u32(id);
  for (auto o : lut.inverse_offsets()) w.u64(o);
  for (auto id : lut.inverse_ids()) w.u32(id);
  return w.take();
}

LookupTable deserialize_lookup(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.raw(kLutMagic.size()) != kLutMagic) throw ParseError("not a lookup table file", 0);
  const std::size_t version_at = r.offset();
  if (r.u32() != kLutVersion) throw ParseError("unsupported lookup table version", version_at);
  VoxelGrid g;
  g.axes = r.u8();
  for (int k = 0; k < 3; ++k) g.origin[k] = r.f64();
  g.resolution = r.f64();
  for (int k = 0; k < 3; ++k) g.dims[static_cast<std::size_t>(k)] = r.u32();
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad grid header: ") + e.what(), r.offset());
  }
  const std::size_t n = r.u32();
  const std::uint64_t fp = r.u64();
  const std::uint64_t entries = r.u64();
  const std::size_t v = g.cell_count();
  const std::uint64_t needed = (n + 1) * 8 + entries * 4 + (v + 1) * 8 + entries * 4;
  if (r.remaining() != needed) throw ParseError("lookup table size does not match header", r.offset());
  std::vector<std::uint64_t> fwd_off(n + 1);
  for (auto& o : fwd_off) o = r.u64();
  std::vector<VoxelId> fwd(entries);
  for (auto& id : fwd) id = r.u32();
  std::vector<std::uint64_t> inv_off(v + 1);
  for (auto& o : inv_off) o = r.u64();
  std::vector<NeuronId> inv(entries);
  for (auto& id : inv) id = r.u32();
  r.expect_end();
  try {
    return LookupTable(g, fp, std::move(fwd_off), std::move(fwd), std::move(inv_off), std::move(inv));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid lookup table: ") + e.what(), r.offset());
  }
}

void save_lookup(const LookupTable& lut, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_lookup(lut));
}

LookupTable load_lookup(const std::filesystem::path& path) { return deserialize_lookup(read_binary_file(path)); }

}  // namespace cogmap
