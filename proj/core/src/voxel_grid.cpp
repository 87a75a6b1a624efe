#include "cogmap/voxel_grid.hpp"

#include <cmath>
#include <limits>

namespace cogmap {

VoxelGrid VoxelGrid::planar(double origin_x, double origin_y, double resolution, std::uint32_t nx,
                            std::uint32_t ny) {
  VoxelGrid g;
  g.origin = Point3(origin_x, origin_y, 0.0);
  g.resolution = resolution;
  g.dims = {nx, ny, 1};
  g.axes = 2;
  g.validate();
  return g;
}

VoxelGrid VoxelGrid::spatial(const Point3& origin, double resolution, std::uint32_t nx,
                             std::uint32_t ny, std::uint32_t nz) {
  VoxelGrid g;
  g.origin = origin;
  g.resolution = resolution;
  g.dims = {nx, ny, nz};
  g.axes = 3;
  g.validate();
  return g;
}

void VoxelGrid::validate() const {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("voxel grid resolution must be positive");
  }
  if (axes != 2 && axes != 3) throw std::invalid_argument("voxel grid must have 2 or 3 axes");
  if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
    throw std::invalid_argument("voxel grid needs at least one cell per axis");
  }
  if (axes == 2 && dims[2] != 1) throw std::invalid_argument("planar grid must have dims[2] == 1");
  if (cell_count() > std::numeric_limits<VoxelId>::max()) {
    throw std::invalid_argument("voxel grid too large for 32-bit ids");
  }
}

std::array<std::uint32_t, 3> VoxelGrid::coords(VoxelId id) const {
  const std::uint32_t ix = id % dims[0];
  const std::uint32_t rest = id / dims[0];
  return {ix, rest % dims[1], rest / dims[1]};
}

Point3 VoxelGrid::center(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const {
  const double z = axes == 2 ? 0.0 : origin.z() + (iz + 0.5) * resolution;
  return {origin.x() + (ix + 0.5) * resolution, origin.y() + (iy + 0.5) * resolution, z};
}

Point3 VoxelGrid::center(VoxelId id) const {
  const auto c = coords(id);
  return center(c[0], c[1], c[2]);
}

double VoxelGrid::half_diagonal() const { return std::sqrt(static_cast<double>(axes)) * resolution / 2.0; }

Point3 VoxelGrid::lower() const { return origin; }

Point3 VoxelGrid::upper() const {
  return origin + resolution * Point3(dims[0], dims[1], dims[2]);
}

bool VoxelGrid::covers(const Point3& lo, const Point3& hi) const {
  const Point3 a = lower();
  const Point3 b = upper();
  for (int k = 0; k < axes; ++k) {
    if (lo[k] < a[k] || hi[k] > b[k]) return false;
  }
  return true;
}

}  // namespace cogmap
