#pragma once

#include <array>
#include <cstddef>

#include "cogmap/types.hpp"

namespace cogmap {

/// Axis-aligned discretization of the task space into cubic (or square)
/// cells. A planar grid has `axes == 2`, `dims[2] == 1`, and all of its cell
/// centers lie in the z == 0 plane.
struct VoxelGrid {
  Point3 origin = Point3::Zero();  ///< corner of cell (0, 0, 0)
  double resolution = 0.1;          ///< cell edge length, meters
  std::array<std::uint32_t, 3> dims{1, 1, 1};
  int axes = 2;

  static VoxelGrid planar(double origin_x, double origin_y, double resolution, std::uint32_t nx,
                          std::uint32_t ny);
  static VoxelGrid spatial(const Point3& origin, double resolution, std::uint32_t nx,
                           std::uint32_t ny, std::uint32_t nz);

  void validate() const;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  bool contains(VoxelId id) const { return id < cell_count(); }

  VoxelId id(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz = 0) const {
    return static_cast<VoxelId>(ix + dims[0] * (iy + static_cast<std::size_t>(dims[1]) * iz));
  }
  std::array<std::uint32_t, 3> coords(VoxelId id) const;

  Point3 center(std::uint32_t ix, std::uint32_t iy, std::uint32_t iz) const;
  Point3 center(VoxelId id) const;

  /// Half the cell diagonal: sqrt(axes) * resolution / 2.
  double half_diagonal() const;

  /// Smallest and largest coordinate spanned by the grid.
  Point3 lower() const;
  Point3 upper() const;

  /// True when the closed box [lo, hi] lies inside the grid volume
  /// (z ignored for planar grids).
  bool covers(const Point3& lo, const Point3& hi) const;

  bool operator==(const VoxelGrid&) const = default;
};

}  // namespace cogmap
