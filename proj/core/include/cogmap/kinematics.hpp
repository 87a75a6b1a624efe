#pragma once

#include <vector>

#include "cogmap/types.hpp"
#include "cogmap/voxel_grid.hpp"

namespace cogmap {

enum class RobotMode { Planar, Spatial };

/// Standard Denavit-Hartenberg parameters of one joint:
/// T = Rz(q + theta_offset) * Tz(d) * Tx(a) * Rx(alpha).
struct DhParams {
  double a = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double theta_offset = 0.0;
};

struct Link {
  double length = 1.0;  ///< meters; for spatial links derived as hypot(a, d)
  double radius = 0.0;  ///< inflation radius, meters
  DhParams dh;          ///< only meaningful in spatial mode
};

struct JointLimit {
  double min = -3.141592653589793;
  double max = 3.141592653589793;
};

/// Serial revolute manipulator with its base at the origin.
struct RobotModel {
  RobotMode mode = RobotMode::Planar;
  std::vector<Link> links;
  std::vector<JointLimit> limits;

  /// Planar arm with one joint per link and default [-pi, pi] limits.
  static RobotModel planar(const std::vector<double>& lengths, double radius);
  /// Spatial arm from a DH table. Link lengths are derived from (a, d).
  static RobotModel spatial(const std::vector<DhParams>& dh, const std::vector<double>& radii);

  std::size_t joint_count() const { return links.size(); }
  void validate() const;
  bool within_limits(const JointConfig& q) const;
  /// Sum of link lengths plus the largest inflation radius.
  double reach() const;
  /// Copy of this model with every inflation radius replaced.
  RobotModel with_radius(double radius) const;
};

/// Inflated link: the set of points within `radius` of segment [start, end].
struct LinkSegment {
  Point3 start;
  Point3 end;
  double radius = 0.0;
};

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b);

/// One capsule per link, chained from the base outwards.
/// Throws std::invalid_argument on a dimension mismatch.
std::vector<LinkSegment> forward_kinematics(const RobotModel& model, const JointConfig& q);

/// Every grid cell whose center lies within (capsule radius + half cell
/// diagonal) of some link segment. Cells outside the grid are dropped.
/// Throws std::domain_error if q violates the joint limits.
VoxelSet occupied_cells(const RobotModel& model, const JointConfig& q, const VoxelGrid& grid);

/// Same rasterization for already computed segments; appends unsorted ids.
void rasterize_segments(const std::vector<LinkSegment>& segments, const VoxelGrid& grid,
                        std::vector<VoxelId>& out);

/// Straight joint-space interpolation from a to b, both endpoints included,
/// with consecutive configs at most max_step apart in the infinity norm.
std::vector<JointConfig> interpolate(const JointConfig& a, const JointConfig& b, double max_step);

}  // namespace cogmap
