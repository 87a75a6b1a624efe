#include "cogmap/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace cogmap {

RobotModel RobotModel::planar(const std::vector<double>& lengths, double radius) {
  RobotModel m;
  m.mode = RobotMode::Planar;
  for (double l : lengths) m.links.push_back(Link{l, radius, {}});
  m.limits.assign(lengths.size(), JointLimit{});
  m.validate();
  return m;
}

RobotModel RobotModel::spatial(const std::vector<DhParams>& dh, const std::vector<double>& radii) {
  if (radii.size() != dh.size()) throw std::invalid_argument("one radius per DH row required");
  RobotModel m;
  m.mode = RobotMode::Spatial;
  for (std::size_t i = 0; i < dh.size(); ++i) {
    m.links.push_back(Link{std::hypot(dh[i].a, dh[i].d), radii[i], dh[i]});
  }
  m.limits.assign(dh.size(), JointLimit{});
  m.validate();
  return m;
}

void RobotModel::validate() const {
  if (links.size() < 2) throw std::invalid_argument("robot needs at least two joints");
  if (limits.size() != links.size()) throw std::invalid_argument("one joint limit per joint required");
  for (const auto& link : links) {
    const double len = mode == RobotMode::Spatial ? std::hypot(link.dh.a, link.dh.d) : link.length;
    if (!(len > 0.0)) throw std::invalid_argument("link length must be positive");
    if (!(link.radius >= 0.0)) throw std::invalid_argument("inflation radius must be non-negative");
  }
  for (const auto& lim : limits) {
    if (!(lim.min < lim.max)) throw std::invalid_argument("joint limit min must be below max");
  }
}

bool RobotModel::within_limits(const JointConfig& q) const {
  if (static_cast<std::size_t>(q.size()) != joint_count()) return false;
  for (std::size_t i = 0; i < limits.size(); ++i) {
    const double v = q[static_cast<Eigen::Index>(i)];
    if (!(v >= limits[i].min && v <= limits[i].max)) return false;
  }
  return true;
}

double RobotModel::reach() const {
  double total = 0.0;
  double inflation = 0.0;
  for (const auto& link : links) {
    total += link.length;
    inflation = std::max(inflation, link.radius);
  }
  return total + inflation;
}

RobotModel RobotModel::with_radius(double radius) const {
  RobotModel copy = *this;
  for (auto& link : copy.links) link.radius = radius;
  return copy;
}

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
  const Point3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

std::vector<LinkSegment> forward_kinematics(const RobotModel& model, const JointConfig& q) {
  if (static_cast<std::size_t>(q.size()) != model.joint_count()) {
    throw std::invalid_argument("joint config dimension does not match robot");
  }
  std::vector<LinkSegment> segments;
  segments.reserve(model.joint_count());

  if (model.mode == RobotMode::Planar) {
    Point3 p = Point3::Zero();
    double heading = 0.0;
    for (std::size_t i = 0; i < model.links.size(); ++i) {
      heading += q[static_cast<Eigen::Index>(i)];
      const Point3 next = p + model.links[i].length * Point3(std::cos(heading), std::sin(heading), 0.0);
      segments.push_back({p, next, model.links[i].radius});
      p = next;
    }
    return segments;
  }

  Eigen::Isometry3d frame = Eigen::Isometry3d::Identity();
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const auto& dh = model.links[i].dh;
    const Point3 start = frame.translation();
    frame = frame * Eigen::AngleAxisd(q[static_cast<Eigen::Index>(i)] + dh.theta_offset, Point3::UnitZ()) *
            Eigen::Translation3d(0.0, 0.0, dh.d) * Eigen::Translation3d(dh.a, 0.0, 0.0) *
            Eigen::AngleAxisd(dh.alpha, Point3::UnitX());
    segments.push_back({start, frame.translation(), model.links[i].radius});
  }
  return segments;
}

void rasterize_segments(const std::vector<LinkSegment>& segments, const VoxelGrid& grid,
                        std::vector<VoxelId>& out) {
  const double hd = grid.half_diagonal();
  const double res = grid.resolution;
  for (const auto& seg : segments) {
    const double reach = seg.radius + hd;
    std::array<long, 3> lo{0, 0, 0};
    std::array<long, 3> hi{0, 0, 0};
    for (int k = 0; k < grid.axes; ++k) {
      const double mn = std::min(seg.start[k], seg.end[k]) - reach;
      const double mx = std::max(seg.start[k], seg.end[k]) + reach;
      // Cell i has its center at origin + (i + 0.5) * res.
      lo[k] = std::max(0L, static_cast<long>(std::ceil((mn - grid.origin[k]) / res - 0.5)));
      hi[k] = std::min(static_cast<long>(grid.dims[k]) - 1,
                       static_cast<long>(std::floor((mx - grid.origin[k]) / res - 0.5)));
    }
    for (long iz = lo[2]; iz <= hi[2]; ++iz) {
      for (long iy = lo[1]; iy <= hi[1]; ++iy) {
        for (long ix = lo[0]; ix <= hi[0]; ++ix) {
          const auto ux = static_cast<std::uint32_t>(ix);
          const auto uy = static_cast<std::uint32_t>(iy);
          const auto uz = static_cast<std::uint32_t>(iz);
          if (point_segment_distance(grid.center(ux, uy, uz), seg.start, seg.end) <= reach) {
            out.push_back(grid.id(ux, uy, uz));
          }
        }
      }
    }
  }
}

VoxelSet occupied_cells(const RobotModel& model, const JointConfig& q, const VoxelGrid& grid) {
  if (static_cast<std::size_t>(q.size()) != model.joint_count()) {
    throw std::invalid_argument("joint config dimension does not match robot");
  }
  if (!model.within_limits(q)) throw std::domain_error("joint config outside joint limits");
  VoxelSet cells;
  rasterize_segments(forward_kinematics(model, q), grid, cells);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::vector<JointConfig> interpolate(const JointConfig& a, const JointConfig& b, double max_step) {
  if (a.size() != b.size()) throw std::invalid_argument("interpolation endpoints differ in dimension");
  if (!(max_step > 0.0)) throw std::invalid_argument("interpolation step must be positive");
  const double span = a.size() == 0 ? 0.0 : (b - a).cwiseAbs().maxCoeff();
  if (span == 0.0) return {a};
  const auto steps = static_cast<std::size_t>(std::ceil(span / max_step));
  std::vector<JointConfig> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k == steps) {
      out.push_back(b);
    } else {
      const double t = static_cast<double>(k) / static_cast<double>(steps);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

}  // namespace cogmap
