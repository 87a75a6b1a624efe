#include "cogmap/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cogmap {

Point3 Obstacle::position_at(double t) const {
  if (timeline.empty()) return center;
  if (t <= timeline.front().time) return timeline.front().position;
  if (t >= timeline.back().time) return timeline.back().position;
  const auto next = std::upper_bound(timeline.begin(), timeline.end(), t,
                                     [](double value, const Keyframe& k) { return value < k.time; });
  const auto prev = std::prev(next);
  const double u = (t - prev->time) / (next->time - prev->time);
  return prev->position + u * (next->position - prev->position);
}

bool Obstacle::contains(const Point3& p, double t) const {
  const Point3 c = position_at(t);
  if (shape == ShapeKind::Sphere) return (p - c).norm() <= radius;
  const Point3 d = (p - c).cwiseAbs();
  return d.x() <= half_extents.x() && d.y() <= half_extents.y() && d.z() <= half_extents.z();
}

void ObstacleSet::validate() const {
  std::set<int> ids;
  for (const auto& o : obstacles) {
    if (!ids.insert(o.id).second) throw std::invalid_argument("duplicate obstacle id " + std::to_string(o.id));
    if (o.shape == ShapeKind::Sphere && !(o.radius >= 0.0)) {
      throw std::invalid_argument("sphere radius must be non-negative");
    }
    if (o.shape == ShapeKind::Box && !(o.half_extents.array() >= 0.0).all()) {
      throw std::invalid_argument("box half extents must be non-negative");
    }
    for (std::size_t k = 1; k < o.timeline.size(); ++k) {
      if (!(o.timeline[k].time > o.timeline[k - 1].time)) {
        throw std::invalid_argument("obstacle timeline timestamps must be strictly increasing");
      }
    }
  }
}

Obstacle* ObstacleSet::find(int id) {
  auto it = std::find_if(obstacles.begin(), obstacles.end(), [id](const Obstacle& o) { return o.id == id; });
  return it == obstacles.end() ? nullptr : &*it;
}

const Obstacle* ObstacleSet::find(int id) const {
  return const_cast<ObstacleSet*>(this)->find(id);
}

VoxelSet voxelize_obstacles(const ObstacleSet& obstacles, double t, const VoxelGrid& grid) {
  VoxelSet out;
  const double res = grid.resolution;
  for (const auto& o : obstacles.obstacles) {
    const Point3 c = o.position_at(t);
    const Point3 extent = o.shape == ShapeKind::Sphere ? Point3::Constant(o.radius) : o.half_extents;
    std::array<long, 3> lo{0, 0, 0};
    std::array<long, 3> hi{0, 0, 0};
    bool empty = false;
    for (int k = 0; k < grid.axes; ++k) {
      const double mn = c[k] - extent[k];
      const double mx = c[k] + extent[k];
      lo[k] = std::max(0L, static_cast<long>(std::ceil((mn - grid.origin[k]) / res - 0.5)) - 1);
      hi[k] = std::min(static_cast<long>(grid.dims[k]) - 1,
                       static_cast<long>(std::floor((mx - grid.origin[k]) / res - 0.5)) + 1);
      if (lo[k] > hi[k]) empty = true;
    }
    if (empty) continue;
    for (long iz = lo[2]; iz <= hi[2]; ++iz) {
      for (long iy = lo[1]; iy <= hi[1]; ++iy) {
        for (long ix = lo[0]; ix <= hi[0]; ++ix) {
          const auto ux = static_cast<std::uint32_t>(ix);
          const auto uy = static_cast<std::uint32_t>(iy);
          const auto uz = static_cast<std::uint32_t>(iz);
          if (o.contains(grid.center(ux, uy, uz), t)) out.push_back(grid.id(ux, uy, uz));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cogmap
