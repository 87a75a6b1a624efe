#include "cogmap/smoothing.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogmap {

namespace {

// Knot t_i of the clamped uniform vector with n control points.
double knot(int i, int n, int degree) {
  if (i <= degree) return 0.0;
  if (i >= n) return 1.0;
  return static_cast<double>(i - degree) / static_cast<double>(n - degree);
}

}  // namespace

JointConfig bspline_point(const std::vector<JointConfig>& control, int degree, double u) {
  const int n = static_cast<int>(control.size());
  if (n < 2 || degree < 1 || degree >= n) throw std::invalid_argument("spline degree out of range");
  if (u <= 0.0) return control.front();
  if (u >= 1.0) return control.back();

  // Knot span k with t_k <= u < t_{k+1}, restricted to [degree, n - 1].
  const int spans = n - degree;
  int k = degree + static_cast<int>(u * spans);
  k = std::clamp(k, degree, n - 1);
  while (k > degree && u < knot(k, n, degree)) --k;
  while (k < n - 1 && u >= knot(k + 1, n, degree)) ++k;

  // de Boor recursion.
  std::vector<JointConfig> d(static_cast<std::size_t>(degree + 1));
  for (int j = 0; j <= degree; ++j) d[static_cast<std::size_t>(j)] = control[static_cast<std::size_t>(j + k - degree)];
  for (int r = 1; r <= degree; ++r) {
    for (int j = degree; j >= r; --j) {
      const int i = j + k - degree;
      const double lo = knot(i, n, degree);
      const double hi = knot(i + degree - r + 1, n, degree);
      const double a = (u - lo) / (hi - lo);
      auto& dj = d[static_cast<std::size_t>(j)];
      dj = (1.0 - a) * d[static_cast<std::size_t>(j - 1)] + a * dj;
    }
  }
  return d[static_cast<std::size_t>(degree)];
}

SmoothedTrajectory smooth(const Path& path, int degree, int samples_per_hop) {
  if (path.configs.size() < 2) throw std::invalid_argument("smoothing needs a path with at least two configs");
  const int hops = static_cast<int>(path.configs.size()) - 1;
  if (degree < 1 || degree > hops) {
    throw std::invalid_argument("smoothing degree " + std::to_string(degree) + " outside [1, " +
                                std::to_string(hops) + "]");
  }
  if (samples_per_hop < 1) throw std::invalid_argument("samples_per_hop must be positive");

  SmoothedTrajectory out;
  out.degree = degree;
  out.samples_per_hop = samples_per_hop;
  out.source = path;
  const int count = samples_per_hop * hops + 1;
  out.samples.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const double u = static_cast<double>(s) / static_cast<double>(count - 1);
    out.samples.push_back(bspline_point(path.configs, degree, u));
  }
  return out;
}

bool samples_unblocked(const std::vector<JointConfig>& samples, const Network& net, const BlockedSet& blocked) {
  if (blocked.empty()) return true;
  return std::all_of(samples.begin(), samples.end(),
                     [&](const JointConfig& q) { return !blocked.contains(best_matching_unit(net, q)); });
}

SmoothedTrajectory smooth_validated(const Path& path, const Network& net, const BlockedSet& blocked, int max_degree,
                                    int samples_per_hop) {
  const int hops = static_cast<int>(path.hop_count());
  for (int degree = std::min(max_degree, hops); degree >= 1; --degree) {
    SmoothedTrajectory t = smooth(path, degree, samples_per_hop);
    if (samples_unblocked(t.samples, net, blocked)) return t;
  }
  SmoothedTrajectory fallback;
  fallback.samples = path.configs;
  fallback.degree = 0;
  fallback.samples_per_hop = 1;
  fallback.source = path;
  return fallback;
}

}  // namespace cogmap
