#pragma once

#include <vector>

#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/search.hpp"

namespace cogmap {

/// Dense trajectory derived from a path. `degree == 0` marks the unsmoothed
/// fallback, whose samples are the path configs themselves.
struct SmoothedTrajectory {
  std::vector<JointConfig> samples;
  int degree = 0;
  int samples_per_hop = 1;
  Path source;
};

/// Clamped open-uniform B-spline with the path configs as control points,
/// sampled at samples_per_hop * hop_count + 1 uniformly spaced parameters.
/// Throws std::invalid_argument unless path has >= 2 configs and
/// 1 <= degree <= hop_count.
SmoothedTrajectory smooth(const Path& path, int degree, int samples_per_hop);

/// Point on the clamped uniform B-spline at parameter u in [0, 1].
JointConfig bspline_point(const std::vector<JointConfig>& control, int degree, double u);

/// Tries degree max_degree down to 1 and returns the first smoothing whose
/// every sample has an unblocked BMU. Falls back to the path configs
/// (degree 0) when none validates, and for single-neuron paths.
SmoothedTrajectory smooth_validated(const Path& path, const Network& net, const BlockedSet& blocked,
                                    int max_degree, int samples_per_hop = 10);

/// True when no sample's BMU is in `blocked`.
bool samples_unblocked(const std::vector<JointConfig>& samples, const Network& net, const BlockedSet& blocked);

}  // namespace cogmap
