#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cogmap {

/// A point in configuration space: one angle per joint, in radians.
using JointConfig = Eigen::VectorXd;

/// Cartesian point in meters. Planar robots use z == 0.
using Point3 = Eigen::Vector3d;

using NeuronId = std::uint32_t;
using VoxelId = std::uint32_t;

/// Sorted, duplicate-free list of voxel ids.
using VoxelSet = std::vector<VoxelId>;

/// Raised when an operation is not defined for the given network kind.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file. Carries the 1-based line (text formats) or byte
/// offset (binary formats) where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t location)
      : std::runtime_error(what + " (at " + std::to_string(location) + ")"), location_(location) {}

  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

}  // namespace cogmap
