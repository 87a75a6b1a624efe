#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/types.hpp"

namespace cogmap {

/// Ordered joint-space trajectories used as SONN training input.
struct Dataset {
  std::size_t dof = 0;
  std::vector<std::vector<JointConfig>> trajectories;

  std::size_t sample_count() const;
  bool empty() const { return sample_count() == 0; }
  /// Every sample has `dof` entries and every trajectory at least 2 samples.
  void validate() const;
  /// All samples in trajectory order.
  std::vector<JointConfig> samples() const;
};

/// Text format: a `#dof N` header, then trajectories separated by blank
/// lines, one configuration per line as N space-separated radians.
std::string format_dataset(const Dataset& data);
Dataset parse_dataset(std::string_view text);

void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace cogmap
