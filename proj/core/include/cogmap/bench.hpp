#pragma once

#include <string>
#include <vector>

#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/scenario.hpp"

namespace cogmap {

/// One planning run. CSV columns, in order:
/// planner,scenario,run,plan_time_s,smooth_time_s,path_len_rad,neurons_on_path,success
struct BenchRow {
  std::string planner;
  std::string scenario;
  std::size_t run = 0;
  double plan_time_s = 0.0;
  double smooth_time_s = 0.0;
  double path_len_rad = 0.0;
  std::size_t neurons_on_path = 0;  ///< path node count (samplers: waypoints)
  bool success = false;
};

inline constexpr const char* kBenchCsvHeader =
    "planner,scenario,run,plan_time_s,smooth_time_s,path_len_rad,neurons_on_path,success";

std::string format_bench_csv(const std::vector<BenchRow>& rows);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for fewer than two values
};

MeanStd mean_std(const std::vector<double>& values);

struct BenchSummary {
  std::string planner;
  std::string scenario;
  std::size_t runs = 0;
  std::size_t successes = 0;
  MeanStd plan_time_s;
  MeanStd smooth_time_s;
  MeanStd path_len_rad;  ///< over successful runs
  MeanStd neurons_on_path;
};

/// Groups rows by (planner, scenario) in first-appearance order.
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);
std::string format_summary_table(const std::vector<BenchSummary>& summaries);

/// Cognitive-map planner timed per run: blocking + search + replan decision
/// as plan time, smooth_validated as smooth time (0 when smoothing is off).
/// Obstacles are voxelized at t = 0 outside the timed region.
std::vector<BenchRow> bench_cognitive(const Network& net, const LookupTable& lut, const Scenario& scenario,
                                      SearchAlgorithm algo, bool smoothing, std::size_t runs);

enum class SamplerKind { Rrt, RrtConnect, Prm };
const char* to_string(SamplerKind kind);

/// Run r uses seed scenario.sampler.seed + r.
std::vector<BenchRow> bench_sampler(SamplerKind kind, const Scenario& scenario, std::size_t runs);

}  // namespace cogmap
