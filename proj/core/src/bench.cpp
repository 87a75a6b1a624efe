#include "cogmap/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "cogmap/replan.hpp"

namespace cogmap {

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%.9f,%.9f,%.9f,%zu,%d\n", r.planner.c_str(), r.scenario.c_str(), r.run,
                  r.plan_time_s, r.smooth_time_s, r.path_len_rad, r.neurons_on_path, r.success ? 1 : 0);
    out << buf;
  }
  return out.str();
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return m;
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return m;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRow*>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.planner, r.scenario);
    auto& g = groups[key];
    if (g.empty()) order.push_back(key);
    g.push_back(&r);
  }
  for (const auto& key : order) {
    BenchSummary s;
    s.planner = key.first;
    s.scenario = key.second;
    std::vector<double> plan, smooth, len, neurons;
    for (const BenchRow* r : groups[key]) {
      ++s.runs;
      plan.push_back(r->plan_time_s);
      smooth.push_back(r->smooth_time_s);
      if (r->success) {
        ++s.successes;
        len.push_back(r->path_len_rad);
        neurons.push_back(static_cast<double>(r->neurons_on_path));
      }
    }
    s.plan_time_s = mean_std(plan);
    s.smooth_time_s = mean_std(smooth);
    s.path_len_rad = mean_std(len);
    s.neurons_on_path = mean_std(neurons);
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_summary_table(const std::vector<BenchSummary>& summaries) {
  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-20s %-12s %5s %9s %22s %22s %20s %16s\n", "planner", "scenario", "runs", "success",
                "plan_time_s mean/std", "smooth_time_s mean/std", "path_len_rad", "neurons_on_path");
  out << buf;
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof buf, "%-20s %-12s %5zu %5zu/%-3zu %11.6f/%-10.6f %11.6f/%-10.6f %9.4f/%-10.4f %7.1f/%-8.1f\n",
                  s.planner.c_str(), s.scenario.c_str(), s.runs, s.successes, s.runs, s.plan_time_s.mean,
                  s.plan_time_s.std, s.smooth_time_s.mean, s.smooth_time_s.std, s.path_len_rad.mean,
                  s.path_len_rad.std, s.neurons_on_path.mean, s.neurons_on_path.std);
    out << buf;
  }
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<BenchRow> bench_cognitive(const Network& net, const LookupTable& lut, const Scenario& scenario,
                                      SearchAlgorithm algo, bool smoothing, std::size_t runs) {
  lut.require_network(net);
  const VoxelSet occupied = voxelize_obstacles(scenario.obstacles, 0.0, lut.grid());
  const std::string name = std::string("gng_") + to_string(algo) + (smoothing ? "_smoothed" : "");
  std::vector<BenchRow> rows;
  for (std::size_t r = 0; r < runs; ++r) {
    BenchRow row;
    row.planner = name;
    row.scenario = scenario.name;
    row.run = r;
    ReplanState state;
    PlanTrace trace;
    const auto t0 = Clock::now();
    SearchOutcome outcome = PlanFailure::Unreachable;
    try {
      outcome = plan(net, lut, scenario.model, scenario.start, scenario.goal, occupied, algo, &trace);
    } catch (const PlanError& e) {
      outcome = e.failure();
    }
    state.blocked = std::move(trace.blocked);
    const Decision d = replan_decide(state, outcome, 0.0, scenario.planner.stability_window);
    row.plan_time_s = seconds_since(t0);
    row.success = d.kind == DecisionKind::Adopt;
    if (row.success) {
      const Path& p = *state.current_path;
      row.path_len_rad = p.cspace_length;
      row.neurons_on_path = p.neuron_ids.size();
      if (smoothing) {
        const auto t1 = Clock::now();
        const SmoothedTrajectory st = smooth_validated(p, net, state.blocked, scenario.planner.smoothing_degree,
                                                       scenario.planner.samples_per_hop);
        row.smooth_time_s = seconds_since(t1);
        row.path_len_rad = polyline_length(st.samples);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Rrt: return "rrt";
    case SamplerKind::RrtConnect: return "rrt_connect";
    case SamplerKind::Prm: return "prm";
  }
  return "unknown";
}

std::vector<BenchRow> bench_sampler(SamplerKind kind, const Scenario& scenario, std::size_t runs) {
  const VoxelSet occupied = voxelize_obstacles(scenario.obstacles, 0.0, scenario.grid);
  const CollisionChecker checker(scenario.model, scenario.grid, occupied);
  const Validity valid = [&](const JointConfig& q) { return checker(q); };
  std::vector<BenchRow> rows;
  for (std::size_t r = 0; r < runs; ++r) {
    SamplerParams p = scenario.sampler;
    p.seed = scenario.sampler.seed + r;
    const auto t0 = Clock::now();
    SamplerResult res;
    switch (kind) {
      case SamplerKind::Rrt: res = rrt(scenario.start, scenario.goal, valid, scenario.model.limits, p); break;
      case SamplerKind::RrtConnect: res = rrt_connect(scenario.start, scenario.goal, valid, scenario.model.limits, p); break;
      case SamplerKind::Prm: res = prm(scenario.start, scenario.goal, valid, scenario.model.limits, p); break;
    }
    BenchRow row;
    row.plan_time_s = seconds_since(t0);
    row.planner = to_string(kind);
    row.scenario = scenario.name;
    row.run = r;
    row.success = res.success;
    if (res.success) {
      row.path_len_rad = polyline_length(res.path);
      row.neurons_on_path = res.path.size();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cogmap
