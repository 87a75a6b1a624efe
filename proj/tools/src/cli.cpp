#include "cogmap_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "cogmap/bench.hpp"
#include "cogmap/bitmap.hpp"
#include "cogmap/datagen.hpp"
#include "cogmap/file_io.hpp"
#include "cogmap/live.hpp"
#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/planner.hpp"
#include "cogmap/protocol.hpp"
#include "cogmap/scenario.hpp"
#include "cogmap/server.hpp"
#include "cogmap/training.hpp"

namespace cogmap::cli {

namespace {

/// Input that could not be loaded or does not fit together.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto load(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

JointConfig parse_config_arg(const std::string& text, std::size_t dof) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) throw std::invalid_argument("bad joint value '" + item + "'");
  }
  if (v.size() != dof) {
    throw std::invalid_argument("expected " + std::to_string(dof) + " comma-separated joint values, got '" + text + "'");
  }
  return Eigen::Map<const JointConfig>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Artifacts {
  Scenario scenario;
  Network net;
  LookupTable lut;
};

Artifacts load_artifacts(const std::string& network, const std::string& lut, const std::string& scenario) {
  Artifacts a;
  a.scenario = load("scenario " + scenario, [&] { return load_scenario(scenario); });
  a.net = load("network " + network, [&] { return load_network(network); });
  a.lut = load("lookup table " + lut, [&] { return load_lookup(lut); });
  load("lookup table " + lut, [&] {
    a.lut.require_network(a.net);
    if (!(a.lut.grid() == a.scenario.grid)) throw std::runtime_error("grid differs from the scenario grid");
    return 0;
  });
  if (a.net.dim() != a.scenario.model.joint_count()) throw InputError("network dimension differs from scenario robot");
  return a;
}

// ---- train ---------------------------------------------------------------

int cmd_train(const std::string& config_path, std::string output, std::optional<std::uint64_t> seed,
              std::ostream& out) {
  const TrainConfig cfg = load("config " + config_path, [&] { return load_train_config(config_path); });
  if (output.empty()) output = cfg.output.string();
  if (output.empty()) throw std::invalid_argument("no output path: pass --output or set 'output' in the config");
  const Dataset data = load("dataset " + cfg.dataset.string(), [&] { return load_dataset(cfg.dataset); });
  const std::uint64_t s = seed.value_or(cfg.seed);
  Network net;
  GngReport report;
  switch (cfg.kind) {
    case NetworkKind::Som: net = train_som(data, cfg.params, s); break;
    case NetworkKind::GammaSom: net = train_gamma_som(data, cfg.params, s); break;
    case NetworkKind::Gng: net = train_gng(data, cfg.params, s, &report); break;
  }
  save_network(net, output);
  out << "kind=" << to_string(net.kind()) << " neurons=" << net.size() << " edges=" << net.edges().size()
      << " quantization_error=" << quantization_error(net, data) << " samples=" << data.sample_count();
  if (cfg.kind == NetworkKind::Gng) out << " pruned_isolated=" << report.pruned_isolated;
  out << " output=" << output << '\n';
  return kOk;
}

// ---- datagen -------------------------------------------------------------

int cmd_datagen(const std::string& scenario_path, const std::string& output, std::optional<std::size_t> n,
                std::optional<std::uint64_t> seed, std::ostream& out) {
  const Scenario sc = load("scenario " + scenario_path, [&] { return load_scenario(scenario_path); });
  if (sc.regions.empty()) throw InputError("scenario " + scenario_path + " defines no regions");
  DatagenParams params;
  params.sampler = sc.sampler;
  params.threads = std::max(1u, std::thread::hardware_concurrency());
  const Dataset data =
      generate_pick_place(sc.model, sc.regions, n.value_or(sc.datagen_trajectories), seed.value_or(sc.datagen_seed), params);
  save_dataset(data, output);
  out << "trajectories=" << data.trajectories.size() << " samples=" << data.sample_count() << " output=" << output
      << '\n';
  return kOk;
}

// ---- build-lut -----------------------------------------------------------

int cmd_build_lut(const std::string& network, const std::string& scenario_path, const std::string& output,
                  std::ostream& out, std::ostream& err) {
  const Scenario sc = load("scenario " + scenario_path, [&] { return load_scenario(scenario_path); });
  const Network net = load("network " + network, [&] { return load_network(network); });
  BuildReport report;
  const LookupTable lut = load("lookup build", [&] { return build_lookup(net, sc.model, sc.grid, &report); });
  if (!lut.is_consistent()) {
    err << "error: forward and inverse tables disagree\n";
    return kIoError;
  }
  save_lookup(lut, output);
  out << "neurons=" << lut.neuron_count() << " voxels=" << lut.voxel_count() << " entries=" << lut.entry_count()
      << " consistent=yes out_of_limits=" << report.out_of_limits.size() << " output=" << output << '\n';
  // Neurons covering each voxel, bucketed by decade.
  const std::vector<std::pair<std::size_t, std::size_t>> bins{{0, 0}, {1, 9}, {10, 99}, {100, 999}, {1000, SIZE_MAX}};
  std::vector<std::size_t> counts(bins.size(), 0);
  for (VoxelId v = 0; v < lut.voxel_count(); ++v) {
    const std::size_t k = lut.inverse(v).size();
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (k >= bins[b].first && k <= bins[b].second) ++counts[b];
    }
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    out << "coverage neurons_per_voxel=" << bins[b].first << "-";
    if (bins[b].second == SIZE_MAX) out << "inf";
    else out << bins[b].second;
    out << " voxels=" << counts[b] << '\n';
  }
  return kOk;
}

// ---- plan ----------------------------------------------------------------

struct PlanOptions {
  std::string network, lut, scenario, output, start, goal, algo;
  bool smooth = true;
  std::size_t repeat = 1;
};

int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  const Artifacts a = load_artifacts(o.network, o.lut, o.scenario);
  const auto dof = a.scenario.model.joint_count();
  const JointConfig start = o.start.empty() ? a.scenario.start : parse_config_arg(o.start, dof);
  const JointConfig goal = o.goal.empty() ? a.scenario.goal : parse_config_arg(o.goal, dof);
  const SearchAlgorithm algo = o.algo.empty() ? a.scenario.planner.algorithm : parse_search_algorithm(o.algo);
  const VoxelSet occupied = voxelize_obstacles(a.scenario.obstacles, 0.0, a.lut.grid());

  using Clock = std::chrono::steady_clock;
  std::vector<double> times;
  Path path;
  PlanTrace trace;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, o.repeat); ++r) {
    const auto t0 = Clock::now();
    try {
      path = plan(a.net, a.lut, a.scenario.model, start, goal, occupied, algo, &trace);
    } catch (const PlanError& e) {
      out << "status=" << to_string(e.failure()) << '\n';
      err << "error: planning failed: " << to_string(e.failure()) << '\n';
      return e.failure() == PlanFailure::Unreachable ? kPlanFailure : kBlockedEndpoint;
    }
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  SmoothedTrajectory traj;
  double smooth_time = 0.0;
  if (o.smooth) {
    const auto t0 = Clock::now();
    traj = smooth_validated(path, a.net, trace.blocked, a.scenario.planner.smoothing_degree,
                            a.scenario.planner.samples_per_hop);
    smooth_time = std::chrono::duration<double>(Clock::now() - t0).count();
  } else {
    traj.samples = path.configs;
    traj.source = path;
  }
  const bool clear = trajectory_clear(a.scenario.model.with_radius(0.0), a.lut.grid(), occupied, traj.samples);
  const MeanStd t = mean_std(times);
  out << "status=ok algorithm=" << to_string(algo) << " bmu_start=" << trace.bmu_start << " bmu_goal=" << trace.bmu_goal
      << " blocked=" << trace.blocked.size() << " neurons_on_path=" << path.neuron_ids.size()
      << " hops=" << path.hop_count() << " cspace_length=" << path.cspace_length
      << " smoothing_degree=" << traj.degree << " samples=" << traj.samples.size()
      << " smooth_time_s=" << smooth_time << " collision_free=" << (clear ? "yes" : "no") << '\n';
  char buf[128];
  std::snprintf(buf, sizeof buf, "plan_time_s mean=%.6g std=%.6g\n", t.mean, t.std);
  out << buf;
  if (!o.output.empty()) {
    nlohmann::json j{{"algorithm", to_string(algo)},
                     {"neuron_ids", path.neuron_ids},
                     {"cspace_length", path.cspace_length},
                     {"smoothing_degree", traj.degree},
                     {"configs", nlohmann::json::array()},
                     {"samples", nlohmann::json::array()}};
    for (const auto& q : path.configs) j["configs"].push_back(std::vector<double>(q.data(), q.data() + q.size()));
    for (const auto& q : traj.samples) j["samples"].push_back(std::vector<double>(q.data(), q.data() + q.size()));
    write_file_atomic(o.output, j.dump(1) + "\n");
  }
  return kOk;
}

// ---- bench ---------------------------------------------------------------

int cmd_bench(const std::string& suite_path, const std::string& csv_path, std::optional<std::size_t> runs_override,
              std::ostream& out) {
  const std::filesystem::path suite_file(suite_path);
  const auto base = suite_file.parent_path();
  YAML::Node suite;
  try {
    suite = YAML::LoadFile(suite_path);
  } catch (const YAML::BadFile&) {
    throw InputError("cannot open suite " + suite_path);
  } catch (const YAML::Exception& e) {
    throw InputError("suite " + suite_path + ": " + e.what());
  }
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_relative() ? (base / path).string() : path.string();
  };
  std::size_t runs = 20;
  std::vector<std::string> planners{"gng_dijkstra", "prm", "rrt", "rrt_connect"};
  bool smoothing = true;
  try {
    if (suite["runs"]) runs = suite["runs"].as<std::size_t>();
    if (suite["planners"]) planners = suite["planners"].as<std::vector<std::string>>();
    if (suite["smoothing"]) smoothing = suite["smoothing"].as<bool>();
    if (!suite["scenarios"] || !suite["scenarios"].IsSequence()) throw std::runtime_error("missing 'scenarios' list");
  } catch (const std::exception& e) {
    throw InputError("suite " + suite_path + ": " + e.what());
  }
  if (runs_override) runs = *runs_override;

  std::vector<BenchRow> rows;
  for (const auto& entry : suite["scenarios"]) {
    const std::string sc_path = resolve(entry["scenario"].as<std::string>());
    std::optional<Artifacts> a;
    const bool needs_map = std::any_of(planners.begin(), planners.end(), [](const std::string& p) { return p.rfind("gng_", 0) == 0; });
    Scenario sc;
    if (needs_map) {
      if (!entry["network"] || !entry["lut"]) throw InputError("suite entry " + sc_path + " needs network and lut");
      a = load_artifacts(resolve(entry["network"].as<std::string>()), resolve(entry["lut"].as<std::string>()), sc_path);
      sc = a->scenario;
    } else {
      sc = load("scenario " + sc_path, [&] { return load_scenario(sc_path); });
    }
    for (const auto& p : planners) {
      std::vector<BenchRow> r;
      if (p == "gng_dijkstra") r = bench_cognitive(a->net, a->lut, sc, SearchAlgorithm::Dijkstra, smoothing, runs);
      else if (p == "gng_wavefront") r = bench_cognitive(a->net, a->lut, sc, SearchAlgorithm::Wavefront, smoothing, runs);
      else if (p == "rrt") r = bench_sampler(SamplerKind::Rrt, sc, runs);
      else if (p == "rrt_connect") r = bench_sampler(SamplerKind::RrtConnect, sc, runs);
      else if (p == "prm") r = bench_sampler(SamplerKind::Prm, sc, runs);
      else throw InputError("unknown planner '" + p + "' in suite");
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  out << format_summary_table(summarize(rows));
  if (!csv_path.empty()) {
    write_file_atomic(csv_path, format_bench_csv(rows));
    out << "csv=" << csv_path << '\n';
  }
  return kOk;
}

// ---- bitmap --------------------------------------------------------------

int cmd_bitmap(const std::string& network, const std::string& lut_path, const std::string& scenario_path,
               const std::string& path_file, double time, const std::string& output, std::ostream& out) {
  const Network net = load("network " + network, [&] { return load_network(network); });
  BlockedSet blocked(net.size());
  if (!lut_path.empty() || !scenario_path.empty()) {
    if (lut_path.empty() || scenario_path.empty()) throw std::invalid_argument("--lut and --scenario go together");
    const Artifacts a = load_artifacts(network, lut_path, scenario_path);
    blocked = blocked_neurons(a.lut, voxelize_obstacles(a.scenario.obstacles, time, a.lut.grid()));
  }
  std::vector<NeuronId> path;
  if (!path_file.empty()) {
    path = load("path " + path_file, [&] {
      return nlohmann::json::parse(read_text_file(path_file)).at("neuron_ids").get<std::vector<NeuronId>>();
    });
    for (NeuronId n : path) {
      if (n >= net.size()) throw InputError("path " + path_file + " references neuron " + std::to_string(n));
    }
  }
  const Image img = render_bitmap(net, blocked, path);
  write_file_atomic(output, encode_ppm(img));
  out << "width=" << img.width << " height=" << img.height << " blocked=" << img.count(kBlockedColor)
      << " path=" << img.count(kPathColor) + img.count(kEndpointColor) << " output=" << output << '\n';
  return kOk;
}

// ---- replay / serve ------------------------------------------------------

int cmd_replay(const std::string& network, const std::string& lut, const std::string& scenario_path,
               const std::string& log_path, std::optional<double> duration, std::optional<double> dt,
               std::ostream& out) {
  const Artifacts a = load_artifacts(network, lut, scenario_path);
  const Scenario& sc = a.scenario;
  LiveSimulator sim(a.net, a.lut, sc.model, sc.planner, sc.obstacles, sc.start, sc.goal);
  const auto events = run_headless(sim, sc.commands, duration.value_or(sc.duration), dt.value_or(sc.dt));
  std::string log;
  for (const auto& e : events) log += format_event(e) + '\n';
  out << log;
  if (!log_path.empty()) write_file_atomic(log_path, log);
  return kOk;
}

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

int cmd_serve(const std::string& network, const std::string& lut, const std::string& scenario_path,
              std::optional<int> port, std::optional<double> duration, std::ostream& out) {
  const Artifacts a = load_artifacts(network, lut, scenario_path);
  const Scenario& sc = a.scenario;
  LiveSimulator sim(a.net, a.lut, sc.model, sc.planner, sc.obstacles, sc.start, sc.goal);
  ServerOptions opts;
  opts.port = port ? static_cast<std::uint16_t>(*port) : resolve_port();
  LiveServer server(sim, opts);
  out << "listening port=" << server.port() << std::endl;
  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::jthread timer;
  if (duration) {
    timer = std::jthread([d = *duration](std::stop_token st) {
      const auto until = std::chrono::steady_clock::now() + std::chrono::duration<double>(d);
      while (!st.stop_requested() && !g_stop.load() && std::chrono::steady_clock::now() < until) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
      g_stop.store(true);
    });
  }
  server.run(g_stop);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cognitive-map motion planning: train, build lookup tables, plan, benchmark, replay"};
  app.require_subcommand(1);

  std::string config, output, network, lut, scenario, path_file, log_path, csv, suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trajectories, runs;
  std::optional<double> duration, dt;
  std::optional<int> port;
  double time = 0.0;
  bool headless = false;
  PlanOptions plan_opts;

  auto* train = app.add_subcommand("train", "Train a SOM, gamma-SOM or GNG from a config file");
  train->add_option("--config", config, "Training config (YAML)")->required();
  train->add_option("--output,-o", output, "Network file (overrides the config)");
  train->add_option("--seed", seed, "Override the config seed");

  auto* datagen = app.add_subcommand("datagen", "Generate pick-and-place training trajectories");
  datagen->add_option("--scenario", scenario, "Scenario with regions")->required();
  datagen->add_option("--output,-o", output, "Dataset file")->required();
  datagen->add_option("--trajectories,-n", trajectories, "Trajectory count (default from scenario)");
  datagen->add_option("--seed", seed, "Master seed (default from scenario)");

  auto* build = app.add_subcommand("build-lut", "Build the voxel/neuron lookup table");
  build->add_option("--network", network, "Network file")->required();
  build->add_option("--scenario", scenario, "Scenario (robot and grid)")->required();
  build->add_option("--output,-o", output, "Lookup table file")->required();

  auto* plan_cmd = app.add_subcommand("plan", "Plan one query over the cognitive map");
  plan_cmd->add_option("--network", plan_opts.network, "Network file")->required();
  plan_cmd->add_option("--lut", plan_opts.lut, "Lookup table file")->required();
  plan_cmd->add_option("--scenario", plan_opts.scenario, "Scenario file")->required();
  plan_cmd->add_option("--start", plan_opts.start, "Comma-separated start config (default from scenario)");
  plan_cmd->add_option("--goal", plan_opts.goal, "Comma-separated goal config (default from scenario)");
  plan_cmd->add_option("--algo", plan_opts.algo, "wavefront or dijkstra (default from scenario)")
      ->check(CLI::IsMember({"wavefront", "dijkstra"}));
  plan_cmd->add_flag("--smooth,!--no-smooth", plan_opts.smooth, "Smooth and validate the path (default on)");
  plan_cmd->add_option("--repeat", plan_opts.repeat, "Repeat the query and report timing statistics")
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--output,-o", plan_opts.output, "Write the path as JSON");

  auto* bench = app.add_subcommand("bench", "Run the planner comparison suite");
  bench->add_option("--suite", suite, "Suite file (YAML)")->required();
  bench->add_option("--csv", csv, "Per-run CSV output");
  bench->add_option("--runs", runs, "Override the run count");

  auto* bitmap = app.add_subcommand("bitmap", "Render the cognitive map as a PPM image");
  bitmap->add_option("--network", network, "Network file")->required();
  bitmap->add_option("--lut", lut, "Lookup table (with --scenario: blocked neurons from its obstacles)");
  bitmap->add_option("--scenario", scenario, "Scenario providing obstacles");
  bitmap->add_option("--time", time, "Obstacle timeline time, seconds");
  bitmap->add_option("--path", path_file, "Path JSON written by 'plan --output'");
  bitmap->add_option("--output,-o", output, "Image file")->required();

  auto* replay = app.add_subcommand("replay", "Run a scenario's obstacle timeline headlessly");
  replay->add_option("--network", network, "Network file")->required();
  replay->add_option("--lut", lut, "Lookup table file")->required();
  replay->add_option("--scenario", scenario, "Scenario with timeline")->required();
  replay->add_option("--log", log_path, "Also write the event log here");
  replay->add_option("--duration", duration, "Seconds to simulate (default from scenario)");
  replay->add_option("--dt", dt, "Tick length (default from scenario)");

  auto* serve = app.add_subcommand("serve", "Serve the live wire protocol");
  serve->add_option("--network", network, "Network file")->required();
  serve->add_option("--lut", lut, "Lookup table file")->required();
  serve->add_option("--scenario", scenario, "Scenario file")->required();
  serve->add_option("--port", port, "TCP port (default $COGMAP_PORT or 7878)")->check(CLI::Range(0, 65535));
  serve->add_option("--duration", duration, "Stop after this many seconds");
  serve->add_flag("--headless", headless, "Run the scripted timeline without a listener");
  serve->add_option("--log", log_path, "Event log for --headless");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train) return cmd_train(config, output, seed, out);
    if (*datagen) return cmd_datagen(scenario, output, trajectories, seed, out);
    if (*build) return cmd_build_lut(network, scenario, output, out, err);
    if (*plan_cmd) return cmd_plan(plan_opts, out, err);
    if (*bench) return cmd_bench(suite, csv, runs, out);
    if (*bitmap) return cmd_bitmap(network, lut, scenario, path_file, time, output, out);
    if (*replay) return cmd_replay(network, lut, scenario, log_path, duration, dt, out);
    if (*serve) {
      if (headless) return cmd_replay(network, lut, scenario, log_path, duration, std::nullopt, out);
      return cmd_serve(network, lut, scenario, port, duration, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace cogmap::cli
