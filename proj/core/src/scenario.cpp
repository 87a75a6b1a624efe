#include "cogmap/scenario.hpp"

#include <algorithm>
#include <set>

#include <yaml-cpp/yaml.h>

#include "cogmap/file_io.hpp"

namespace cogmap {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  throw ParseError(what, static_cast<std::size_t>(node.Mark().line + 1));
}

const YAML::Node require(const YAML::Node& map, const char* key) {
  const YAML::Node n = map[key];
  if (!n) fail(map, std::string("missing key '") + key + "'");
  return n;
}

void reject_unknown(const YAML::Node& map, std::initializer_list<std::string_view> allowed) {
  if (!map.IsMap()) fail(map, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(kv.first, "unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& n, const char* what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(n, std::string("invalid value for ") + what);
  }
}

template <typename T>
void optional(const YAML::Node& map, const char* key, T& out) {
  if (const YAML::Node n = map[key]) out = scalar<T>(n, key);
}

std::vector<double> numbers(const YAML::Node& n, const char* what) {
  if (!n.IsSequence()) fail(n, std::string(what) + " must be a list");
  std::vector<double> out;
  for (const auto& v : n) out.push_back(scalar<double>(v, what));
  return out;
}

JointConfig config(const YAML::Node& n, const char* what) {
  const auto v = numbers(n, what);
  return Eigen::Map<const JointConfig>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Point3 point(const YAML::Node& n, const char* what, int axes) {
  const auto v = numbers(n, what);
  if (static_cast<int>(v.size()) != axes) fail(n, std::string(what) + " needs " + std::to_string(axes) + " values");
  Point3 p = Point3::Zero();
  for (int k = 0; k < axes; ++k) p[k] = v[static_cast<std::size_t>(k)];
  return p;
}

RobotModel parse_robot(const YAML::Node& n) {
  reject_unknown(n, {"type", "lengths", "dh", "radius", "radii", "limits"});
  const auto type = scalar<std::string>(require(n, "type"), "robot.type");
  RobotModel model;
  if (type == "planar") {
    double radius = 0.0;
    optional(n, "radius", radius);
    model = RobotModel::planar(numbers(require(n, "lengths"), "robot.lengths"), radius);
  } else if (type == "spatial") {
    std::vector<DhParams> dh;
    for (const auto& row : require(n, "dh")) {
      reject_unknown(row, {"a", "alpha", "d", "theta"});
      DhParams p;
      optional(row, "a", p.a);
      optional(row, "alpha", p.alpha);
      optional(row, "d", p.d);
      optional(row, "theta", p.theta_offset);
      dh.push_back(p);
    }
    std::vector<double> radii;
    if (n["radii"]) {
      radii = numbers(n["radii"], "robot.radii");
    } else {
      double radius = 0.0;
      optional(n, "radius", radius);
      radii.assign(dh.size(), radius);
    }
    if (radii.size() != dh.size()) fail(n, "robot.radii must have one entry per joint");
    model = RobotModel::spatial(dh, radii);
  } else {
    fail(n["type"], "robot.type must be 'planar' or 'spatial'");
  }
  if (const YAML::Node lim = n["limits"]) {
    if (!lim.IsSequence() || lim.size() != model.joint_count()) fail(lim, "robot.limits needs one [min, max] per joint");
    for (std::size_t j = 0; j < lim.size(); ++j) {
      const auto pair = numbers(lim[j], "robot.limits");
      if (pair.size() != 2) fail(lim[j], "joint limit must be [min, max]");
      model.limits[j] = {pair[0], pair[1]};
    }
  }
  return model;
}

VoxelGrid parse_grid(const YAML::Node& n, int axes) {
  reject_unknown(n, {"origin", "resolution", "dims"});
  const Point3 origin = point(require(n, "origin"), "grid.origin", axes);
  const double res = scalar<double>(require(n, "resolution"), "grid.resolution");
  const auto dims = numbers(require(n, "dims"), "grid.dims");
  if (static_cast<int>(dims.size()) != axes) fail(n["dims"], "grid.dims needs " + std::to_string(axes) + " values");
  for (double d : dims) {
    if (d < 1 || d != static_cast<double>(static_cast<std::uint32_t>(d))) fail(n["dims"], "grid.dims must be positive integers");
  }
  if (axes == 2) {
    return VoxelGrid::planar(origin.x(), origin.y(), res, static_cast<std::uint32_t>(dims[0]),
                             static_cast<std::uint32_t>(dims[1]));
  }
  return VoxelGrid::spatial(origin, res, static_cast<std::uint32_t>(dims[0]), static_cast<std::uint32_t>(dims[1]),
                            static_cast<std::uint32_t>(dims[2]));
}

Obstacle parse_obstacle(const YAML::Node& n, int axes) {
  reject_unknown(n, {"id", "type", "center", "half_extents", "radius", "timeline"});
  Obstacle o;
  o.id = scalar<int>(require(n, "id"), "obstacle.id");
  const auto type = scalar<std::string>(require(n, "type"), "obstacle.type");
  // A timed obstacle may omit its center; it starts at the first keyframe.
  if (n["center"] || !n["timeline"]) o.center = point(require(n, "center"), "obstacle.center", axes);
  if (type == "box") {
    o.shape = ShapeKind::Box;
    o.half_extents = point(require(n, "half_extents"), "obstacle.half_extents", axes);
  } else if (type == "sphere") {
    o.shape = ShapeKind::Sphere;
    o.radius = scalar<double>(require(n, "radius"), "obstacle.radius");
  } else {
    fail(n["type"], "obstacle.type must be 'box' or 'sphere'");
  }
  if (const YAML::Node tl = n["timeline"]) {
    for (const auto& k : tl) {
      reject_unknown(k, {"t", "position"});
      o.timeline.push_back({scalar<double>(require(k, "t"), "timeline.t"), point(require(k, "position"), "timeline.position", axes)});
    }
    if (!n["center"] && !o.timeline.empty()) o.center = o.timeline.front().position;
  }
  return o;
}

TimedCommand parse_command(const YAML::Node& n, int axes) {
  reject_unknown(n, {"t", "action", "obstacle", "id", "position", "goal"});
  TimedCommand tc;
  tc.time = scalar<double>(require(n, "t"), "command.t");
  const auto action = scalar<std::string>(require(n, "action"), "command.action");
  if (action == "add_obstacle") {
    tc.command = AddObstacle{parse_obstacle(require(n, "obstacle"), axes)};
  } else if (action == "move_obstacle") {
    tc.command = MoveObstacle{scalar<int>(require(n, "id"), "command.id"), point(require(n, "position"), "command.position", axes)};
  } else if (action == "remove_obstacle") {
    tc.command = RemoveObstacle{scalar<int>(require(n, "id"), "command.id")};
  } else if (action == "set_goal") {
    tc.command = SetGoal{config(require(n, "goal"), "command.goal")};
  } else if (action == "pause") {
    tc.command = Pause{};
  } else if (action == "resume") {
    tc.command = Resume{};
  } else {
    fail(n["action"], "unknown command action '" + action + "'");
  }
  return tc;
}

PlannerConfig parse_planner(const YAML::Node& n) {
  reject_unknown(n, {"algorithm", "smoothing_degree", "samples_per_hop", "replan_period", "stability_window", "joint_speed"});
  PlannerConfig c;
  if (n["algorithm"]) {
    try {
      c.algorithm = parse_search_algorithm(scalar<std::string>(n["algorithm"], "planner.algorithm"));
    } catch (const std::invalid_argument& e) {
      fail(n["algorithm"], e.what());
    }
  }
  optional(n, "smoothing_degree", c.smoothing_degree);
  optional(n, "samples_per_hop", c.samples_per_hop);
  optional(n, "replan_period", c.replan_period);
  optional(n, "stability_window", c.stability_window);
  optional(n, "joint_speed", c.joint_speed);
  return c;
}

SamplerParams parse_sampler(const YAML::Node& n) {
  reject_unknown(n, {"step_size", "goal_bias", "max_iterations", "prm_samples", "prm_k", "seed"});
  SamplerParams p;
  optional(n, "step_size", p.step_size);
  optional(n, "goal_bias", p.goal_bias);
  optional(n, "max_iterations", p.max_iterations);
  optional(n, "prm_samples", p.prm_samples);
  optional(n, "prm_k", p.prm_k);
  optional(n, "seed", p.seed);
  return p;
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line + 1));
  }
}

}  // namespace

void Scenario::validate() const {
  model.validate();
  grid.validate();
  obstacles.validate();
  planner.validate();
  sampler.validate();
  if ((model.mode == RobotMode::Planar) != (grid.axes == 2)) throw std::invalid_argument("grid axes do not match robot");
  const double r = model.reach();
  if (!grid.covers(Point3(-r, -r, -r), Point3(r, r, r))) throw std::invalid_argument("grid does not cover the robot's reach");
  const auto dof = static_cast<Eigen::Index>(model.joint_count());
  if (start.size() != dof || goal.size() != dof) throw std::invalid_argument("start/goal dimension differs from robot");
  if (!model.within_limits(start) || !model.within_limits(goal)) throw std::invalid_argument("start/goal outside joint limits");
  for (const auto& r : regions) r.validate(model.joint_count());
  if (!(duration > 0.0) || !(dt > 0.0)) throw std::invalid_argument("replay duration and dt must be positive");
}

Scenario parse_scenario(std::string_view yaml) {
  const YAML::Node root = load_yaml(yaml);
  reject_unknown(root, {"name", "robot", "grid", "obstacles", "start", "goal", "regions", "planner", "sampler",
                        "commands", "replay", "datagen"});
  Scenario s;
  optional(root, "name", s.name);
  s.model = parse_robot(require(root, "robot"));
  const int axes = s.model.mode == RobotMode::Planar ? 2 : 3;
  s.grid = parse_grid(require(root, "grid"), axes);
  if (const YAML::Node obs = root["obstacles"]) {
    for (const auto& o : obs) s.obstacles.obstacles.push_back(parse_obstacle(o, axes));
  }
  s.start = config(require(root, "start"), "start");
  s.goal = config(require(root, "goal"), "goal");
  if (const YAML::Node regions = root["regions"]) {
    for (const auto& r : regions) {
      reject_unknown(r, {"lo", "hi"});
      s.regions.push_back({config(require(r, "lo"), "region.lo"), config(require(r, "hi"), "region.hi")});
    }
  }
  if (root["planner"]) s.planner = parse_planner(root["planner"]);
  if (root["sampler"]) s.sampler = parse_sampler(root["sampler"]);
  if (const YAML::Node cmds = root["commands"]) {
    for (const auto& c : cmds) s.commands.push_back(parse_command(c, axes));
    std::stable_sort(s.commands.begin(), s.commands.end(),
                     [](const TimedCommand& a, const TimedCommand& b) { return a.time < b.time; });
  }
  if (const YAML::Node replay = root["replay"]) {
    reject_unknown(replay, {"duration", "dt"});
    optional(replay, "duration", s.duration);
    optional(replay, "dt", s.dt);
  }
  if (const YAML::Node dg = root["datagen"]) {
    reject_unknown(dg, {"trajectories", "seed"});
    optional(dg, "trajectories", s.datagen_trajectories);
    optional(dg, "seed", s.datagen_seed);
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path));
}

NetworkKind parse_network_kind(const std::string& name) {
  if (name == "som") return NetworkKind::Som;
  if (name == "gamma_som") return NetworkKind::GammaSom;
  if (name == "gng") return NetworkKind::Gng;
  throw std::invalid_argument("unknown network kind '" + name + "'");
}

TrainConfig parse_train_config(std::string_view yaml) {
  const YAML::Node root = load_yaml(yaml);
  reject_unknown(root, {"kind", "dataset", "output", "seed", "params"});
  TrainConfig c;
  try {
    c.kind = parse_network_kind(scalar<std::string>(require(root, "kind"), "kind"));
  } catch (const std::invalid_argument& e) {
    fail(root["kind"], e.what());
  }
  c.dataset = scalar<std::string>(require(root, "dataset"), "dataset");
  if (root["output"]) c.output = scalar<std::string>(root["output"], "output");
  optional(root, "seed", c.seed);
  if (const YAML::Node p = root["params"]) {
    reject_unknown(p, {"target_neurons", "rows", "cols", "iterations", "lr_initial", "lr_final", "radius_initial",
                       "radius_final", "eps_b", "eps_n", "lambda", "max_edge_age", "alpha", "decay", "context_depth",
                       "context_beta", "context_weight"});
    auto& t = c.params;
    optional(p, "target_neurons", t.target_neurons);
    optional(p, "rows", t.rows);
    optional(p, "cols", t.cols);
    optional(p, "iterations", t.iterations);
    optional(p, "lr_initial", t.lr_initial);
    optional(p, "lr_final", t.lr_final);
    optional(p, "radius_initial", t.radius_initial);
    optional(p, "radius_final", t.radius_final);
    optional(p, "eps_b", t.eps_b);
    optional(p, "eps_n", t.eps_n);
    optional(p, "lambda", t.lambda);
    optional(p, "max_edge_age", t.max_edge_age);
    optional(p, "alpha", t.alpha);
    optional(p, "decay", t.decay);
    optional(p, "context_depth", t.context_depth);
    optional(p, "context_beta", t.context_beta);
    optional(p, "context_weight", t.context_weight);
    if (!p["target_neurons"] && t.rows > 0 && t.cols > 0) t.target_neurons = t.rows * t.cols;
  }
  c.params.validate(c.kind);
  return c;
}

TrainConfig load_train_config(const std::filesystem::path& path) {
  TrainConfig c = parse_train_config(read_text_file(path));
  const auto base = path.parent_path();
  if (c.dataset.is_relative()) c.dataset = base / c.dataset;
  if (!c.output.empty() && c.output.is_relative()) c.output = base / c.output;
  return c;
}

}  // namespace cogmap
