#include "cogmap/live.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cogmap {

const char* to_string(LiveEvent::Kind kind) {
  switch (kind) {
    case LiveEvent::Kind::Decision: return "decision";
    case LiveEvent::Kind::Command: return "command";
    case LiveEvent::Kind::Error: return "error";
  }
  return "unknown";
}

std::string format_event(const LiveEvent& e) {
  char head[64];
  std::snprintf(head, sizeof head, "t=%.3f %s", e.time, to_string(e.kind));
  std::string line = head;
  if (e.kind == LiveEvent::Kind::Decision) {
    line += std::string(" ") + to_string(e.decision.kind) + " reason=" + to_string(e.decision.reason);
    if (e.decision.kind == DecisionKind::Adopt) {
      char tail[96];
      std::snprintf(tail, sizeof tail, " hops=%zu length=%.6f degree=%d", e.hops, e.length, e.smoothing_degree);
      line += tail;
    }
  } else {
    line += " " + e.message;
  }
  return line;
}

namespace {

// Replan boundaries are compared with this slack so accumulated dt rounding
// does not skip a cycle.
constexpr double kTimeSlack = 1e-9;

Path suffix(const Path& p, std::size_t from) {
  Path out;
  out.neuron_ids.assign(p.neuron_ids.begin() + static_cast<std::ptrdiff_t>(from), p.neuron_ids.end());
  out.configs.assign(p.configs.begin() + static_cast<std::ptrdiff_t>(from), p.configs.end());
  out.cspace_length = polyline_length(out.configs);
  return out;
}

}  // namespace

LiveSimulator::LiveSimulator(const Network& net, const LookupTable& lut, RobotModel model, PlannerConfig config,
                             ObstacleSet obstacles, const JointConfig& start, const JointConfig& goal)
    : net_(net), lut_(lut), model_(std::move(model)), config_(config) {
  config_.validate();
  obstacles.validate();
  lut_.require_network(net_);
  const auto dof = static_cast<Eigen::Index>(net_.dim());
  if (start.size() != dof || goal.size() != dof) throw std::invalid_argument("start/goal dimension differs from network");
  state_.robot_config = start;
  state_.goal = goal;
  state_.obstacles = std::move(obstacles);
  state_.replan.blocked = BlockedSet(net_.size());
}

VoxelSet LiveSimulator::current_occupied() const {
  return voxelize_obstacles(state_.obstacles, state_.time, lut_.grid());
}

void LiveSimulator::enqueue(Command command) {
  std::lock_guard lock(queue_mutex_);
  queue_.push_back(std::move(command));
}

LiveEvent LiveSimulator::apply_command(const Command& command) {
  LiveEvent ev;
  ev.time = state_.time;
  ev.kind = LiveEvent::Kind::Command;
  auto error = [&](std::string msg) {
    ev.kind = LiveEvent::Kind::Error;
    ev.message = std::move(msg);
    return ev;
  };
  auto& obs = state_.obstacles;

  if (const auto* add = std::get_if<AddObstacle>(&command)) {
    if (obs.find(add->obstacle.id)) return error("add_obstacle: id " + std::to_string(add->obstacle.id) + " exists");
    ObstacleSet next = obs;
    next.obstacles.push_back(add->obstacle);
    try {
      next.validate();
    } catch (const std::invalid_argument& e) {
      return error(std::string("add_obstacle: ") + e.what());
    }
    obs = std::move(next);
    ev.message = "add_obstacle id=" + std::to_string(add->obstacle.id);
  } else if (const auto* mv = std::get_if<MoveObstacle>(&command)) {
    Obstacle* o = obs.find(mv->id);
    if (!o) return error("move_obstacle: unknown id " + std::to_string(mv->id));
    o->center = mv->position;
    o->timeline.clear();
    ev.message = "move_obstacle id=" + std::to_string(mv->id);
  } else if (const auto* rm = std::get_if<RemoveObstacle>(&command)) {
    auto it = std::find_if(obs.obstacles.begin(), obs.obstacles.end(), [&](const Obstacle& o) { return o.id == rm->id; });
    if (it == obs.obstacles.end()) return error("remove_obstacle: unknown id " + std::to_string(rm->id));
    obs.obstacles.erase(it);
    ev.message = "remove_obstacle id=" + std::to_string(rm->id);
  } else if (const auto* sg = std::get_if<SetGoal>(&command)) {
    if (sg->goal.size() != static_cast<Eigen::Index>(net_.dim())) return error("set_goal: wrong dimension");
    if (!model_.within_limits(sg->goal)) return error("set_goal: outside joint limits");
    state_.goal = sg->goal;
    state_.goal_changed = true;
    ev.message = "set_goal";
  } else if (std::holds_alternative<Pause>(command)) {
    state_.paused = true;
    ev.message = "pause";
  } else {
    state_.paused = false;
    ev.message = "resume";
  }
  return ev;
}

void LiveSimulator::advance(double dt) {
  auto& s = state_;
  if (s.paused || s.trajectory.empty()) return;
  double budget = s.travel_budget + config_.joint_speed * dt;
  while (s.trajectory_cursor + 1 < s.trajectory.size()) {
    const double step = (s.trajectory[s.trajectory_cursor + 1] - s.trajectory[s.trajectory_cursor]).norm();
    if (step > budget) break;
    budget -= step;
    ++s.trajectory_cursor;
  }
  s.travel_budget = s.trajectory_cursor + 1 < s.trajectory.size() ? budget : 0.0;
  s.robot_config = s.trajectory[s.trajectory_cursor];
}

LiveEvent LiveSimulator::replan_cycle() {
  auto& s = state_;
  auto& rp = s.replan;
  s.occupied = current_occupied();
  rp.blocked = blocked_neurons(lut_, s.occupied);

  if (s.goal_changed) {
    rp.current_path.reset();
    rp.current_smoothed.reset();
    rp.candidate_shorter_since.reset();
    s.trajectory.clear();
    s.trajectory_hops.clear();
    s.trajectory_cursor = 0;
    s.goal_changed = false;
  }

  // Start from the current path node the robot has reached, so an unchanged
  // world reproduces the remaining path; otherwise from the robot's BMU.
  std::optional<NeuronId> start;
  if (rp.current_path && !s.trajectory.empty()) {
    const std::size_t hops = rp.current_path->hop_count();
    const auto j = std::min(hops, static_cast<std::size_t>(std::floor(s.trajectory_hops[s.trajectory_cursor] + 1e-9)));
    if (j > 0) {
      rp.current_path = suffix(*rp.current_path, j);
      for (double& h : s.trajectory_hops) h -= static_cast<double>(j);
    }
    if (!rp.blocked.contains(rp.current_path->neuron_ids.front())) start = rp.current_path->neuron_ids.front();
  }
  if (!start) start = best_matching_unit(net_, s.robot_config);
  rp.bmu_start = *start;
  rp.bmu_goal = best_matching_unit(net_, s.goal);

  SearchOutcome outcome = PlanFailure::Unreachable;
  try {
    outcome = search(config_.algorithm, net_, rp.bmu_start, rp.bmu_goal, rp.blocked);
  } catch (const PlanError& e) {
    outcome = e.failure();
  }

  LiveEvent ev;
  ev.time = s.time;
  ev.kind = LiveEvent::Kind::Decision;
  ev.decision = replan_decide(rp, outcome, s.time, config_.stability_window);

  if (ev.decision.kind == DecisionKind::Adopt) {
    const Path& path = *rp.current_path;
    SmoothedTrajectory st = smooth_validated(path, net_, rp.blocked, config_.smoothing_degree, config_.samples_per_hop);
    s.trajectory.clear();
    s.trajectory_hops.clear();
    if (st.samples.empty() || st.samples.front() != s.robot_config) {
      s.trajectory.push_back(s.robot_config);
      s.trajectory_hops.push_back(0.0);
    }
    for (std::size_t k = 0; k < st.samples.size(); ++k) {
      s.trajectory.push_back(st.samples[k]);
      s.trajectory_hops.push_back(static_cast<double>(k) / st.samples_per_hop);
    }
    s.trajectory_cursor = 0;
    s.travel_budget = 0.0;
    ev.hops = path.hop_count();
    ev.length = path.cspace_length;
    ev.smoothing_degree = st.degree;
    rp.current_smoothed = std::move(st);
  } else if (ev.decision.kind == DecisionKind::Fail && !rp.current_path) {
    // Nothing valid to follow: hold position.
    s.trajectory.clear();
    s.trajectory_hops.clear();
    s.trajectory_cursor = 0;
    s.travel_budget = 0.0;
  }
  s.last_decision = ev;
  return ev;
}

std::vector<LiveEvent> LiveSimulator::tick(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("tick dt must be positive");
  std::vector<LiveEvent> events;
  std::deque<Command> pending;
  {
    std::lock_guard lock(queue_mutex_);
    pending.swap(queue_);
  }
  for (const auto& c : pending) events.push_back(apply_command(c));

  state_.time += dt;
  advance(dt);
  if (state_.time + kTimeSlack >= state_.next_replan) {
    events.push_back(replan_cycle());
    while (state_.next_replan <= state_.time + kTimeSlack) state_.next_replan += config_.replan_period;
  }
  return events;
}

std::vector<LiveEvent> run_headless(LiveSimulator& sim, const std::vector<TimedCommand>& script, double duration,
                                    double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  std::vector<LiveEvent> log;
  std::size_t next = 0;
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  for (std::size_t i = 0; i < steps; ++i) {
    while (next < script.size() && script[next].time <= sim.state().time + kTimeSlack) {
      log.push_back(sim.apply_command(script[next].command));
      ++next;
    }
    auto events = sim.tick(dt);
    log.insert(log.end(), events.begin(), events.end());
  }
  return log;
}

}  // namespace cogmap
