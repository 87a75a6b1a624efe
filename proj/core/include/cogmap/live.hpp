#pragma once

#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cogmap/commands.hpp"
#include "cogmap/kinematics.hpp"
#include "cogmap/lookup_table.hpp"
#include "cogmap/network.hpp"
#include "cogmap/obstacles.hpp"
#include "cogmap/planner.hpp"
#include "cogmap/replan.hpp"

namespace cogmap {

struct LiveEvent {
  enum class Kind { Decision, Command, Error };

  double time = 0.0;
  Kind kind = Kind::Decision;
  Decision decision;
  std::size_t hops = 0;          ///< adopted path, Decision/Adopt only
  double length = 0.0;           ///< adopted path C-space length
  int smoothing_degree = 0;      ///< adopted trajectory
  std::string message;           ///< Command/Error detail
};

const char* to_string(LiveEvent::Kind kind);

/// One line of the replay log, e.g.
/// `t=0.300 decision adopt reason=no_previous hops=12 length=3.141593 degree=3`.
std::string format_event(const LiveEvent& event);

struct WorldState {
  double time = 0.0;
  JointConfig robot_config;
  JointConfig goal;
  ObstacleSet obstacles;
  VoxelSet occupied;  ///< as of the last replan cycle
  ReplanState replan;
  /// Active trajectory: the robot's config at adoption followed by the
  /// smoothed samples. trajectory_hops[i] is sample i's position along the
  /// current (remaining) path, in hops.
  std::vector<JointConfig> trajectory;
  std::vector<double> trajectory_hops;
  std::size_t trajectory_cursor = 0;
  double travel_budget = 0.0;  ///< unspent joint-space distance, radians
  double next_replan = 0.0;
  bool paused = false;
  bool goal_changed = false;
  std::optional<LiveEvent> last_decision;
};

/// Headless real-time replanning loop. The network and lookup table are
/// borrowed and must outlive the simulator. A single thread drives tick();
/// enqueue() may be called from any thread and takes effect at the next
/// tick boundary.
class LiveSimulator {
 public:
  LiveSimulator(const Network& net, const LookupTable& lut, RobotModel model, PlannerConfig config,
                ObstacleSet obstacles, const JointConfig& start, const JointConfig& goal);

  /// Advances time by dt, moves the robot along its trajectory at the
  /// configured joint speed and runs a replan cycle when one is due.
  /// Returns the events emitted during this tick.
  std::vector<LiveEvent> tick(double dt);

  /// Applies a command immediately. Returns a Command event, or an Error
  /// event (state unchanged) for unknown obstacle ids and malformed input.
  LiveEvent apply_command(const Command& command);

  /// Thread-safe; applied at the start of the next tick.
  void enqueue(Command command);

  const WorldState& state() const { return state_; }
  const Network& network() const { return net_; }
  const RobotModel& model() const { return model_; }
  const VoxelGrid& grid() const { return lut_.grid(); }
  const PlannerConfig& config() const { return config_; }

  /// Occupied voxels of the current obstacle set at the current time.
  VoxelSet current_occupied() const;

 private:
  void advance(double dt);
  LiveEvent replan_cycle();

  const Network& net_;
  const LookupTable& lut_;
  RobotModel model_;
  PlannerConfig config_;
  WorldState state_;
  std::mutex queue_mutex_;
  std::deque<Command> queue_;
};

/// Runs `scenario`-style scripted commands against a simulator until
/// `duration`, applying each command at the first tick boundary at or after
/// its timestamp. Returns every event in order.
std::vector<LiveEvent> run_headless(LiveSimulator& sim, const std::vector<TimedCommand>& script, double duration,
                                    double dt);

}  // namespace cogmap
