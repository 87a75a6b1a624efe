#pragma once

#include <variant>
#include <vector>

#include "cogmap/obstacles.hpp"

namespace cogmap {

struct AddObstacle {
  Obstacle obstacle;
};
struct MoveObstacle {
  int id = 0;
  Point3 position = Point3::Zero();
};
struct RemoveObstacle {
  int id = 0;
};
struct SetGoal {
  JointConfig goal;
};
struct Pause {};
struct Resume {};

/// Operator input to the live service.
using Command = std::variant<AddObstacle, MoveObstacle, RemoveObstacle, SetGoal, Pause, Resume>;

/// A command scheduled at a simulation time (scenario scripts).
struct TimedCommand {
  double time = 0.0;
  Command command;
};

}  // namespace cogmap
