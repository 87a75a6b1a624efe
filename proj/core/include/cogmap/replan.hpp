#pragma once

#include <optional>
#include <variant>

#include "cogmap/lookup_table.hpp"
#include "cogmap/search.hpp"
#include "cogmap/smoothing.hpp"

namespace cogmap {

struct ReplanState {
  std::optional<Path> current_path;
  std::optional<SmoothedTrajectory> current_smoothed;
  /// Set while a strictly shorter candidate has been seen on every cycle since.
  std::optional<double> candidate_shorter_since;
  BlockedSet blocked;
  NeuronId bmu_start = 0;
  NeuronId bmu_goal = 0;
};

enum class DecisionKind { KeepCurrent, Adopt, Fail };
enum class DecisionReason { None, NoPrevious, Collision, Shorter, StartBlocked, GoalBlocked, Unreachable };

const char* to_string(DecisionKind kind);
const char* to_string(DecisionReason reason);

struct Decision {
  DecisionKind kind = DecisionKind::KeepCurrent;
  DecisionReason reason = DecisionReason::None;
  bool operator==(const Decision&) const = default;
};

using SearchOutcome = std::variant<Path, PlanFailure>;

/// Paths must differ by more than this to count as shorter.
inline constexpr double kShorterTolerance = 1e-9;

/// Slack on the stability window so accumulated tick times that land a
/// rounding error short of it still count.
inline constexpr double kWindowSlack = 1e-9;

/// Applies the adoption rule against `state.blocked`:
///  - no current path: Adopt(no_previous) or Fail;
///  - a current path neuron is blocked: Adopt(collision), or Fail and drop it;
///  - otherwise Adopt(shorter) once a strictly shorter path has been observed
///    continuously for stability_window seconds, else KeepCurrent.
/// On Adopt the new path becomes current and current_smoothed is cleared for
/// the caller to fill.
Decision replan_decide(ReplanState& state, const SearchOutcome& outcome, double now, double stability_window);

bool path_blocked(const Path& path, const BlockedSet& blocked);

}  // namespace cogmap
