#include "cogmap/replan.hpp"

#include <algorithm>

namespace cogmap {

const char* to_string(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::KeepCurrent: return "keep";
    case DecisionKind::Adopt: return "adopt";
    case DecisionKind::Fail: return "fail";
  }
  return "unknown";
}

const char* to_string(DecisionReason reason) {
  switch (reason) {
    case DecisionReason::None: return "none";
    case DecisionReason::NoPrevious: return "no_previous";
    case DecisionReason::Collision: return "collision";
    case DecisionReason::Shorter: return "shorter";
    case DecisionReason::StartBlocked: return "start_blocked";
    case DecisionReason::GoalBlocked: return "goal_blocked";
    case DecisionReason::Unreachable: return "unreachable";
  }
  return "unknown";
}

bool path_blocked(const Path& path, const BlockedSet& blocked) {
  return std::any_of(path.neuron_ids.begin(), path.neuron_ids.end(),
                     [&](NeuronId n) { return blocked.contains(n); });
}

namespace {

DecisionReason failure_reason(PlanFailure f) {
  switch (f) {
    case PlanFailure::StartBlocked: return DecisionReason::StartBlocked;
    case PlanFailure::GoalBlocked: return DecisionReason::GoalBlocked;
    case PlanFailure::Unreachable: return DecisionReason::Unreachable;
  }
  return DecisionReason::Unreachable;
}

Decision adopt(ReplanState& state, const Path& path, DecisionReason reason) {
  state.current_path = path;
  state.current_smoothed.reset();
  state.candidate_shorter_since.reset();
  return {DecisionKind::Adopt, reason};
}

}  // namespace

Decision replan_decide(ReplanState& state, const SearchOutcome& outcome, double now, double stability_window) {
  const Path* found = std::get_if<Path>(&outcome);

  if (!state.current_path) {
    state.candidate_shorter_since.reset();
    if (found) return adopt(state, *found, DecisionReason::NoPrevious);
    return {DecisionKind::Fail, failure_reason(std::get<PlanFailure>(outcome))};
  }

  if (path_blocked(*state.current_path, state.blocked)) {
    if (found) return adopt(state, *found, DecisionReason::Collision);
    state.current_path.reset();
    state.current_smoothed.reset();
    state.candidate_shorter_since.reset();
    return {DecisionKind::Fail, failure_reason(std::get<PlanFailure>(outcome))};
  }

  const bool shorter = found && found->cspace_length < state.current_path->cspace_length - kShorterTolerance;
  if (!shorter) {
    state.candidate_shorter_since.reset();
    return {DecisionKind::KeepCurrent, DecisionReason::None};
  }
  if (!state.candidate_shorter_since) state.candidate_shorter_since = now;
  if (now - *state.candidate_shorter_since + kWindowSlack >= stability_window) return adopt(state, *found, DecisionReason::Shorter);
  return {DecisionKind::KeepCurrent, DecisionReason::None};
}

}  // namespace cogmap
