#include <gtest/gtest.h>

#include "cogmap/replan.hpp"

using namespace cogmap;

namespace {

// Line of five neurons at x = 0..4 plus a detour neuron 5 at (2, 3).
const Network& graph() {
  static const Network net(NetworkKind::Gng, 2, {0, 0, 1, 0, 2, 0, 3, 0, 4, 0, 2, 3},
                           {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {5, 4}});
  return net;
}

Path detour() { return Path::from_neurons(graph(), {0, 5, 4}); }
Path straight() { return Path::from_neurons(graph(), {0, 1, 2, 3, 4}); }

ReplanState with_current(const Path& p) {
  ReplanState s;
  s.current_path = p;
  s.blocked = BlockedSet(graph().size());
  return s;
}

constexpr double kWindow = 0.6;

}  // namespace

TEST(Replan, NoPreviousPathAdopts) {
  ReplanState s;
  const Decision d = replan_decide(s, straight(), 0.0, kWindow);
  EXPECT_EQ(d, (Decision{DecisionKind::Adopt, DecisionReason::NoPrevious}));
  ASSERT_TRUE(s.current_path);
  EXPECT_EQ(s.current_path->neuron_ids, straight().neuron_ids);
}

TEST(Replan, NoPreviousPathAndSearchFailureFails) {
  ReplanState s;
  EXPECT_EQ(replan_decide(s, PlanFailure::GoalBlocked, 0.0, kWindow),
            (Decision{DecisionKind::Fail, DecisionReason::GoalBlocked}));
  EXPECT_FALSE(s.current_path);
}

TEST(Replan, BlockedCurrentPathAdoptsForCollision) {
  ReplanState s = with_current(straight());
  s.blocked.insert(2);
  s.candidate_shorter_since = 0.1;
  EXPECT_EQ(replan_decide(s, detour(), 1.0, kWindow), (Decision{DecisionKind::Adopt, DecisionReason::Collision}));
  EXPECT_EQ(s.current_path->neuron_ids, detour().neuron_ids);
  EXPECT_FALSE(s.candidate_shorter_since);
}

TEST(Replan, BlockedCurrentPathAndSearchFailureFails) {
  ReplanState s = with_current(straight());
  s.blocked.insert(2);
  EXPECT_EQ(replan_decide(s, PlanFailure::Unreachable, 1.0, kWindow),
            (Decision{DecisionKind::Fail, DecisionReason::Unreachable}));
  EXPECT_FALSE(s.current_path);
}

TEST(Replan, IntactPathAndNoShorterCandidateKeeps) {
  ReplanState s = with_current(straight());
  EXPECT_EQ(replan_decide(s, straight(), 1.0, kWindow), (Decision{DecisionKind::KeepCurrent, DecisionReason::None}));
  EXPECT_EQ(replan_decide(s, detour(), 1.3, kWindow), (Decision{DecisionKind::KeepCurrent, DecisionReason::None}));
  EXPECT_FALSE(s.candidate_shorter_since);
}

TEST(Replan, ShorterCandidateFirstObservationKeepsAndStartsClock) {
  ReplanState s = with_current(detour());
  EXPECT_EQ(replan_decide(s, straight(), 2.0, kWindow), (Decision{DecisionKind::KeepCurrent, DecisionReason::None}));
  ASSERT_TRUE(s.candidate_shorter_since);
  EXPECT_EQ(*s.candidate_shorter_since, 2.0);
  EXPECT_EQ(s.current_path->neuron_ids, detour().neuron_ids);
}

TEST(Replan, ShorterCandidateAdoptedAfterWindow) {
  ReplanState s = with_current(detour());
  EXPECT_EQ(replan_decide(s, straight(), 2.0, kWindow).kind, DecisionKind::KeepCurrent);
  EXPECT_EQ(replan_decide(s, straight(), 2.3, kWindow).kind, DecisionKind::KeepCurrent);
  EXPECT_EQ(replan_decide(s, straight(), 2.6, kWindow), (Decision{DecisionKind::Adopt, DecisionReason::Shorter}));
  EXPECT_EQ(s.current_path->neuron_ids, straight().neuron_ids);
  EXPECT_FALSE(s.candidate_shorter_since);
}

TEST(Replan, InterruptedShorterCandidateRestartsClock) {
  ReplanState s = with_current(detour());
  replan_decide(s, straight(), 2.0, kWindow);
  EXPECT_EQ(replan_decide(s, PlanFailure::Unreachable, 2.3, kWindow),
            (Decision{DecisionKind::KeepCurrent, DecisionReason::None}));
  EXPECT_FALSE(s.candidate_shorter_since);
  EXPECT_EQ(replan_decide(s, straight(), 2.6, kWindow).kind, DecisionKind::KeepCurrent);
  EXPECT_EQ(replan_decide(s, straight(), 3.1, kWindow).kind, DecisionKind::KeepCurrent);
  EXPECT_EQ(replan_decide(s, straight(), 3.2, kWindow).kind, DecisionKind::Adopt);
}

TEST(Replan, EqualLengthIsNotShorter) {
  ReplanState s = with_current(straight());
  for (double t = 0; t < 5; t += 0.3) EXPECT_EQ(replan_decide(s, straight(), t, kWindow).kind, DecisionKind::KeepCurrent);
}

TEST(Replan, Names) {
  EXPECT_STREQ(to_string(DecisionKind::Adopt), "adopt");
  EXPECT_STREQ(to_string(DecisionReason::NoPrevious), "no_previous");
  EXPECT_TRUE(path_blocked(straight(), BlockedSet::from_ids(6, std::vector<NeuronId>{3})));
  EXPECT_FALSE(path_blocked(detour(), BlockedSet::from_ids(6, std::vector<NeuronId>{3})));
}

TEST(Replan, WindowToleratesAccumulatedTickTimes) {
  ReplanState s = with_current(detour());
  // Tick 30 and tick 42 of a 0.05 s clock differ by 0.6 minus an ulp.
  double since = 0.0;
  for (int i = 0; i < 30; ++i) since += 0.05;
  double now = since;
  for (int i = 0; i < 12; ++i) now += 0.05;
  ASSERT_LT(now - since, kWindow);
  EXPECT_EQ(replan_decide(s, straight(), since, kWindow).kind, DecisionKind::KeepCurrent);
  EXPECT_EQ(replan_decide(s, straight(), now, kWindow), (Decision{DecisionKind::Adopt, DecisionReason::Shorter}));
}
