#include "cogmap/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

namespace cogmap {

void SamplerParams::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw std::invalid_argument("goal_bias must lie in [0, 1]");
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
  if (prm_k == 0) throw std::invalid_argument("prm_k must be positive");
}

bool collision_free(const RobotModel& model, const VoxelGrid& grid, std::span<const VoxelId> occupied,
                    const JointConfig& q) {
  if (!model.within_limits(q)) return false;
  const VoxelSet cells = occupied_cells(model, q, grid);
  std::vector<VoxelId> sorted(occupied.begin(), occupied.end());
  std::sort(sorted.begin(), sorted.end());
  auto a = cells.begin();
  auto b = sorted.begin();
  while (a != cells.end() && b != sorted.end()) {
    if (*a == *b) return false;
    if (*a < *b) ++a;
    else ++b;
  }
  return true;
}

CollisionChecker::CollisionChecker(RobotModel model, VoxelGrid grid, std::span<const VoxelId> occupied)
    : model_(std::move(model)), grid_(grid), mask_(grid_.cell_count(), 0) {
  for (VoxelId v : occupied) {
    if (v >= mask_.size()) throw std::invalid_argument("occupied voxel outside grid");
    mask_[v] = 1;
    any_ = true;
  }
}

bool CollisionChecker::operator()(const JointConfig& q) const {
  if (!model_.within_limits(q)) return false;
  if (!any_) return true;
  std::vector<VoxelId> cells;
  rasterize_segments(forward_kinematics(model_, q), grid_, cells);
  return std::none_of(cells.begin(), cells.end(), [&](VoxelId v) { return mask_[v] != 0; });
}

bool motion_valid(const Validity& valid, const JointConfig& a, const JointConfig& b, double resolution) {
  const auto dense = interpolate(a, b, resolution);
  // Endpoints are checked by the callers; only interior configs remain.
  for (std::size_t i = 1; i + 1 < dense.size(); ++i) {
    if (!valid(dense[i])) return false;
  }
  return dense.size() < 2 || valid(dense.back());
}

namespace {

struct Tree {
  std::vector<JointConfig> nodes;
  std::vector<std::size_t> parent;

  std::size_t add(JointConfig q, std::size_t p) {
    nodes.push_back(std::move(q));
    parent.push_back(p);
    return nodes.size() - 1;
  }

  std::size_t nearest(const JointConfig& q) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double d = (nodes[i] - q).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }

  // Root-to-node order.
  std::vector<JointConfig> branch(std::size_t i) const {
    std::vector<JointConfig> out;
    for (std::size_t k = i; k != kRoot; k = parent[k]) out.push_back(nodes[k]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  static constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();
};

class Sampler {
 public:
  Sampler(std::span<const JointLimit> bounds, std::uint64_t seed) : bounds_(bounds), rng_(seed) {}

  JointConfig uniform() {
    JointConfig q(static_cast<Eigen::Index>(bounds_.size()));
    for (std::size_t j = 0; j < bounds_.size(); ++j) {
      std::uniform_real_distribution<double> d(bounds_[j].min, bounds_[j].max);
      q[static_cast<Eigen::Index>(j)] = d(rng_);
    }
    return q;
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

 private:
  std::span<const JointLimit> bounds_;
  std::mt19937_64 rng_;
};

JointConfig steer(const JointConfig& from, const JointConfig& to, double step) {
  const JointConfig delta = to - from;
  const double len = delta.norm();
  if (len <= step) return to;
  return from + delta * (step / len);
}

void check_query(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                 std::span<const JointLimit> bounds, const SamplerParams& params) {
  params.validate();
  const auto dof = static_cast<Eigen::Index>(bounds.size());
  if (q_start.size() != dof || q_goal.size() != dof) throw std::invalid_argument("endpoint dimension mismatch");
  if (!valid(q_start)) throw std::invalid_argument("start configuration is invalid");
  if (!valid(q_goal)) throw std::invalid_argument("goal configuration is invalid");
}

}  // namespace

SamplerResult rrt(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                  std::span<const JointLimit> bounds, const SamplerParams& params) {
  check_query(q_start, q_goal, valid, bounds, params);
  SamplerResult result;
  if (q_start == q_goal) {
    result.success = true;
    result.path = {q_start};
    result.nodes = 1;
    return result;
  }
  const double res = params.collision_resolution();
  Sampler sampler(bounds, params.seed);
  Tree tree;
  tree.add(q_start, Tree::kRoot);
  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    result.iterations = it;
    const JointConfig target = sampler.unit() < params.goal_bias ? q_goal : sampler.uniform();
    const std::size_t near = tree.nearest(target);
    JointConfig q_new = steer(tree.nodes[near], target, params.step_size);
    if (!valid(q_new) || !motion_valid(valid, tree.nodes[near], q_new, res)) continue;
    const std::size_t idx = tree.add(std::move(q_new), near);
    if ((tree.nodes[idx] - q_goal).norm() <= params.step_size &&
        motion_valid(valid, tree.nodes[idx], q_goal, res)) {
      const std::size_t g = tree.nodes[idx] == q_goal ? idx : tree.add(q_goal, idx);
      result.success = true;
      result.path = tree.branch(g);
      break;
    }
  }
  result.nodes = tree.nodes.size();
  return result;
}

SamplerResult rrt_connect(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                          std::span<const JointLimit> bounds, const SamplerParams& params) {
  check_query(q_start, q_goal, valid, bounds, params);
  SamplerResult result;
  if (q_start == q_goal) {
    result.success = true;
    result.path = {q_start};
    result.nodes = 1;
    return result;
  }
  const double res = params.collision_resolution();
  Sampler sampler(bounds, params.seed);
  Tree a;
  Tree b;
  a.add(q_start, Tree::kRoot);
  b.add(q_goal, Tree::kRoot);
  bool a_is_start = true;

  enum class Status { Trapped, Advanced, Reached };
  auto extend = [&](Tree& t, const JointConfig& target, std::size_t& out) {
    const std::size_t near = t.nearest(target);
    JointConfig q_new = steer(t.nodes[near], target, params.step_size);
    if (!valid(q_new) || !motion_valid(valid, t.nodes[near], q_new, res)) return Status::Trapped;
    const bool reached = q_new == target;
    out = t.add(std::move(q_new), near);
    return reached ? Status::Reached : Status::Advanced;
  };

  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    result.iterations = it;
    const JointConfig target = sampler.uniform();
    std::size_t new_a = 0;
    if (extend(a, target, new_a) != Status::Trapped) {
      const JointConfig pivot = a.nodes[new_a];
      std::size_t new_b = 0;
      Status s = Status::Advanced;
      while (s == Status::Advanced) s = extend(b, pivot, new_b);
      if (s == Status::Reached) {
        auto from_a = a.branch(new_a);
        auto from_b = b.branch(new_b);
        from_b.pop_back();  // duplicate of the pivot
        std::reverse(from_b.begin(), from_b.end());
        from_a.insert(from_a.end(), from_b.begin(), from_b.end());
        if (!a_is_start) std::reverse(from_a.begin(), from_a.end());
        result.success = true;
        result.path = std::move(from_a);
        break;
      }
    }
    std::swap(a, b);
    a_is_start = !a_is_start;
  }
  result.nodes = a.nodes.size() + b.nodes.size();
  return result;
}

Roadmap build_roadmap(const Validity& valid, std::span<const JointLimit> bounds, const SamplerParams& params,
                      const std::vector<JointConfig>& extra) {
  params.validate();
  Roadmap map;
  map.nodes = extra;
  Sampler sampler(bounds, params.seed);
  // Bounded rejection sampling so a fully blocked space terminates.
  const std::size_t attempts = std::max<std::size_t>(params.prm_samples * 20, 100);
  std::size_t accepted = 0;
  for (std::size_t a = 0; a < attempts && accepted < params.prm_samples; ++a) {
    JointConfig q = sampler.uniform();
    if (valid(q)) {
      map.nodes.push_back(std::move(q));
      ++accepted;
    }
  }
  const std::size_t n = map.nodes.size();
  map.adjacency.assign(n, {});
  const double res = params.collision_resolution();
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.emplace_back((map.nodes[i] - map.nodes[j]).squaredNorm(), j);
    }
    const std::size_t k = std::min(params.prm_k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = order[r].second;
      auto& adj_i = map.adjacency[i];
      if (std::find(adj_i.begin(), adj_i.end(), j) != adj_i.end()) continue;
      if (!motion_valid(valid, map.nodes[i], map.nodes[j], res)) continue;
      adj_i.push_back(j);
      map.adjacency[j].push_back(i);
    }
  }
  for (auto& adj : map.adjacency) std::sort(adj.begin(), adj.end());
  return map;
}

SamplerResult prm(const JointConfig& q_start, const JointConfig& q_goal, const Validity& valid,
                  std::span<const JointLimit> bounds, const SamplerParams& params) {
  check_query(q_start, q_goal, valid, bounds, params);
  SamplerResult result;
  if (q_start == q_goal) {
    result.success = true;
    result.path = {q_start};
    result.nodes = 1;
    return result;
  }
  const Roadmap map = build_roadmap(valid, bounds, params, {q_start, q_goal});
  const std::size_t n = map.nodes.size();
  result.nodes = n;
  result.iterations = n - 2;

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n, n);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[0] = 0.0;
  heap.emplace(0.0, 0);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == 1) break;
    for (std::size_t v : map.adjacency[u]) {
      const double alt = d + (map.nodes[u] - map.nodes[v]).norm();
      if (alt < dist[v]) {
        dist[v] = alt;
        pred[v] = u;
        heap.emplace(alt, v);
      }
    }
  }
  if (pred[1] == n) return result;
  for (std::size_t v = 1; v != 0; v = pred[v]) result.path.push_back(map.nodes[v]);
  result.path.push_back(map.nodes[0]);
  std::reverse(result.path.begin(), result.path.end());
  result.success = true;
  return result;
}

}  // namespace cogmap
