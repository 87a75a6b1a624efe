#include "cogmap/datagen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

namespace cogmap {

bool JointBox::contains(const JointConfig& q, double tol) const {
  if (q.size() != lo.size()) return false;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    if (q[j] < lo[j] - tol || q[j] > hi[j] + tol) return false;
  }
  return true;
}

void JointBox::validate(std::size_t dof) const {
  const auto n = static_cast<Eigen::Index>(dof);
  if (lo.size() != n || hi.size() != n) throw std::invalid_argument("region dimension differs from robot joints");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(lo[j] <= hi[j])) throw std::invalid_argument("region has lo > hi");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

JointConfig draw(const JointBox& box, std::mt19937_64& rng) {
  JointConfig q(box.lo.size());
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    q[j] = box.lo[j] == box.hi[j] ? box.lo[j] : std::uniform_real_distribution<double>(box.lo[j], box.hi[j])(rng);
  }
  return q;
}

}  // namespace

Dataset generate_pick_place(const RobotModel& model, const std::vector<JointBox>& regions, std::size_t n_traj,
                            std::uint64_t seed, const DatagenParams& params) {
  model.validate();
  if (n_traj == 0) throw std::invalid_argument("n_traj must be at least 1");
  if (regions.empty()) throw std::invalid_argument("at least one region is required");
  if (!(params.max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
  const std::size_t dof = model.joint_count();
  for (const auto& r : regions) {
    r.validate(dof);
    for (Eigen::Index j = 0; j < r.lo.size(); ++j) {
      const auto& lim = model.limits[static_cast<std::size_t>(j)];
      if (r.lo[j] < lim.min || r.hi[j] > lim.max) throw std::invalid_argument("region exceeds joint limits");
    }
  }

  std::vector<JointLimit> hull(dof);
  for (std::size_t j = 0; j < dof; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    hull[j].min = regions.front().lo[jj];
    hull[j].max = regions.front().hi[jj];
    for (const auto& r : regions) {
      hull[j].min = std::min(hull[j].min, r.lo[jj]);
      hull[j].max = std::max(hull[j].max, r.hi[jj]);
    }
  }
  const Validity valid = [&](const JointConfig& q) { return model.within_limits(q); };

  Dataset data;
  data.dof = dof;
  data.trajectories.resize(n_traj);
  std::vector<std::string> errors(n_traj);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(splitmix64(seed + i));
      const JointBox& from = regions[i % regions.size()];
      const JointBox& to = regions[(i + 1) % regions.size()];
      bool done = false;
      for (std::size_t attempt = 0; attempt <= params.max_retries && !done; ++attempt) {
        const JointConfig a = draw(from, rng);
        const JointConfig b = draw(to, rng);
        SamplerParams sp = params.sampler;
        sp.seed = rng();
        const SamplerResult r = rrt_connect(a, b, valid, hull, sp);
        if (!r.success) continue;
        std::vector<JointConfig> dense{r.path.front()};
        for (std::size_t k = 1; k < r.path.size(); ++k) {
          auto seg = interpolate(r.path[k - 1], r.path[k], params.max_step);
          dense.insert(dense.end(), seg.begin() + 1, seg.end());
        }
        if (dense.size() < 2) dense.push_back(dense.front());
        data.trajectories[i] = std::move(dense);
        done = true;
      }
      if (!done) errors[i] = "trajectory " + std::to_string(i) + " failed after retries";
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(params.threads, static_cast<unsigned>(n_traj)));
  if (threads == 1) {
    work(0, n_traj);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_traj + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(n_traj, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return data;
}

}  // namespace cogmap
