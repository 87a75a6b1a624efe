#include "cogmap/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace cogmap {

void TrainParams::validate(NetworkKind kind) const {
  auto rate = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  };
  if (target_neurons < 4 && kind != NetworkKind::Gng) throw std::invalid_argument("target_neurons must be >= 4");
  if (target_neurons < 2) throw std::invalid_argument("target_neurons must be >= 2");
  if (kind == NetworkKind::Gng) {
    rate(eps_b, "eps_b");
    rate(eps_n, "eps_n");
    rate(alpha, "alpha");
    rate(decay, "decay");
    if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  } else {
    rate(lr_initial, "lr_initial");
    rate(lr_final, "lr_final");
    if (!(radius_final > 0.0)) throw std::invalid_argument("radius_final must be positive");
    if (radius_initial < 0.0) throw std::invalid_argument("radius_initial must be non-negative");
    const auto shape = lattice_shape();
    if (static_cast<std::size_t>(shape.rows) * shape.cols != target_neurons) {
      throw std::invalid_argument("rows * cols must equal target_neurons");
    }
    if (kind == NetworkKind::GammaSom && context_depth > 0) {
      rate(context_beta, "context_beta");
      rate(context_weight, "context_weight");
    }
  }
}

GridShape TrainParams::lattice_shape() const {
  if (rows != 0 || cols != 0) return {static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols)};
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(target_neurons)));
  while (r > 1 && target_neurons % r != 0) --r;
  return {static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(target_neurons / r)};
}

namespace {

void require_data(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("training dataset is empty");
  data.validate();
}

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = a[k] - b[k];
    d2 += diff * diff;
  }
  return d2;
}

/// Shared SOM / gamma-SOM loop. depth == 0 is the plain SOM.
Network train_lattice(const Dataset& data, const TrainParams& p, std::uint64_t seed, NetworkKind kind,
                      std::size_t depth) {
  require_data(data);
  p.validate(kind);
  const GridShape shape = p.lattice_shape();
  const std::size_t n = p.target_neurons;
  const std::size_t dim = data.dof;
  const std::vector<JointConfig> samples = data.samples();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> w(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[pick(rng)];
    std::copy(s.data(), s.data() + dim, w.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  // c^k starts equal to the weight vector for every k.
  std::vector<double> ctx(n * depth * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < depth; ++k) {
      std::copy_n(w.begin() + static_cast<std::ptrdiff_t>(i * dim), dim,
                  ctx.begin() + static_cast<std::ptrdiff_t>((i * depth + k) * dim));
    }
  }

  const double lr0 = p.lr_initial;
  const double lr1 = p.lr_final;
  const double r0 = p.radius_initial > 0.0 ? p.radius_initial
                                           : std::max(1.0, std::max(shape.rows, shape.cols) / 2.0);
  const double r1 = std::min(p.radius_final, r0);
  const std::size_t budget = p.iterations;

  std::vector<double> context_weight(depth + 1, 1.0);
  for (std::size_t k = 1; k <= depth; ++k) context_weight[k] = context_weight[k - 1] * p.context_weight;

  std::vector<std::size_t> order(data.trajectories.size());
  std::vector<double> global_ctx(depth * dim);
  std::size_t t = 0;
  while (t < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t ti : order) {
      const auto& traj = data.trajectories[ti];
      std::size_t prev = 0;
      for (std::size_t s = 0; s < traj.size() && t < budget; ++s, ++t) {
        const double frac = budget > 1 ? static_cast<double>(t) / static_cast<double>(budget - 1) : 1.0;
        const double lr = lr0 * std::pow(lr1 / lr0, frac);
        const double sigma = r0 * std::pow(r1 / r0, frac);
        const double* x = traj[s].data();
        const bool use_context = depth > 0 && s > 0;

        if (use_context) {
          for (std::size_t k = 0; k < depth; ++k) {
            const double* ck = ctx.data() + (prev * depth + k) * dim;
            const double* ckm1 = k == 0 ? w.data() + prev * dim : ctx.data() + (prev * depth + k - 1) * dim;
            for (std::size_t j = 0; j < dim; ++j) {
              global_ctx[k * dim + j] = p.context_beta * ck[j] + (1.0 - p.context_beta) * ckm1[j];
            }
          }
        }

        std::size_t bmu = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
          double d = squared_distance(w.data() + i * dim, x, dim);
          if (use_context) {
            for (std::size_t k = 0; k < depth; ++k) {
              d += context_weight[k + 1] *
                   squared_distance(ctx.data() + (i * depth + k) * dim, global_ctx.data() + k * dim, dim);
            }
          }
          if (d < best) {
            best = d;
            bmu = i;
          }
        }

        const long br = static_cast<long>(bmu / shape.cols);
        const long bc = static_cast<long>(bmu % shape.cols);
        // h(d) = exp(-d^2 / sigma^2); beyond 2.2 sigma h < 0.01 and is skipped.
        const long reach = static_cast<long>(std::ceil(2.2 * sigma));
        const double inv_s2 = 1.0 / (sigma * sigma);
        for (long r = std::max(0L, br - reach); r <= std::min<long>(shape.rows - 1, br + reach); ++r) {
          for (long c = std::max(0L, bc - reach); c <= std::min<long>(shape.cols - 1, bc + reach); ++c) {
            const double lat2 = static_cast<double>((r - br) * (r - br) + (c - bc) * (c - bc));
            const double rate = lr * std::exp(-lat2 * inv_s2);
            const std::size_t i = static_cast<std::size_t>(r) * shape.cols + static_cast<std::size_t>(c);
            double* wi = w.data() + i * dim;
            for (std::size_t j = 0; j < dim; ++j) wi[j] += rate * (x[j] - wi[j]);
            if (use_context) {
              for (std::size_t k = 0; k < depth; ++k) {
                double* cik = ctx.data() + (i * depth + k) * dim;
                const double* gk = global_ctx.data() + k * dim;
                for (std::size_t j = 0; j < dim; ++j) cik[j] += rate * (gk[j] - cik[j]);
              }
            }
          }
        }
        prev = bmu;
      }
    }
  }
  return Network::lattice(kind, shape, dim, std::move(w), depth, depth > 0 ? std::move(ctx) : std::vector<double>{});
}

/// Mutable GNG working state. Edges carry ages; neurons carry errors.
struct GngState {
  struct Link {
    NeuronId to;
    std::size_t age;
  };

  std::size_t dim = 0;
  std::vector<double> w;
  std::vector<double> err;
  std::vector<std::vector<Link>> adj;

  std::size_t size() const { return err.size(); }
  double* weight(std::size_t i) { return w.data() + i * dim; }

  NeuronId add(const double* x) {
    w.insert(w.end(), x, x + dim);
    err.push_back(0.0);
    adj.emplace_back();
    return static_cast<NeuronId>(err.size() - 1);
  }

  Link* find(NeuronId a, NeuronId b) {
    for (auto& l : adj[a]) {
      if (l.to == b) return &l;
    }
    return nullptr;
  }

  void connect(NeuronId a, NeuronId b) {
    if (Link* l = find(a, b)) {
      l->age = 0;
      find(b, a)->age = 0;
      return;
    }
    adj[a].push_back({b, 0});
    adj[b].push_back({a, 0});
  }

  void disconnect(NeuronId a, NeuronId b) {
    std::erase_if(adj[a], [b](const Link& l) { return l.to == b; });
    std::erase_if(adj[b], [a](const Link& l) { return l.to == a; });
  }
};

GngState state_from_network(const Network& net) {
  GngState st;
  st.dim = net.dim();
  st.w.assign(net.raw_weights().begin(), net.raw_weights().end());
  st.err.assign(net.size(), 0.0);
  st.adj.resize(net.size());
  for (const auto& e : net.edges()) {
    st.adj[e.a].push_back({e.b, 0});
    st.adj[e.b].push_back({e.a, 0});
  }
  return st;
}

void run_gng(GngState& st, const std::vector<JointConfig>& samples, const TrainParams& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  const std::size_t dim = st.dim;
  for (std::size_t t = 1; t <= p.iterations; ++t) {
    const double* x = samples[pick(rng)].data();

    NeuronId s1 = 0;
    NeuronId s2 = 0;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.size(); ++i) {
      const double d = squared_distance(st.w.data() + i * dim, x, dim);
      if (d < d1) {
        d2 = d1;
        s2 = s1;
        d1 = d;
        s1 = static_cast<NeuronId>(i);
      } else if (d < d2) {
        d2 = d;
        s2 = static_cast<NeuronId>(i);
      }
    }

    for (auto& l : st.adj[s1]) {
      ++l.age;
      st.find(l.to, s1)->age = l.age;
    }
    st.err[s1] += d1;

    double* w1 = st.weight(s1);
    for (std::size_t j = 0; j < dim; ++j) w1[j] += p.eps_b * (x[j] - w1[j]);
    for (const auto& l : st.adj[s1]) {
      double* wn = st.weight(l.to);
      for (std::size_t j = 0; j < dim; ++j) wn[j] += p.eps_n * (x[j] - wn[j]);
    }

    st.connect(s1, s2);

    std::vector<NeuronId> stale;
    for (const auto& l : st.adj[s1]) {
      if (l.age > p.max_edge_age) stale.push_back(l.to);
    }
    for (NeuronId other : stale) st.disconnect(s1, other);

    if (t % p.lambda == 0 && st.size() < p.target_neurons) {
      const auto q = static_cast<NeuronId>(std::max_element(st.err.begin(), st.err.end()) - st.err.begin());
      NeuronId f = q;
      double f_err = -1.0;
      for (const auto& l : st.adj[q]) {
        if (st.err[l.to] > f_err || (st.err[l.to] == f_err && l.to < f)) {
          f_err = st.err[l.to];
          f = l.to;
        }
      }
      if (f == q) {
        // q lost all its edges: split towards its nearest neuron instead.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < st.size(); ++i) {
          if (i == q) continue;
          const double d = squared_distance(st.weight(i), st.weight(q), dim);
          if (d < best) {
            best = d;
            f = static_cast<NeuronId>(i);
          }
        }
      }
      std::vector<double> mid(dim);
      for (std::size_t j = 0; j < dim; ++j) mid[j] = 0.5 * (st.weight(q)[j] + st.weight(f)[j]);
      const NeuronId r = st.add(mid.data());
      st.disconnect(q, f);
      st.connect(q, r);
      st.connect(r, f);
      st.err[q] *= p.alpha;
      st.err[f] *= p.alpha;
      st.err[r] = st.err[q];
    }

    for (auto& e : st.err) e *= p.decay;
  }
}

Network finish_gng(const GngState& st, GngReport* report) {
  const std::size_t n = st.size();
  std::vector<NeuronId> remap(n, std::numeric_limits<NeuronId>::max());
  std::vector<double> weights;
  NeuronId next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (st.adj[i].empty()) continue;
    remap[i] = next++;
    weights.insert(weights.end(), st.w.begin() + static_cast<std::ptrdiff_t>(i * st.dim),
                   st.w.begin() + static_cast<std::ptrdiff_t>((i + 1) * st.dim));
  }
  std::vector<std::pair<NeuronId, NeuronId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& l : st.adj[i]) {
      if (i < l.to) pairs.emplace_back(remap[i], remap[l.to]);
    }
  }
  if (report) {
    report->neurons_before_pruning = n;
    report->pruned_isolated = n - next;
  }
  return Network(NetworkKind::Gng, st.dim, std::move(weights), std::move(pairs));
}

}  // namespace

Network train_som(const Dataset& data, const TrainParams& params, std::uint64_t seed) {
  return train_lattice(data, params, seed, NetworkKind::Som, 0);
}

Network train_gamma_som(const Dataset& data, const TrainParams& params, std::uint64_t seed) {
  return train_lattice(data, params, seed, NetworkKind::GammaSom, params.context_depth);
}

std::vector<NeuronId> gamma_som_sequence_bmus(const Network& net, const std::vector<JointConfig>& trajectory,
                                              const TrainParams& params) {
  const std::size_t depth = net.context_depth();
  const std::size_t dim = net.dim();
  const std::size_t n = net.size();
  if (depth == 0 || net.raw_contexts().empty()) {
    std::vector<NeuronId> out;
    for (const auto& q : trajectory) out.push_back(best_matching_unit(net, q));
    return out;
  }
  const double* w = net.raw_weights().data();
  const double* ctx = net.raw_contexts().data();
  std::vector<double> context_weight(depth + 1, 1.0);
  for (std::size_t k = 1; k <= depth; ++k) context_weight[k] = context_weight[k - 1] * params.context_weight;

  std::vector<NeuronId> out;
  std::vector<double> global_ctx(depth * dim);
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    const JointConfig& q = trajectory[s];
    if (static_cast<std::size_t>(q.size()) != dim) throw std::invalid_argument("trajectory dimension mismatch");
    if (s > 0) {
      const std::size_t prev = out.back();
      for (std::size_t k = 0; k < depth; ++k) {
        const double* ck = ctx + (prev * depth + k) * dim;
        const double* ckm1 = k == 0 ? w + prev * dim : ctx + (prev * depth + k - 1) * dim;
        for (std::size_t j = 0; j < dim; ++j) {
          global_ctx[k * dim + j] = params.context_beta * ck[j] + (1.0 - params.context_beta) * ckm1[j];
        }
      }
    }
    std::size_t bmu = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double d = squared_distance(w + i * dim, q.data(), dim);
      if (s > 0) {
        for (std::size_t k = 0; k < depth; ++k) {
          d += context_weight[k + 1] * squared_distance(ctx + (i * depth + k) * dim, global_ctx.data() + k * dim, dim);
        }
      }
      if (d < best) {
        best = d;
        bmu = i;
      }
    }
    out.push_back(static_cast<NeuronId>(bmu));
  }
  return out;
}

Network train_gng(const Dataset& data, const TrainParams& params, std::uint64_t seed, GngReport* report) {
  require_data(data);
  params.validate(NetworkKind::Gng);
  const std::vector<JointConfig> samples = data.samples();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);

  GngState st;
  st.dim = data.dof;
  const std::size_t first = pick(rng);
  std::size_t second = pick(rng);
  for (int tries = 0; tries < 16 && samples.size() > 1 && second == first; ++tries) second = pick(rng);
  const NeuronId a = st.add(samples[first].data());
  const NeuronId b = st.add(samples[second].data());
  st.connect(a, b);

  run_gng(st, samples, params, rng);
  return finish_gng(st, report);
}

Network extend_gng(const Network& net, const Dataset& extra, const TrainParams& params, std::uint64_t seed,
                   GngReport* report) {
  if (net.kind() != NetworkKind::Gng) {
    throw UnsupportedOperation("only GNG networks can be extended; SOM networks must be retrained");
  }
  if (extra.empty()) {
    if (report) *report = {net.size(), 0};
    return net;
  }
  extra.validate();
  if (extra.dof != net.dim()) throw std::invalid_argument("extension data dimension does not match network");
  params.validate(NetworkKind::Gng);
  GngState st = state_from_network(net);
  std::mt19937_64 rng(seed);
  run_gng(st, extra.samples(), params, rng);
  return finish_gng(st, report);
}

}  // namespace cogmap
