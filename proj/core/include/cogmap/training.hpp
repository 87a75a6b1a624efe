#pragma once

#include <cstdint>

#include "cogmap/dataset.hpp"
#include "cogmap/network.hpp"

namespace cogmap {

/// Hyperparameters for all three trainers. Each trainer reads only the
/// fields relevant to it.
struct TrainParams {
  std::size_t target_neurons = 500;
  /// SOM lattice; when both are zero a near-square factorization of
  /// target_neurons is used.
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Number of sample presentations.
  std::size_t iterations = 60000;

  // SOM / gamma-SOM: exponential decay from initial to final over the budget.
  // The neighborhood of lattice distance d is exp(-d^2 / radius^2).
  double lr_initial = 0.5;
  double lr_final = 0.01;
  double radius_initial = 0.0;  ///< 0 selects max(rows, cols) / 2
  double radius_final = 1.0;

  // GNG.
  double eps_b = 0.05;
  double eps_n = 0.006;
  std::size_t lambda = 100;
  std::size_t max_edge_age = 100;
  double alpha = 0.5;
  double decay = 0.995;

  // Gamma-SOM context memory.
  std::size_t context_depth = 3;
  double context_beta = 0.5;    ///< gamma filter memory parameter
  double context_weight = 0.5;  ///< context k contributes with weight context_weight^k

  void validate(NetworkKind kind) const;
  GridShape lattice_shape() const;
};

/// Kohonen SOM on a rows x cols lattice. Samples are presented trajectory by
/// trajectory (trajectory order reshuffled every pass, samples in sequence).
/// Weights start at randomly drawn samples; the learning rate and Gaussian
/// neighborhood radius decay exponentially over `iterations` presentations.
Network train_som(const Dataset& data, const TrainParams& params, std::uint64_t seed);

/// Gamma-SOM: the SOM above, where every neuron i also carries K context
/// vectors c_i^1..c_i^K. At step t, with I the previous BMU, the global
/// context is the gamma-filter recursion
///   C_k(t) = beta * c_I^k + (1 - beta) * c_I^{k-1},   c_I^0 = w_I,
/// and the BMU minimizes
///   |x - w_i|^2 + sum_k context_weight^k * |C_k(t) - c_i^k|^2.
/// Contexts move towards C_k(t) with the same neighborhood-weighted rate as
/// the weights. The first sample of each trajectory has no history and is
/// matched on weights alone. With K == 0 this is exactly train_som.
Network train_gamma_som(const Dataset& data, const TrainParams& params, std::uint64_t seed);

/// Sequence-aware BMUs of a trajectory under the blended gamma-SOM distance.
std::vector<NeuronId> gamma_som_sequence_bmus(const Network& net, const std::vector<JointConfig>& trajectory,
                                              const TrainParams& params);

struct GngReport {
  std::size_t neurons_before_pruning = 0;
  std::size_t pruned_isolated = 0;
};

/// Growing neural gas (Fritzke). Starts from two random samples; every
/// `lambda` presentations inserts a neuron between the max-error neuron and
/// its max-error neighbor until target_neurons is reached; isolated neurons
/// are pruned once at the end.
Network train_gng(const Dataset& data, const TrainParams& params, std::uint64_t seed,
                  GngReport* report = nullptr);

/// Resumes GNG training on additional data. Existing neurons keep their
/// indices unless pruned as isolated. Throws UnsupportedOperation for SOM kinds.
Network extend_gng(const Network& net, const Dataset& extra, const TrainParams& params, std::uint64_t seed,
                   GngReport* report = nullptr);

}  // namespace cogmap
