#pragma once

#include <cstdint>
#include <vector>

#include "peernet/graph.hpp"
#include "peernet/rng.hpp"

namespace peernet {

/// Parameters of the bounded rating-diffusion model and of the Monte Carlo
/// protocol built on top of it.
struct DiffusionConfig {
  int node_count = 26;
  double edge_prob = 0.5;
  /// Consensus step size. Must satisfy 0 < c < 1/d_max for every realized
  /// graph; violations are hard errors, never silently clipped.
  double diffusion_constant = 0.01;
  double drift_mean = 0.05;
  double drift_std = 0.1;
  double rating_min = 1.0;
  double rating_max = 5.0;
  /// Number of prompts per realization (so horizon - 1 diffusion steps).
  int horizon = 100;
  int realizations = 1000;
  std::uint64_t seed = 0;

  /// Throws std::runtime_error listing every invalid field at once.
  void validate() const;
};

/// Per-prompt curves of a single simulated realization.
struct RealizationTrace {
  std::vector<double> total_variation;
  std::vector<double> normalized_tv;
  std::vector<double> mean_rating;
};

/// Monte Carlo aggregates, one entry per prompt. Normalization happens per
/// realization (each trace scaled to unit Euclidean norm) before averaging;
/// raw TV is kept alongside so the other convention stays recomputable.
/// A realization whose TV trace is identically zero contributes zeros to
/// the normalized average, since its normalization is undefined.
struct TrajectoryStats {
  std::vector<double> mean_tv;
  std::vector<double> mean_normalized_tv;
  std::vector<double> mean_rating;
  /// First `trace_realizations` individual realizations, when requested.
  std::vector<RealizationTrace> traces;
};

/// Erdos-Renyi draw: each unordered pair becomes a weight-1 edge
/// independently with probability `edge_prob`. Pairs are visited in
/// row-major upper-triangle order, one engine draw per pair.
InteractionGraph generate_er_graph(int n, double edge_prob, Rng& rng);

/// One diffusion update: componentwise
///   r'_i = clamp(r_i - c (L r)_i + eps_i, rating_min, rating_max)
/// with eps_i drawn i.i.d. Gaussian(drift_mean, drift_std^2), fresh per
/// node per step. Throws std::runtime_error when the diffusion constant
/// is outside (0, 1/d_max) for this graph (any c > 0 is admissible when
/// the graph has no edges).
RatingSignal step(const RatingSignal& signal, const LaplacianMatrix& laplacian,
                  const DiffusionConfig& config, Rng& rng);

/// Runs `config.realizations` independent realizations: ratings start
/// uniform on [rating_min, rating_max], a fresh graph is drawn for every
/// prompt, and TV / mean rating are recorded per prompt before stepping.
/// Realization k uses Rng::substream(config.seed, k), so output is
/// deterministic in the seed and independent of evaluation order.
TrajectoryStats simulate(const DiffusionConfig& config,
                         int trace_realizations = 0);

}  // namespace peernet
