#include "peernet/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace peernet {

void DiffusionConfig::validate() const {
  std::string problems;
  auto complain = [&problems](const std::string& what) {
    if (!problems.empty()) problems += "; ";
    problems += what;
  };
  if (node_count < 1) complain("node_count must be >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    complain("edge_prob must lie in [0, 1]");
  }
  if (!(diffusion_constant > 0.0)) complain("diffusion constant must be > 0");
  if (!(drift_mean >= 0.0) || !std::isfinite(drift_mean)) {
    complain("drift_mean must be a finite value >= 0");
  }
  if (!(drift_std >= 0.0) || !std::isfinite(drift_std)) {
    complain("drift_std must be a finite value >= 0");
  }
  if (!(rating_min < rating_max)) complain("rating_min must be < rating_max");
  if (horizon < 1) complain("horizon must be >= 1");
  if (realizations < 1) complain("realizations must be >= 1");
  if (!problems.empty()) {
    throw std::runtime_error("invalid diffusion config: " + problems);
  }
}

InteractionGraph generate_er_graph(int n, double edge_prob, Rng& rng) {
  if (n < 1) {
    throw std::invalid_argument("generate_er_graph: n must be >= 1");
  }
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("generate_er_graph: edge_prob outside [0, 1]");
  }
  Eigen::MatrixXi weights = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(edge_prob)) {
        weights(i, j) = 1;
        weights(j, i) = 1;
      }
    }
  }
  return InteractionGraph(std::move(weights));
}

RatingSignal step(const RatingSignal& signal, const LaplacianMatrix& laplacian,
                  const DiffusionConfig& config, Rng& rng) {
  if (signal.size() != laplacian.size()) {
    throw std::invalid_argument("step: signal/Laplacian dimension mismatch");
  }
  const double c = config.diffusion_constant;
  const double d_max = laplacian.max_degree();
  if (!(c > 0.0) || (d_max > 0.0 && !(c < 1.0 / d_max))) {
    throw std::runtime_error(
        "step: diffusion constant " + std::to_string(c) +
        " outside the admissible interval (0, 1/d_max) with d_max = " +
        std::to_string(d_max));
  }
  Eigen::VectorXd next = signal.values - c * (laplacian.entries * signal.values);
  for (Eigen::Index i = 0; i < next.size(); ++i) {
    next[i] += rng.gaussian(config.drift_mean, config.drift_std);
    next[i] = std::clamp(next[i], config.rating_min, config.rating_max);
  }
  return RatingSignal(std::move(next));
}

namespace {

RealizationTrace run_realization(const DiffusionConfig& config, Rng rng) {
  RealizationTrace trace;
  trace.total_variation.reserve(config.horizon);
  trace.mean_rating.reserve(config.horizon);

  Eigen::VectorXd values(config.node_count);
  for (int i = 0; i < config.node_count; ++i) {
    values[i] = rng.uniform(config.rating_min, config.rating_max);
  }
  RatingSignal signal(std::move(values));

  for (int prompt = 1; prompt <= config.horizon; ++prompt) {
    const InteractionGraph graph =
        generate_er_graph(config.node_count, config.edge_prob, rng);
    const LaplacianMatrix laplacian = build_laplacian(graph);
    trace.total_variation.push_back(total_variation(laplacian, signal));
    trace.mean_rating.push_back(average_rating(signal));
    if (prompt < config.horizon) {
      signal = step(signal, laplacian, config, rng);
    }
  }

  double norm_sq = 0.0;
  for (double tv : trace.total_variation) norm_sq += tv * tv;
  trace.normalized_tv.assign(trace.total_variation.size(), 0.0);
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (std::size_t i = 0; i < trace.total_variation.size(); ++i) {
      trace.normalized_tv[i] = trace.total_variation[i] / norm;
    }
  }
  return trace;
}

}  // namespace

TrajectoryStats simulate(const DiffusionConfig& config,
                         int trace_realizations) {
  config.validate();

  TrajectoryStats stats;
  stats.mean_tv.assign(config.horizon, 0.0);
  stats.mean_normalized_tv.assign(config.horizon, 0.0);
  stats.mean_rating.assign(config.horizon, 0.0);

  for (int k = 0; k < config.realizations; ++k) {
    RealizationTrace trace =
        run_realization(config, Rng::substream(config.seed, k));
    for (int p = 0; p < config.horizon; ++p) {
      stats.mean_tv[p] += trace.total_variation[p];
      stats.mean_normalized_tv[p] += trace.normalized_tv[p];
      stats.mean_rating[p] += trace.mean_rating[p];
    }
    if (k < trace_realizations) {
      stats.traces.push_back(std::move(trace));
    }
  }
  const double count = static_cast<double>(config.realizations);
  for (int p = 0; p < config.horizon; ++p) {
    stats.mean_tv[p] /= count;
    stats.mean_normalized_tv[p] /= count;
    stats.mean_rating[p] /= count;
  }
  return stats;
}

}  // namespace peernet
