#pragma once

#include <vector>

#include <Eigen/Dense>

#include "peernet/graph.hpp"
#include "peernet/ingest.hpp"

namespace peernet {

/// Regression basis evaluated at the prompt index: linear is (1, p),
/// nonlinear is (1, p, sqrt(p)) where the square-root term absorbs
/// saturation at late prompts.
enum class FeatureSet { linear, nonlinear };

int basis_size(FeatureSet features);
Eigen::VectorXd basis(FeatureSet features, int prompt);
const char* feature_set_name(FeatureSet features);
FeatureSet feature_set_from_name(std::string_view name);

/// Smoothness weight lambda and shrinkage weight mu. mu only exists for
/// the nonlinear feature set and is forced to zero for linear features.
struct HyperParams {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Per-participant regression parameters: row t of `beta` holds the
/// coefficient vector of basis function t across all participants.
struct ModelCoefficients {
  Eigen::MatrixXd beta;
  FeatureSet features = FeatureSet::linear;
};

/// A community series split into training prompts 1..training_prompts and
/// the held-out target prompt (training_prompts + 1).
struct PredictionTask {
  CommunitySeries series;
  int training_prompts = 0;
  int target_prompt = 0;

  static PredictionTask for_series(CommunitySeries series);
};

/// Minimizes over coefficients beta the convex quadratic
///
///   1/(2 m') sum_p ||r^(p) - B(p) beta||^2
///     + lambda sum_p TV(B(p) beta; L^(p))
///     + mu (||beta_1||^2 + ||beta_2||^2)
///
/// where p runs over `prompts` (original prompt values feed the basis),
/// m' = |prompts|, and B(p) applies the basis blockwise across
/// participants. Solved exactly through the symmetric stationarity system;
/// the solution's normal-equation residual is verified to 1e-8 relative.
/// Throws std::runtime_error naming the configuration when the system's
/// condition estimate exceeds 1e12.
ModelCoefficients fit_on_prompts(const CommunitySeries& series,
                                 const std::vector<int>& prompts,
                                 FeatureSet features, const HyperParams& hp);

/// fit_on_prompts over training prompts 1..task.training_prompts.
ModelCoefficients fit(const PredictionTask& task, FeatureSet features,
                      const HyperParams& hp);

/// Evaluates the basis expansion at `prompt` for every participant. The
/// prediction is the raw affine value, never clamped to the rating bounds.
RatingSignal predict_at(const ModelCoefficients& coeffs, int prompt);

/// ||predicted - actual|| / ||actual|| (Euclidean). Throws
/// std::invalid_argument on length mismatch or a zero-norm actual.
double relative_error(const RatingSignal& predicted,
                      const RatingSignal& actual);

struct CrossValidationResult {
  HyperParams selected;
  /// Relative errors of the winning pair, one per held-out training prompt.
  std::vector<double> fold_errors;
};

/// Leave-one-out cross validation over training prompts: each candidate
/// (lambda, mu) is scored by refitting without one prompt at a time
/// (smoothness sum restricted to the retained prompts) and predicting the
/// held-out one. Returns the pair with the smallest mean fold error; ties
/// break to the smallest lambda, then the smallest mu. Candidates whose
/// folds are ill-posed are skipped; if every candidate is, throws
/// std::runtime_error. For linear features the mu grid collapses to {0}.
CrossValidationResult cross_validate(const PredictionTask& task,
                                     FeatureSet features,
                                     const std::vector<double>& lambda_grid,
                                     const std::vector<double>& mu_grid);

/// Consensus model (cross-validated lambda, mu) against the
/// network-agnostic baseline (lambda = mu = 0, plain per-participant least
/// squares), both fitted on the training prompts and scored by
/// relative_error at the target prompt.
struct ModelComparison {
  FeatureSet features = FeatureSet::linear;
  HyperParams selected;
  double consensus_error = 0.0;
  double baseline_error = 0.0;
  std::vector<double> fold_errors;
};

ModelComparison compare_models(const PredictionTask& task, FeatureSet features,
                               const std::vector<double>& lambda_grid,
                               const std::vector<double>& mu_grid);

}  // namespace peernet
