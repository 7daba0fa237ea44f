#include "peernet/predict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace peernet {

int basis_size(FeatureSet features) {
  return features == FeatureSet::linear ? 2 : 3;
}

Eigen::VectorXd basis(FeatureSet features, int prompt) {
  if (prompt < 1) {
    throw std::invalid_argument("basis: prompt must be >= 1");
  }
  const double p = static_cast<double>(prompt);
  Eigen::VectorXd phi(basis_size(features));
  phi[0] = 1.0;
  phi[1] = p;
  if (features == FeatureSet::nonlinear) {
    phi[2] = std::sqrt(p);
  }
  return phi;
}

const char* feature_set_name(FeatureSet features) {
  return features == FeatureSet::linear ? "linear" : "nonlinear";
}

FeatureSet feature_set_from_name(std::string_view name) {
  if (name == "linear") return FeatureSet::linear;
  if (name == "nonlinear") return FeatureSet::nonlinear;
  throw std::invalid_argument("unknown feature set: " + std::string(name));
}

PredictionTask PredictionTask::for_series(CommunitySeries series) {
  if (series.prompt_count() < 2) {
    throw std::invalid_argument(
        "prediction task needs at least 2 prompts (training plus target)");
  }
  PredictionTask task;
  task.training_prompts = series.prompt_count() - 1;
  task.target_prompt = series.prompt_count();
  task.series = std::move(series);
  return task;
}

namespace {

std::string describe_fit(FeatureSet features, const HyperParams& hp,
                         std::size_t prompt_count) {
  std::ostringstream out;
  out << feature_set_name(features) << " features, lambda=" << hp.lambda
      << ", mu=" << hp.mu << ", " << prompt_count << " prompts";
  return out.str();
}

}  // namespace

ModelCoefficients fit_on_prompts(const CommunitySeries& series,
                                 const std::vector<int>& prompts,
                                 FeatureSet features, const HyperParams& hp) {
  if (prompts.empty()) {
    throw std::invalid_argument("fit_on_prompts: no prompts selected");
  }
  for (int p : prompts) {
    if (p < 1 || p > series.prompt_count()) {
      throw std::invalid_argument("fit_on_prompts: prompt " +
                                  std::to_string(p) + " outside the series");
    }
  }
  if (hp.lambda < 0.0 || hp.mu < 0.0) {
    throw std::invalid_argument("fit_on_prompts: lambda and mu must be >= 0");
  }

  const int n = series.participant_count();
  const int k = basis_size(features);
  const double mu = features == FeatureSet::linear ? 0.0 : hp.mu;
  const double inv_m = 1.0 / static_cast<double>(prompts.size());

  // Stationarity system of the regularized least-squares objective. The
  // unknown stacks the per-basis coefficient blocks: x = (beta_0; ...;
  // beta_{k-1}).
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(k * n, k * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k * n);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  for (int p : prompts) {
    const Eigen::VectorXd phi = basis(features, p);
    const CommunitySeries::Prompt& record = series.prompts[p - 1];
    if (record.ratings.size() != n || record.graph.size() != n) {
      throw std::invalid_argument(
          "fit_on_prompts: series dimensions are inconsistent");
    }
    const LaplacianMatrix laplacian = build_laplacian(record.graph);
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) {
        const double weight = phi[s] * phi[t];
        system.block(s * n, t * n, n, n) +=
            weight * (inv_m * identity + 2.0 * hp.lambda * laplacian.entries);
      }
      rhs.segment(s * n, n) += inv_m * phi[s] * record.ratings.values;
    }
  }
  for (int t = 1; t < k; ++t) {
    system.block(t * n, t * n, n, n) += 2.0 * mu * identity;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(system);
  const double smallest = eigen.eigenvalues().minCoeff();
  const double largest = eigen.eigenvalues().maxCoeff();
  if (!(smallest > 0.0) || largest / smallest > 1e12) {
    throw std::runtime_error("ill-posed fit (" +
                             describe_fit(features, hp, prompts.size()) + ")");
  }

  const Eigen::VectorXd solution = system.ldlt().solve(rhs);
  const double residual = (system * solution - rhs).norm();
  if (residual > 1e-8 * rhs.norm()) {
    throw std::runtime_error("fit did not reach stationarity (" +
                             describe_fit(features, hp, prompts.size()) + ")");
  }

  ModelCoefficients coeffs;
  coeffs.features = features;
  coeffs.beta.resize(k, n);
  for (int t = 0; t < k; ++t) {
    coeffs.beta.row(t) = solution.segment(t * n, n).transpose();
  }
  return coeffs;
}

ModelCoefficients fit(const PredictionTask& task, FeatureSet features,
                      const HyperParams& hp) {
  if (task.training_prompts < 1 ||
      task.training_prompts > task.series.prompt_count()) {
    throw std::invalid_argument("fit: invalid training prompt count");
  }
  std::vector<int> prompts(task.training_prompts);
  for (int p = 1; p <= task.training_prompts; ++p) prompts[p - 1] = p;
  return fit_on_prompts(task.series, prompts, features, hp);
}

RatingSignal predict_at(const ModelCoefficients& coeffs, int prompt) {
  const Eigen::VectorXd phi = basis(coeffs.features, prompt);
  return RatingSignal(coeffs.beta.transpose() * phi);
}

double relative_error(const RatingSignal& predicted,
                      const RatingSignal& actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("relative_error: length mismatch");
  }
  const double denom = actual.values.norm();
  if (denom == 0.0) {
    throw std::invalid_argument("relative_error: actual signal has zero norm");
  }
  return (predicted.values - actual.values).norm() / denom;
}

CrossValidationResult cross_validate(const PredictionTask& task,
                                     FeatureSet features,
                                     const std::vector<double>& lambda_grid,
                                     const std::vector<double>& mu_grid) {
  if (task.training_prompts < 2) {
    throw std::invalid_argument(
        "cross_validate: need at least 2 training prompts");
  }
  if (lambda_grid.empty() || mu_grid.empty()) {
    throw std::invalid_argument("cross_validate: empty hyperparameter grid");
  }
  for (double v : lambda_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("cross_validate: invalid lambda grid value");
    }
  }
  for (double v : mu_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("cross_validate: invalid mu grid value");
    }
  }

  std::vector<double> lambdas = lambda_grid;
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<double> mus =
      features == FeatureSet::linear ? std::vector<double>{0.0} : mu_grid;
  std::sort(mus.begin(), mus.end());

  const int m = task.training_prompts;
  bool found = false;
  CrossValidationResult best;
  double best_mean = std::numeric_limits<double>::infinity();

  for (double lambda : lambdas) {
    for (double mu : mus) {
      const HyperParams hp{lambda, mu};
      std::vector<double> fold_errors;
      fold_errors.reserve(m);
      bool usable = true;
      for (int held_out = 1; held_out <= m && usable; ++held_out) {
        std::vector<int> retained;
        retained.reserve(m - 1);
        for (int p = 1; p <= m; ++p) {
          if (p != held_out) retained.push_back(p);
        }
        try {
          const ModelCoefficients coeffs =
              fit_on_prompts(task.series, retained, features, hp);
          fold_errors.push_back(
              relative_error(predict_at(coeffs, held_out),
                             task.series.prompts[held_out - 1].ratings));
        } catch (const std::runtime_error&) {
          usable = false;  // ill-posed fold; candidate dropped
        }
      }
      if (!usable) continue;
      double mean = 0.0;
      for (double err : fold_errors) mean += err;
      mean /= static_cast<double>(fold_errors.size());
      // Strict improvement keeps the smallest (lambda, mu) on ties.
      if (mean < best_mean) {
        best_mean = mean;
        best.selected = hp;
        best.fold_errors = std::move(fold_errors);
        found = true;
      }
    }
  }
  if (!found) {
    throw std::runtime_error(
        "cross_validate: every (lambda, mu) candidate was ill-posed");
  }
  return best;
}

ModelComparison compare_models(const PredictionTask& task, FeatureSet features,
                               const std::vector<double>& lambda_grid,
                               const std::vector<double>& mu_grid) {
  if (task.target_prompt < 1 ||
      task.target_prompt > task.series.prompt_count()) {
    throw std::invalid_argument(
        "compare_models: target prompt absent from the series");
  }
  const RatingSignal& actual = task.series.prompts[task.target_prompt - 1].ratings;

  ModelComparison report;
  report.features = features;

  const ModelCoefficients baseline = fit(task, features, HyperParams{0.0, 0.0});
  report.baseline_error =
      relative_error(predict_at(baseline, task.target_prompt), actual);

  CrossValidationResult cv =
      cross_validate(task, features, lambda_grid, mu_grid);
  report.selected = cv.selected;
  report.fold_errors = std::move(cv.fold_errors);

  const ModelCoefficients consensus = fit(task, features, report.selected);
  report.consensus_error =
      relative_error(predict_at(consensus, task.target_prompt), actual);
  return report;
}

}  // namespace peernet
