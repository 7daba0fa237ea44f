#pragma once

// Independent reference computations for the test suite. Everything here is
// built from first principles (explicit sums, hand-rolled elimination, finite
// differences) so that library results are checked against a second route,
// never against themselves.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "peernet/ingest.hpp"
#include "peernet/predict.hpp"

namespace oracle {

// Total variation as the explicit sum over unordered edges.
inline double pairwise_tv(const Eigen::MatrixXi& weights,
                          const Eigen::VectorXd& values) {
  double sum = 0.0;
  for (int i = 0; i < weights.rows(); ++i) {
    for (int j = i + 1; j < weights.cols(); ++j) {
      const double diff = values[i] - values[j];
      sum += weights(i, j) * diff * diff;
    }
  }
  return sum;
}

// Gaussian elimination with partial pivoting; small dense systems only.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) < 1e-300) {
      throw std::runtime_error("solve_dense: singular system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (int k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double sum = b[row];
    for (int k = row + 1; k < n; ++k) sum -= a[row][k] * x[k];
    x[row] = sum / a[row][row];
  }
  return x;
}

using Objective = std::function<double(const std::vector<double>&)>;

// Central-difference gradient. Exact for quadratics up to roundoff.
inline std::vector<double> fd_gradient(const Objective& f,
                                       const std::vector<double>& x,
                                       double h = 0.5) {
  std::vector<double> grad(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

// Minimizes a smooth convex quadratic by Newton steps with a
// finite-difference quadratic model. Second differences of a quadratic are
// exact at any step size, so one step lands on the minimizer and the extra
// iterations only polish roundoff.
inline std::vector<double> minimize_quadratic(const Objective& f, int dim,
                                              int iterations = 3,
                                              double h = 0.5) {
  std::vector<double> x(dim, 0.0);
  for (int iter = 0; iter < iterations; ++iter) {
    const double fx = f(x);
    std::vector<double> grad = fd_gradient(f, x, h);
    std::vector<std::vector<double>> hessian(dim, std::vector<double>(dim));
    std::vector<double> f_plus(dim);
    std::vector<double> probe = x;
    for (int i = 0; i < dim; ++i) {
      probe[i] = x[i] + h;
      f_plus[i] = f(probe);
      probe[i] = x[i] - h;
      const double f_minus = f(probe);
      probe[i] = x[i];
      hessian[i][i] = (f_plus[i] - 2.0 * fx + f_minus) / (h * h);
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        probe[i] = x[i] + h;
        probe[j] = x[j] + h;
        const double f_both = f(probe);
        probe[i] = x[i];
        probe[j] = x[j];
        const double mixed =
            (f_both - f_plus[i] - f_plus[j] + fx) / (h * h);
        hessian[i][j] = mixed;
        hessian[j][i] = mixed;
      }
    }
    for (double& g : grad) g = -g;
    const std::vector<double> delta = solve_dense(hessian, grad);
    for (int i = 0; i < dim; ++i) x[i] += delta[i];
  }
  return x;
}

// Objective of the regularized series regression, as explicit sums over
// prompts, participants and edges; coefficients laid out beta[t * n + i].
inline double series_objective(const peernet::CommunitySeries& series,
                               const std::vector<int>& prompts,
                               peernet::FeatureSet features, double lambda,
                               double mu, const std::vector<double>& beta) {
  const int n = series.participant_count();
  const int k = features == peernet::FeatureSet::linear ? 2 : 3;
  const double m = static_cast<double>(prompts.size());

  double data_term = 0.0;
  double smooth_term = 0.0;
  for (int p : prompts) {
    std::vector<double> phi = {1.0, static_cast<double>(p)};
    if (k == 3) phi.push_back(std::sqrt(static_cast<double>(p)));
    std::vector<double> predicted(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < k; ++t) predicted[i] += phi[t] * beta[t * n + i];
    }
    const auto& record = series.prompts[p - 1];
    for (int i = 0; i < n; ++i) {
      const double residual = record.ratings.values[i] - predicted[i];
      data_term += residual * residual;
    }
    const Eigen::MatrixXi& weights = record.graph.weights();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double diff = predicted[i] - predicted[j];
        smooth_term += weights(i, j) * diff * diff;
      }
    }
  }

  double shrink_term = 0.0;
  for (int t = 1; t < k; ++t) {
    for (int i = 0; i < n; ++i) {
      shrink_term += beta[t * n + i] * beta[t * n + i];
    }
  }
  return data_term / (2.0 * m) + lambda * smooth_term + mu * shrink_term;
}

// Textbook per-participant least squares: solve (Phi^T Phi) b = Phi^T y.
inline std::vector<double> ols_fit(const std::vector<int>& prompts,
                                   const std::vector<double>& y,
                                   peernet::FeatureSet features) {
  const int k = features == peernet::FeatureSet::linear ? 2 : 3;
  const int m = static_cast<int>(prompts.size());
  std::vector<std::vector<double>> normal(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (int row = 0; row < m; ++row) {
    const double p = static_cast<double>(prompts[row]);
    std::vector<double> phi = {1.0, p};
    if (k == 3) phi.push_back(std::sqrt(p));
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) normal[s][t] += phi[s] * phi[t];
      rhs[s] += phi[s] * y[row];
    }
  }
  return solve_dense(normal, rhs);
}

// Random symmetric integer-weight graph, possibly disconnected.
inline Eigen::MatrixXi random_weighted_graph(std::mt19937_64& rng, int n,
                                             int max_weight) {
  std::uniform_int_distribution<int> weight(0, max_weight);
  Eigen::MatrixXi weights = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int w = weight(rng);
      weights(i, j) = w;
      weights(j, i) = w;
    }
  }
  return weights;
}

// Random fitting instance: fresh unit-weight graph and uniform ratings per
// prompt. Only used to sample test cases, not as a reference computation.
inline peernet::CommunitySeries random_series(std::mt19937_64& rng, int n,
                                              int prompts,
                                              double edge_prob = 0.5) {
  peernet::CommunitySeries series;
  for (int i = 0; i < n; ++i) {
    series.roster.push_back("p" + std::to_string(i + 1));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> rating(1.0, 5.0);
  for (int p = 0; p < prompts; ++p) {
    Eigen::MatrixXi weights = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (coin(rng) < edge_prob) {
          weights(i, j) = 1;
          weights(j, i) = 1;
        }
      }
    }
    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) values[i] = rating(rng);
    series.prompts.push_back({peernet::InteractionGraph(std::move(weights)),
                              peernet::RatingSignal(std::move(values))});
  }
  return series;
}

// Connected unit-weight graph: random spanning tree plus extra edges.
inline Eigen::MatrixXi random_connected_graph(std::mt19937_64& rng, int n,
                                              double extra_edge_prob = 0.2) {
  Eigen::MatrixXi weights = Eigen::MatrixXi::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int j = parent(rng);
    weights(i, j) = 1;
    weights(j, i) = 1;
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (weights(i, j) == 0 && coin(rng) < extra_edge_prob) {
        weights(i, j) = 1;
        weights(j, i) = 1;
      }
    }
  }
  return weights;
}

}  // namespace oracle
