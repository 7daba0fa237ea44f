#include "peernet/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace peernet {

InteractionGraph::InteractionGraph(Eigen::MatrixXi weights)
    : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) {
    throw std::invalid_argument("interaction graph: weight matrix must be square");
  }
  const int n = static_cast<int>(weights_.rows());
  for (int i = 0; i < n; ++i) {
    if (weights_(i, i) != 0) {
      throw std::invalid_argument(
          "interaction graph: nonzero self-interaction at node " +
          std::to_string(i));
    }
    for (int j = 0; j < i; ++j) {
      if (weights_(i, j) < 0) {
        throw std::invalid_argument("interaction graph: negative weight at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
      if (weights_(i, j) != weights_(j, i)) {
        throw std::invalid_argument("interaction graph: asymmetric weights at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

int InteractionGraph::edge_count() const {
  int count = 0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (weights_(i, j) > 0) ++count;
    }
  }
  return count;
}

RatingSignal::RatingSignal(Eigen::VectorXd v) : values(std::move(v)) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("rating signal: non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

LaplacianMatrix build_laplacian(const InteractionGraph& graph) {
  const Eigen::MatrixXd weights = graph.weights().cast<double>();
  LaplacianMatrix laplacian;
  laplacian.degrees = weights.rowwise().sum();
  laplacian.entries = Eigen::MatrixXd(laplacian.degrees.asDiagonal()) - weights;
  return laplacian;
}

double total_variation(const LaplacianMatrix& laplacian,
                       const RatingSignal& signal) {
  if (laplacian.size() != signal.size()) {
    throw std::invalid_argument(
        "total_variation: signal length " + std::to_string(signal.size()) +
        " does not match Laplacian size " + std::to_string(laplacian.size()));
  }
  return signal.values.dot(laplacian.entries * signal.values);
}

double average_rating(const RatingSignal& signal) {
  if (signal.size() == 0) {
    throw std::invalid_argument("average_rating: empty signal");
  }
  return signal.values.mean();
}

std::vector<double> normalize_series(const std::vector<double>& values) {
  double sum_sq = 0.0;
  for (double v : values) {
    if (v < 0.0) {
      throw std::invalid_argument("normalize_series: negative entry");
    }
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) {
    throw std::invalid_argument(
        "normalize_series: all-zero series has no defined normalization");
  }
  const double norm = std::sqrt(sum_sq);
  std::vector<double> unit(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    unit[i] = values[i] / norm;
  }
  return unit;
}

}  // namespace peernet
