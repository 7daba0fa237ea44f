#pragma once

#include <Eigen/Dense>

#include <vector>

namespace peernet {

/// Undirected interaction network of one community at one prompt.
///
/// Edge weights count exchanged comments, so they are nonnegative integers
/// with a zero diagonal. All instances are validated on construction and
/// immutable afterwards; sharing across threads is safe.
class InteractionGraph {
 public:
  InteractionGraph() = default;

  /// Throws std::invalid_argument unless `weights` is square, symmetric,
  /// nonnegative and zero on the diagonal.
  explicit InteractionGraph(Eigen::MatrixXi weights);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXi& weights() const { return weights_; }

  /// Total number of edges with nonzero weight (unordered pairs).
  int edge_count() const;

 private:
  Eigen::MatrixXi weights_;
};

/// Per-participant average overall rating at one prompt (a graph signal).
struct RatingSignal {
  Eigen::VectorXd values;

  RatingSignal() = default;
  /// Throws std::invalid_argument if any entry is NaN or infinite.
  explicit RatingSignal(Eigen::VectorXd v);

  int size() const { return static_cast<int>(values.size()); }
};

/// Combinatorial Laplacian of an interaction graph: diag(degrees) - weights.
/// Rows sum to zero and the matrix is positive semidefinite.
struct LaplacianMatrix {
  Eigen::MatrixXd entries;
  Eigen::VectorXd degrees;

  int size() const { return static_cast<int>(degrees.size()); }
  double max_degree() const {
    return degrees.size() == 0 ? 0.0 : degrees.maxCoeff();
  }
};

/// degrees[i] = sum_j weights(i,j); entries = diag(degrees) - weights.
/// Accepts every valid graph, including edgeless ones.
LaplacianMatrix build_laplacian(const InteractionGraph& graph);

/// Smoothness of `signal` with respect to the graph: r^T L r, which equals
/// the weighted sum of squared rating differences over all edges.
/// Throws std::invalid_argument on dimension mismatch.
double total_variation(const LaplacianMatrix& laplacian,
                       const RatingSignal& signal);

/// Arithmetic mean of the signal. Throws std::invalid_argument when empty.
double average_rating(const RatingSignal& signal);

/// Scales a series of nonnegative values to unit Euclidean norm.
/// Throws std::invalid_argument on negative entries or an all-zero input.
std::vector<double> normalize_series(const std::vector<double>& values);

}  // namespace peernet
