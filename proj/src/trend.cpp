#include "peernet/trend.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace peernet {

namespace stats {

namespace {

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz algorithm. Converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) {
      return h;
    }
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: a, b must be > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("regularized_incomplete_beta: x outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_prefactor = std::lgamma(a + b) - std::lgamma(a) -
                               std::lgamma(b) + a * std::log(x) +
                               b * std::log1p(-x);
  const double prefactor = std::exp(log_prefactor);
  // Use the expansion on the side where it converges fast, and the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return prefactor * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - prefactor * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int dof) {
  if (dof < 1) {
    throw std::invalid_argument("student_t_two_sided_p: dof must be >= 1");
  }
  const double nu = static_cast<double>(dof);
  const double x = nu / (nu + t * t);
  return regularized_incomplete_beta(nu / 2.0, 0.5, x);
}

}  // namespace stats

TrendResult linear_trend(const std::vector<double>& series) {
  const int count = static_cast<int>(series.size());
  if (count < 2) {
    throw std::invalid_argument("linear_trend: need at least 2 points, got " +
                                std::to_string(count));
  }
  const double n = static_cast<double>(count);
  const double x_mean = (n + 1.0) / 2.0;  // prompts are 1..T
  double y_mean = 0.0;
  for (double y : series) y_mean += y;
  y_mean /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < count; ++i) {
    const double dx = (i + 1) - x_mean;
    sxx += dx * dx;
    sxy += dx * (series[i] - y_mean);
  }

  TrendResult result;
  result.slope = sxy / sxx;
  result.intercept = y_mean - result.slope * x_mean;

  double sse = 0.0;
  for (int i = 0; i < count; ++i) {
    const double residual =
        series[i] - (result.intercept + result.slope * (i + 1));
    sse += residual * residual;
  }

  // Guard against a residual that is zero up to rounding: an exact line
  // gives p = 0 (p = 1 when flat), matching the degenerate convention.
  double scale = 0.0;
  for (double y : series) scale = std::max(scale, std::fabs(y));
  const bool zero_residual = sse <= 1e-24 * std::max(1.0, scale * scale);
  if (count == 2 || zero_residual) {
    result.stderr_slope = 0.0;
    result.p_value = result.slope == 0.0 ? 1.0 : 0.0;
    return result;
  }

  const double residual_variance = sse / (n - 2.0);
  result.stderr_slope = std::sqrt(residual_variance / sxx);
  result.p_value =
      stats::student_t_two_sided_p(result.slope / result.stderr_slope, count - 2);
  return result;
}

TrendResult group_average_trend(
    const std::vector<std::vector<double>>& per_group_series) {
  if (per_group_series.empty()) {
    throw std::invalid_argument("group_average_trend: no series given");
  }
  const std::size_t length = per_group_series.front().size();
  for (const auto& series : per_group_series) {
    if (series.size() != length) {
      throw std::invalid_argument(
          "group_average_trend: series lengths differ (" +
          std::to_string(series.size()) + " vs " + std::to_string(length) + ")");
    }
  }
  std::vector<double> averaged(length, 0.0);
  for (const auto& series : per_group_series) {
    for (std::size_t i = 0; i < length; ++i) averaged[i] += series[i];
  }
  for (double& value : averaged) {
    value /= static_cast<double>(per_group_series.size());
  }
  return linear_trend(averaged);
}

}  // namespace peernet
