#pragma once

#include <vector>

namespace peernet {

/// Ordinary least-squares line through a series indexed by prompt 1..T,
/// with a two-sided t-test on the slope.
struct TrendResult {
  double slope = 0.0;
  double intercept = 0.0;
  double p_value = 1.0;
  double stderr_slope = 0.0;
};

/// OLS slope/intercept of `series` against prompt index 1..T and the
/// two-sided p-value of the slope (t-statistic with T-2 degrees of
/// freedom). Degenerate conventions: zero residual variance yields
/// p = 0 for a nonzero slope and p = 1 for a flat series; T == 2 always
/// lands in one of those branches. Throws std::invalid_argument for T < 2.
TrendResult linear_trend(const std::vector<double>& series);

/// Elementwise mean across groups, then linear_trend on the averaged
/// series. Throws std::invalid_argument on an empty list or mismatched
/// lengths.
TrendResult group_average_trend(
    const std::vector<std::vector<double>>& per_group_series);

namespace stats {

/// Regularized incomplete beta function I_x(a, b), evaluated with the
/// continued-fraction expansion (modified Lentz iteration) applied on
/// whichever side of x = (a+1)/(a+b+2) converges, targeting 1e-10
/// absolute accuracy. Requires a > 0, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of a Student-t statistic with `dof` degrees
/// of freedom: I_{dof/(dof+t^2)}(dof/2, 1/2).
double student_t_two_sided_p(double t, int dof);

}  // namespace stats

}  // namespace peernet
