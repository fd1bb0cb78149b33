#pragma once

// Test-side statistical oracles, kept independent of the library paths they
// are used to check.

#include <cstdint>
#include <functional>
#include <vector>

namespace teststat {

/// Regularized lower incomplete gamma P(a, x) by series / continued fraction.
double regularized_gamma_p(double a, double x);

/// Chi-square CDF with `dof` degrees of freedom.
double chi_square_cdf(double x, double dof);

/// Inverse of chi_square_cdf by bisection (p in (0,1)).
double chi_square_quantile(double p, double dof);

/// Pearson statistic sum (observed - expected)^2 / expected.
double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& expected);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Slope of the least-squares line through (x_i, y_i).
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace teststat
