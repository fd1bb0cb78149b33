#pragma once

#include <cstddef>
#include <vector>

#include "permround/random.hpp"

namespace permround {

/// Chernoff bound on P{omega_k < alpha} for the k-th smallest of n iid draws
/// with continuous strictly increasing CDF F, given F_alpha = F(alpha):
/// exp(-(n / 3 F_alpha) (k/n - F_alpha)^2). Hypothesis: F_alpha <= k/n <
/// 2 F_alpha; the boundary F_alpha = k/n gives the vacuous bound 1.
double chernoff_order_stat_lower(std::size_t k, std::size_t n, double f_alpha);

/// Chernoff bound on P{omega_k > alpha}: exp(-(n / 2 F_alpha)
/// (k/n - F_alpha)^2). Hypothesis: F_alpha >= k/n (equality is vacuous).
double chernoff_order_stat_upper(std::size_t k, std::size_t n, double f_alpha);

struct CorollaryTails {
    double below_alpha_minus;  ///< exp(-eps^2 k / (3 (1 - eps)))
    double above_alpha_plus;   ///< exp(-eps^2 k / (2 (1 + eps)))
};

/// Tail bounds at the quantile thresholds F(alpha^-) = (1-eps) k/n and
/// F(alpha^+) = (1+eps) k/n. Requires 1 <= k <= n/2 and 0 < eps < 1/2.
CorollaryTails corollary_tails(std::size_t k, std::size_t n, double eps);

/// Two-sided concentration data for the k-th smallest of n standard Gaussian
/// draws.
struct OrderStatBound {
    std::size_t k = 0;
    std::size_t n = 0;
    double epsilon = 0.0;
    double alpha_minus = 0.0;      ///< Phi^{-1}((1-eps) k/n)
    double alpha_plus = 0.0;       ///< Phi^{-1}((1+eps) k/n)
    double lower_tail_bound = 1.0;  ///< P{omega_k < alpha_minus} <= this
    double upper_tail_bound = 1.0;  ///< P{omega_k > alpha_plus} <= this
    double gap_bound = 0.0;        ///< eps sqrt(8 pi) / (1 - eps)
};

/// Evaluates the Gaussian order-statistic bounds: both tail bounds equal
/// exp(-eps^2 k / 3) and alpha_plus - alpha_minus <= gap_bound (checked).
/// Requires 1 <= k <= n/2, 0 < eps < 1/2 and (1+eps) k/n < 1.
OrderStatBound gaussian_order_stat_bound(std::size_t k, std::size_t n, double eps);

/// Per-trial k-th smallest of n standard Gaussian draws (an empirical CDF
/// sample of omega_k). Requires 1 <= k <= n, trials >= 1; deterministic for
/// fixed (seed, stream_id, threads).
std::vector<double> simulate_order_stat(std::size_t k, std::size_t n, std::size_t trials,
                                        const RandomStream& stream, unsigned threads = 1);

/// The epsilon choice 3 sqrt(ln n / k) that turns the order-statistic tail
/// bound into n^{-3} once k >= 36 ln n.
double scaling_epsilon(std::size_t k, std::size_t n);

}  // namespace permround
