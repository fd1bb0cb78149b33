#include "permround/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "permround/errors.hpp"
#include "permround/gaussian.hpp"
#include "parallel_util.hpp"

namespace permround {
namespace {

constexpr double kSqrt8Pi = 5.0132565492620005;  // sqrt(8 pi)

void check_rank(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw ValidationError("order statistic rank k out of range");
}

}  // namespace

double chernoff_order_stat_lower(std::size_t k, std::size_t n, double f_alpha) {
    check_rank(k, n);
    if (!(f_alpha > 0.0 && f_alpha < 1.0)) {
        throw ValidationError("chernoff_order_stat_lower: F(alpha) must lie in (0, 1)");
    }
    const double ratio = static_cast<double>(k) / static_cast<double>(n);
    if (!(f_alpha <= ratio && ratio < 2.0 * f_alpha)) {
        throw ValidationError("chernoff_order_stat_lower: requires F(alpha) <= k/n < 2 F(alpha)");
    }
    const double d = ratio - f_alpha;
    return std::exp(-(static_cast<double>(n) / (3.0 * f_alpha)) * d * d);
}

double chernoff_order_stat_upper(std::size_t k, std::size_t n, double f_alpha) {
    check_rank(k, n);
    if (!(f_alpha > 0.0 && f_alpha < 1.0)) {
        throw ValidationError("chernoff_order_stat_upper: F(alpha) must lie in (0, 1)");
    }
    const double ratio = static_cast<double>(k) / static_cast<double>(n);
    if (!(f_alpha >= ratio)) {
        throw ValidationError("chernoff_order_stat_upper: requires F(alpha) >= k/n");
    }
    const double d = ratio - f_alpha;
    return std::exp(-(static_cast<double>(n) / (2.0 * f_alpha)) * d * d);
}

CorollaryTails corollary_tails(std::size_t k, std::size_t n, double eps) {
    check_rank(k, n);
    if (2 * k > n) throw ValidationError("corollary_tails: requires k <= n/2");
    if (!(eps > 0.0 && eps < 0.5)) {
        throw ValidationError("corollary_tails: requires 0 < eps < 1/2");
    }
    const double kd = static_cast<double>(k);
    return {std::exp(-eps * eps * kd / (3.0 * (1.0 - eps))),
            std::exp(-eps * eps * kd / (2.0 * (1.0 + eps)))};
}

OrderStatBound gaussian_order_stat_bound(std::size_t k, std::size_t n, double eps) {
    check_rank(k, n);
    if (2 * k > n) throw ValidationError("gaussian_order_stat_bound: requires k <= n/2");
    if (!(eps > 0.0 && eps < 0.5)) {
        throw ValidationError("gaussian_order_stat_bound: requires 0 < eps < 1/2");
    }
    const double ratio = static_cast<double>(k) / static_cast<double>(n);
    if (!((1.0 + eps) * ratio < 1.0)) {
        throw ValidationError("gaussian_order_stat_bound: (1+eps) k/n must be below 1");
    }
    OrderStatBound out;
    out.k = k;
    out.n = n;
    out.epsilon = eps;
    out.alpha_minus = gaussian_icdf((1.0 - eps) * ratio);
    out.alpha_plus = gaussian_icdf((1.0 + eps) * ratio);
    const double tail = std::exp(-eps * eps * static_cast<double>(k) / 3.0);
    out.lower_tail_bound = tail;
    out.upper_tail_bound = tail;
    out.gap_bound = eps * kSqrt8Pi / (1.0 - eps);
    if (!(out.alpha_plus - out.alpha_minus <= out.gap_bound)) {
        throw NumericalError("gaussian_order_stat_bound: gap inequality violated");
    }
    return out;
}

std::vector<double> simulate_order_stat(std::size_t k, std::size_t n, std::size_t trials,
                                        const RandomStream& stream, unsigned threads) {
    check_rank(k, n);
    if (trials < 1) throw ValidationError("simulate_order_stat: need at least 1 trial");
    std::vector<double> out(trials);
    detail::parallel_chunks(trials, std::max(1u, threads),
                            [&](unsigned w, std::size_t begin, std::size_t end) {
                                RandomStream local = stream.substream(w);
                                std::vector<double> draws(n);
                                for (std::size_t t = begin; t < end; ++t) {
                                    fill_gaussian(draws, local);
                                    std::nth_element(draws.begin(),
                                                     draws.begin() + static_cast<long>(k - 1),
                                                     draws.end());
                                    out[t] = draws[k - 1];
                                }
                            });
    return out;
}

double scaling_epsilon(std::size_t k, std::size_t n) {
    check_rank(k, n);
    return 3.0 * std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(k));
}

}  // namespace permround
