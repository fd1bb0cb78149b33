#include "permround/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permround/errors.hpp"
#include "permround/gaussian.hpp"
#include "parallel_util.hpp"
#include "rounding_internal.hpp"

namespace permround {
namespace detail {
namespace {

constexpr int kMaxTieRetries = 8;

// Ascending argsort; false if two entries compare equal.
bool argsort_distinct(std::span<const double> v, std::vector<std::int32_t>& order) {
    order.resize(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::int32_t a, std::int32_t b) { return v[a] < v[b]; });
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (v[order[k - 1]] == v[order[k]]) return false;
    }
    return true;
}

}  // namespace

bool match_into(std::span<const double> x, std::span<const double> y, RoundingWorkspace& ws) {
    if (!argsort_distinct(x, ws.phi) || !argsort_distinct(y, ws.psi)) return false;
    ws.image.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        ws.image[static_cast<std::size_t>(ws.phi[k])] = ws.psi[k];
    }
    return true;
}

void sample_rounding_core(const RowMatrixXd& m, RandomStream& stream, Eigen::VectorXd& x,
                          Eigen::VectorXd& y, RoundingWorkspace& ws) {
    const auto n = static_cast<std::size_t>(m.rows());
    for (int attempt = 0; attempt < kMaxTieRetries; ++attempt) {
        fill_gaussian(std::span<double>(x.data(), n), stream);
        y.noalias() = m * x;
        if (match_into(std::span<const double>(x.data(), n),
                       std::span<const double>(y.data(), n), ws)) {
            return;
        }
    }
    throw NumericalError("sample_rounding: tied coordinates in " +
                         std::to_string(kMaxTieRetries) +
                         " consecutive Gaussian draws; generator looks broken");
}

}  // namespace detail

using detail::RoundingWorkspace;
using detail::match_into;
using detail::sample_rounding_core;

std::optional<Permutation> match_order_statistics(std::span<const double> x,
                                                  std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw ValidationError("match_order_statistics: dimension mismatch");
    }
    RoundingWorkspace ws;
    if (!match_into(x, y, ws)) return std::nullopt;
    return Permutation(std::move(ws.image));
}

Permutation round_at(const OrthogonalMatrix& u, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(u.n())) {
        throw ValidationError("round_at: dimension mismatch");
    }
    Eigen::Map<const Eigen::VectorXd> xm(x.data(), u.n());
    const Eigen::VectorXd y = u.mat() * xm;
    auto sigma = match_order_statistics(x, std::span<const double>(y.data(), x.size()));
    if (!sigma) throw TiedCoordinatesError();
    return std::move(*sigma);
}

std::vector<double> residual(const OrthogonalMatrix& u, std::span<const double> x,
                             const Permutation& sigma) {
    if (x.size() != static_cast<std::size_t>(u.n()) || sigma.size() != x.size()) {
        throw ValidationError("residual: dimension mismatch");
    }
    Eigen::Map<const Eigen::VectorXd> xm(x.data(), u.n());
    const Eigen::VectorXd y = u.mat() * xm;
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        z[static_cast<std::size_t>(sigma(j))] = y[static_cast<Eigen::Index>(sigma(j))] - x[j];
    }
    return z;
}

RoundingSample sample_rounding(const OrthogonalMatrix& u, RandomStream& stream) {
    const auto n = static_cast<std::size_t>(u.n());
    Eigen::VectorXd x(u.n()), y(u.n());
    RoundingWorkspace ws;
    sample_rounding_core(u.mat(), stream, x, y, ws);
    std::vector<double> xv(x.data(), x.data() + n);
    Permutation sigma(ws.image);
    std::vector<double> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        z[static_cast<std::size_t>(sigma(j))] =
            y[static_cast<Eigen::Index>(sigma(j))] - xv[j];
    }
    return RoundingSample{std::move(xv), std::move(sigma), std::move(z)};
}

void EmpiricalDistribution::add(const Permutation& sigma, std::uint64_t count) {
    counts_[sigma] += count;
    total_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    for (const auto& [sigma, count] : other.counts_) counts_[sigma] += count;
    total_ += other.total_;
}

std::uint64_t EmpiricalDistribution::count(const Permutation& sigma) const {
    const auto it = counts_.find(sigma);
    return it == counts_.end() ? 0 : it->second;
}

ResidualMoments estimate_residual_moments(const OrthogonalMatrix& u, std::size_t n_samples,
                                          const RandomStream& stream, unsigned threads) {
    if (n_samples < 2) {
        throw ValidationError("estimate_residual_moments: need at least 2 samples");
    }
    const auto n = static_cast<std::size_t>(u.n());
    const unsigned workers = std::max(1u, threads);
    std::vector<Eigen::VectorXd> sum_sq(workers, Eigen::VectorXd::Zero(u.n()));
    std::vector<Eigen::VectorXd> sum_quad(workers, Eigen::VectorXd::Zero(u.n()));

    detail::parallel_chunks(n_samples, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
        RandomStream local = stream.substream(w);
        Eigen::VectorXd x(u.n()), y(u.n());
        RoundingWorkspace ws;
        auto& s2 = sum_sq[w];
        auto& s4 = sum_quad[w];
        for (std::size_t i = begin; i < end; ++i) {
            sample_rounding_core(u.mat(), local, x, y, ws);
            // z component at position psi(k) pairs y at rank k with x at rank k.
            for (std::size_t k = 0; k < n; ++k) {
                const auto pos = static_cast<Eigen::Index>(ws.psi[k]);
                const double zi = y[pos] - x[static_cast<Eigen::Index>(ws.phi[k])];
                const double sq = zi * zi;
                s2[pos] += sq;
                s4[pos] += sq * sq;
            }
        }
    });

    Eigen::VectorXd s2 = Eigen::VectorXd::Zero(u.n());
    Eigen::VectorXd s4 = Eigen::VectorXd::Zero(u.n());
    for (unsigned w = 0; w < workers; ++w) {
        s2 += sum_sq[w];
        s4 += sum_quad[w];
    }

    ResidualMoments out;
    out.sample_count = n_samples;
    out.per_coordinate_second_moment.resize(n);
    out.standard_errors.resize(n);
    const double nd = static_cast<double>(n_samples);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double mean = s2[ii] / nd;
        const double var = std::max(0.0, (s4[ii] / nd - mean * mean) * nd / (nd - 1.0));
        out.per_coordinate_second_moment[i] = mean;
        out.standard_errors[i] = std::sqrt(var / nd);
        out.total_second_moment += mean;
    }
    return out;
}

EmpiricalDistribution estimate_distribution(const OrthogonalMatrix& u, std::size_t n_samples,
                                            const RandomStream& stream, unsigned threads) {
    if (n_samples < 1) {
        throw ValidationError("estimate_distribution: need at least 1 sample");
    }
    const unsigned workers = std::max(1u, threads);
    std::vector<EmpiricalDistribution> parts(workers);

    detail::parallel_chunks(n_samples, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
        RandomStream local = stream.substream(w);
        Eigen::VectorXd x(u.n()), y(u.n());
        RoundingWorkspace ws;
        for (std::size_t i = begin; i < end; ++i) {
            sample_rounding_core(u.mat(), local, x, y, ws);
            parts[w].add(Permutation(ws.image));
        }
    });

    EmpiricalDistribution out;
    for (const auto& part : parts) out.merge(part);
    return out;
}

}  // namespace permround
