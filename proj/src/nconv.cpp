#include "permround/nconv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permround/errors.hpp"
#include "permround/gaussian.hpp"
#include "parallel_util.hpp"
#include "rounding_internal.hpp"

namespace permround {

SquareMatrix outer_product(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw ValidationError("outer_product: dimension mismatch");
    }
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::Map<const Eigen::VectorXd> xm(x.data(), n);
    Eigen::Map<const Eigen::VectorXd> ym(y.data(), n);
    return SquareMatrix(RowMatrixXd(xm * ym.transpose()));
}

namespace {

struct WorkerAccumulator {
    RowMatrixXd a_hat;
    RowMatrixXd weight;
    std::unordered_map<Permutation, double, PermutationHash> trace;
    EmpiricalDistribution counts;
    std::unordered_map<Permutation, RowMatrixXd, PermutationHash> per_perm;
};

}  // namespace

NconvApprox approximate(const OrthogonalMatrix& u, std::size_t n_samples,
                        const RandomStream& stream, const ApproximateOptions& options) {
    if (n_samples < 1) throw ValidationError("approximate: need at least 1 sample");
    const auto n = static_cast<std::size_t>(u.n());
    const auto ni = u.n();
    if (options.keep_per_perm_weights && n > 8) {
        throw ValidationError("approximate: per-permutation weights only kept for n <= 8");
    }
    const bool weights_left = options.form == NconvForm::kWeightsTimesPerms;
    // The combination approximating U is built from roundings of U^T; the
    // mirrored form rounds U itself.
    const RowMatrixXd rounding_matrix = weights_left ? RowMatrixXd(u.mat().transpose()) : u.mat();

    const unsigned workers = std::max(1u, options.threads);
    std::vector<WorkerAccumulator> acc(workers);
    for (auto& a : acc) {
        a.a_hat = RowMatrixXd::Zero(ni, ni);
        a.weight = RowMatrixXd::Zero(ni, ni);
    }

    detail::parallel_chunks(n_samples, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
        RandomStream local = stream.substream(w);
        Eigen::VectorXd x(ni), y(ni), xp(ni);
        detail::RoundingWorkspace ws;
        std::vector<std::int32_t> recorded(n);
        auto& a = acc[w];
        for (std::size_t i = begin; i < end; ++i) {
            detail::sample_rounding_core(rounding_matrix, local, x, y, ws);
            // xp = tau applied to x, i.e. xp[tau(k)] = x[k].
            for (std::size_t k = 0; k < n; ++k) {
                xp[static_cast<Eigen::Index>(ws.image[k])] = x[static_cast<Eigen::Index>(k)];
            }
            if (weights_left) {
                // Sample term (x (x) x) * pi(tau^{-1}); recorded sigma = tau^{-1}.
                a.a_hat.noalias() += x * xp.transpose();
                for (std::size_t k = 0; k < n; ++k) {
                    recorded[static_cast<std::size_t>(ws.image[k])] =
                        static_cast<std::int32_t>(k);
                }
            } else {
                // Sample term pi(tau) * (x (x) x); recorded sigma = tau.
                a.a_hat.noalias() += xp * x.transpose();
                recorded = ws.image;
            }
            a.weight.noalias() += x * x.transpose();
            Permutation sigma(recorded);
            a.trace[sigma] += x.squaredNorm();
            a.counts.add(sigma);
            if (options.keep_per_perm_weights) {
                auto [it, inserted] = a.per_perm.try_emplace(sigma, RowMatrixXd::Zero(ni, ni));
                it->second.noalias() += x * x.transpose();
            }
        }
    });

    RowMatrixXd a_total = RowMatrixXd::Zero(ni, ni);
    RowMatrixXd w_total = RowMatrixXd::Zero(ni, ni);
    NconvApprox out(n);
    for (unsigned w = 0; w < workers; ++w) {
        a_total += acc[w].a_hat;
        w_total += acc[w].weight;
        for (const auto& [sigma, t] : acc[w].trace) out.per_perm_trace[sigma] += t;
        out.perm_counts.merge(acc[w].counts);
    }
    const double inv_n = 1.0 / static_cast<double>(n_samples);
    for (auto& [sigma, t] : out.per_perm_trace) t *= inv_n;

    out.n = n;
    out.sample_count = n_samples;
    out.form = options.form;
    out.a_hat = SquareMatrix(RowMatrixXd(a_total * inv_n));
    out.weight_sum = SquareMatrix(RowMatrixXd(w_total * inv_n));
    if (options.keep_per_perm_weights) {
        std::unordered_map<Permutation, RowMatrixXd, PermutationHash> merged;
        for (unsigned w = 0; w < workers; ++w) {
            for (const auto& [sigma, m] : acc[w].per_perm) {
                auto [it, inserted] = merged.try_emplace(sigma, RowMatrixXd::Zero(ni, ni));
                it->second += m;
            }
        }
        for (auto& [sigma, m] : merged) m *= inv_n;
        out.per_perm_weights = std::move(merged);
    }
    return out;
}

ErrorReport error_report(const OrthogonalMatrix& u, const NconvApprox& approx) {
    if (static_cast<std::size_t>(u.n()) != approx.n) {
        throw ValidationError("error_report: dimension mismatch");
    }
    const SquareMatrix diff = u.matrix() - approx.a_hat;
    ErrorReport out;
    out.linf = norm_inf(diff);
    out.frob = norm_frobenius(diff);
    out.column_errors = column_norms(diff);
    out.weight_deviation =
        (approx.weight_sum.mat() - RowMatrixXd::Identity(u.n(), u.n())).cwiseAbs().maxCoeff();
    return out;
}

double trace_probability_check(const NconvApprox& approx) {
    const double n = static_cast<double>(approx.n);
    const double total = static_cast<double>(approx.perm_counts.total());
    double worst = 0.0;
    for (const auto& [sigma, t] : approx.per_perm_trace) {
        const double frequency = static_cast<double>(approx.perm_counts.count(sigma)) / total;
        worst = std::max(worst, std::abs(t / n - frequency));
    }
    return worst;
}

SquareMatrix pathological_example(std::size_t n) {
    if (n < 2) throw ValidationError("pathological_example: need n >= 2");
    const auto ni = static_cast<Eigen::Index>(n);

    // Weight for the identity: projection onto coordinate 1; weight for the
    // transposition (1 k): projection onto coordinate k; zero elsewhere.
    auto projection = [&](Eigen::Index k) {
        RowMatrixXd p = RowMatrixXd::Zero(ni, ni);
        p(k, k) = 1.0;
        return p;
    };
    auto transposition_1k = [&](std::int32_t k) {
        std::vector<std::int32_t> image(n);
        std::iota(image.begin(), image.end(), 0);
        std::swap(image[0], image[static_cast<std::size_t>(k)]);
        return Permutation(std::move(image));
    };

    RowMatrixXd combination =
        perm_to_matrix(Permutation::identity(n)).mat() * projection(0);
    RowMatrixXd weight_total = projection(0);
    for (std::int32_t k = 1; k < static_cast<std::int32_t>(n); ++k) {
        combination += perm_to_matrix(transposition_1k(k)).mat() * projection(k);
        weight_total += projection(k);
    }

    // Audit: the weights resolve the identity and the combination collapses
    // to the closed form (first row all ones).
    RowMatrixXd closed_form = RowMatrixXd::Zero(ni, ni);
    closed_form.row(0).setOnes();
    if ((weight_total - RowMatrixXd::Identity(ni, ni)).cwiseAbs().maxCoeff() != 0.0 ||
        (combination - closed_form).cwiseAbs().maxCoeff() != 0.0) {
        throw NumericalError("pathological_example: audit against closed form failed");
    }
    return SquareMatrix(std::move(combination));
}

MonteCarloEstimate frobenius_via_gaussian(const SquareMatrix& l, std::size_t n_samples,
                                          const RandomStream& stream) {
    if (n_samples < 2) throw ValidationError("frobenius_via_gaussian: need at least 2 samples");
    RandomStream local = stream.substream(0);
    const Eigen::Index n = l.n();
    Eigen::VectorXd a(n), la(n);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        fill_gaussian(std::span<double>(a.data(), static_cast<std::size_t>(n)), local);
        la.noalias() = l.mat() * a;
        const double v = la.squaredNorm();
        sum += v;
        sum_sq += v * v;
    }
    const double nd = static_cast<double>(n_samples);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq / nd - mean * mean) * nd / (nd - 1.0));
    return {mean, std::sqrt(var / nd), n_samples};
}

EigenvalueRange weight_sum_eigenvalue_range(const NconvApprox& approx) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(approx.weight_sum.mat()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("weight_sum_eigenvalue_range: eigensolve failed");
    }
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

}  // namespace permround
