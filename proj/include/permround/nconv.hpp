#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "permround/random.hpp"
#include "permround/rounding.hpp"

namespace permround {

/// Rank-one matrix with entries x_i * y_j.
SquareMatrix outer_product(std::span<const double> x, std::span<const double> y);

/// Which side of the permutation matrices the positive semidefinite weights
/// sit on in the combination being estimated.
enum class NconvForm {
    kWeightsTimesPerms,  ///< sum_sigma A_sigma * sigma (default)
    kPermsTimesWeights,  ///< sum_sigma sigma * A_sigma
};

/// Monte Carlo estimate of a combination sum A_sigma sigma approximating an
/// orthogonal matrix, built from Gaussian samples x_i with weights
/// A_i = x_i (x) x_i.
struct NconvApprox {
    explicit NconvApprox(std::size_t dimension)
        : n(dimension),
          a_hat(SquareMatrix::zero(static_cast<Eigen::Index>(dimension))),
          weight_sum(SquareMatrix::zero(static_cast<Eigen::Index>(dimension))) {}

    std::size_t n = 0;
    std::size_t sample_count = 0;
    NconvForm form = NconvForm::kWeightsTimesPerms;
    SquareMatrix a_hat;       ///< the estimated combination
    SquareMatrix weight_sum;  ///< (1/N) sum x_i (x) x_i, an estimate of I
    /// Aggregated (1/N) sum_{i: sigma_i = sigma} ||x_i||^2, keyed by the
    /// recorded permutation. Its normalized value trace/n tracks the
    /// empirical frequency of sigma.
    std::unordered_map<Permutation, double, PermutationHash> per_perm_trace;
    EmpiricalDistribution perm_counts;
    /// Full per-permutation weight matrices; populated only on request for
    /// small n (the support can reach N distinct permutations otherwise).
    std::optional<std::unordered_map<Permutation, RowMatrixXd, PermutationHash>>
        per_perm_weights;
};

struct ApproximateOptions {
    NconvForm form = NconvForm::kWeightsTimesPerms;
    unsigned threads = 1;
    bool keep_per_perm_weights = false;  ///< requires n <= 8
};

/// Samples N Gaussian points and accumulates the Monte Carlo combination.
///
/// For the default form (weights on the left), the rounding is taken at U^T
/// per sample and the recorded permutation is its inverse, which is exactly
/// what makes a_hat converge to U: for a permutation matrix input the
/// recorded permutation equals that permutation on every sample. The mirrored
/// form rounds U itself.
///
/// Deterministic for fixed (seed, stream_id, threads).
NconvApprox approximate(const OrthogonalMatrix& u, std::size_t n_samples,
                        const RandomStream& stream, const ApproximateOptions& options = {});

struct ErrorReport {
    double linf = 0.0;                  ///< ||U - a_hat||_inf
    double frob = 0.0;                  ///< ||U - a_hat||_F
    std::vector<double> column_errors;  ///< per-column Euclidean errors
    double weight_deviation = 0.0;      ///< ||weight_sum - I||_inf
};

ErrorReport error_report(const OrthogonalMatrix& u, const NconvApprox& approx);

/// Max over observed permutations of
/// |per_perm_trace(sigma)/n - count(sigma)/N|. Shrinks as 1/sqrt(N): the
/// rounding regions are cones, so the squared radius is independent of which
/// region a sample lands in.
double trace_probability_check(const NconvApprox& approx);

/// The extreme combination with one-dimensional projection weights on the
/// identity and the transpositions (1 k): its matrix has first row all ones,
/// every other entry zero, and operator norm sqrt(n). Built literally from
/// the projection weights and audited against the closed form. Requires
/// n >= 2.
SquareMatrix pathological_example(std::size_t n);

struct MonteCarloEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t sample_count = 0;
};

/// Monte Carlo estimate of E ||L a||^2 over standard Gaussian a, which equals
/// ||L||_F^2 exactly; used as an independent validation of norm_frobenius.
/// Requires N >= 2.
MonteCarloEstimate frobenius_via_gaussian(const SquareMatrix& l, std::size_t n_samples,
                                          const RandomStream& stream);

struct EigenvalueRange {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

/// Extreme eigenvalues of weight_sum (symmetric eigensolve); the weight sum
/// is positive semidefinite up to roundoff, so min >= -1e-9 * max is the
/// expected outcome.
EigenvalueRange weight_sum_eigenvalue_range(const NconvApprox& approx);

}  // namespace permround
