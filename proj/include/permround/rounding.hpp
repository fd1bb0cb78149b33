#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "permround/random.hpp"

namespace permround {

/// A coordinate value appeared twice where the rounding needs a strict order.
/// Probability zero under Gaussian sampling; callers decide whether to
/// resample.
class TiedCoordinatesError : public std::runtime_error {
public:
    TiedCoordinatesError() : std::runtime_error("tied coordinates; rounding undefined") {}
};

/// Permutation sigma matching the k-th smallest entry of x to the k-th
/// smallest entry of y: with phi, psi the sorting orders of x and y,
/// sigma(phi(k)) = psi(k). Returns nullopt if either vector has a repeated
/// entry (exact comparison).
std::optional<Permutation> match_order_statistics(std::span<const double> x,
                                                  std::span<const double> y);

/// Rounding of U at x: match_order_statistics(x, U*x).
/// Requires pairwise distinct coordinates in both x and U*x; throws
/// TiedCoordinatesError otherwise.
Permutation round_at(const OrthogonalMatrix& u, std::span<const double> x);

/// Residual z = U*x - sigma*x for sigma = round_at(u, x). Since sigma*x is a
/// reordering of x, ||z|| measures pure mismatch of the two orderings.
std::vector<double> residual(const OrthogonalMatrix& u, std::span<const double> x,
                             const Permutation& sigma);

/// One Gaussian draw together with its rounding and residual.
struct RoundingSample {
    std::vector<double> x;
    Permutation sigma;
    std::vector<double> z;
};

/// Draws x from the standard Gaussian measure and rounds u at it, retrying on
/// tied coordinates (at most 8 attempts; exhausting them indicates a broken
/// generator and raises NumericalError).
RoundingSample sample_rounding(const OrthogonalMatrix& u, RandomStream& stream);

/// Counts of observed permutations over a number of independent roundings.
class EmpiricalDistribution {
public:
    using CountMap = std::unordered_map<Permutation, std::uint64_t, PermutationHash>;

    void add(const Permutation& sigma, std::uint64_t count = 1);
    void merge(const EmpiricalDistribution& other);

    std::uint64_t total() const { return total_; }
    std::uint64_t count(const Permutation& sigma) const;
    std::size_t support_size() const { return counts_.size(); }
    const CountMap& counts() const { return counts_; }

private:
    CountMap counts_;
    std::uint64_t total_ = 0;
};

/// Monte Carlo estimates of the per-coordinate second moments of the
/// residual.
struct ResidualMoments {
    std::vector<double> per_coordinate_second_moment;  ///< mean of z_i^2
    double total_second_moment = 0.0;                  ///< sum of the above
    std::size_t sample_count = 0;
    std::vector<double> standard_errors;  ///< sample std of z_i^2 over sqrt(N)
};

/// Estimates E z_i^2 over N independent Gaussian roundings of u. Workers
/// draw from substreams of `stream`; results are deterministic for a fixed
/// (seed, stream_id, threads). Requires N >= 2.
ResidualMoments estimate_residual_moments(const OrthogonalMatrix& u, std::size_t n_samples,
                                          const RandomStream& stream, unsigned threads = 1);

/// Empirical distribution of round_at(u, x) over N independent draws.
/// Requires N >= 1; threading contract as above.
EmpiricalDistribution estimate_distribution(const OrthogonalMatrix& u, std::size_t n_samples,
                                            const RandomStream& stream, unsigned threads = 1);

}  // namespace permround
