#pragma once

#include <cstddef>
#include <utility>

#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "permround/random.hpp"

namespace permround {

/// Pair of symmetric matrices (A, B) defining the assignment objective
/// f(sigma) = <A, sigma B sigma^{-1}>, with the spectral data of both
/// matrices computed once at construction and reused by the bound, the
/// relaxed minimizer and the heuristic.
class QapInstance {
public:
    static constexpr double kSymmetryTol = 1e-10;

    /// Throws ValidationError unless A and B are symmetric (entrywise within
    /// kSymmetryTol) and of equal dimension. Non-symmetric data is rejected
    /// rather than silently symmetrized; see symmetrize().
    QapInstance(SquareMatrix a, SquareMatrix b);

    Eigen::Index n() const { return a_.n(); }
    const SquareMatrix& a() const { return a_; }
    const SquareMatrix& b() const { return b_; }

    /// Eigenvalues in ascending order and matching eigenvector columns.
    const Eigen::VectorXd& eigenvalues_a() const { return evals_a_; }
    const Eigen::VectorXd& eigenvalues_b() const { return evals_b_; }
    const Eigen::MatrixXd& eigenvectors_a() const { return evecs_a_; }
    const Eigen::MatrixXd& eigenvectors_b() const { return evecs_b_; }

private:
    SquareMatrix a_;
    SquareMatrix b_;
    Eigen::VectorXd evals_a_;
    Eigen::VectorXd evals_b_;
    Eigen::MatrixXd evecs_a_;
    Eigen::MatrixXd evecs_b_;
};

/// (A + A^T) / 2, for callers holding non-symmetric data.
SquareMatrix symmetrize(const SquareMatrix& a);

/// f(sigma) = <A, sigma B sigma^{-1}> = sum_ij A(sigma(i), sigma(j)) B(i, j).
double objective(const QapInstance& inst, const Permutation& sigma);

/// Extension of the objective to the orthogonal group: <A, U B U^T>.
/// Restricted to permutation matrices it coincides with objective().
double objective_orthogonal(const QapInstance& inst, const OrthogonalMatrix& u);

/// The spectral lower bound: with both spectra sorted descending,
/// sum_i lambda_i mu_{n+1-i}. This is the exact minimum of the objective
/// over the orthogonal group, hence a lower bound over permutations.
double eigenvalue_bound(const QapInstance& inst);

/// Orthogonal matrix achieving eigenvalue_bound, assembled from the two
/// eigenvector bases with the spectra anti-sorted. Non-unique under
/// degenerate eigenvalues; only the achieved value is contractual.
OrthogonalMatrix orthogonal_minimizer(const QapInstance& inst);

struct QapResult {
    double lower_bound;
    OrthogonalMatrix orthogonal_minimizer;
    Permutation best_permutation;
    double best_value;
    std::size_t samples_used;
};

/// Rounds the relaxed minimizer at N Gaussian points and keeps the best
/// objective value among the distinct permutations seen, always including
/// the identity permutation as a baseline. Requires N >= 1.
QapResult rounding_heuristic(const QapInstance& inst, std::size_t n_samples,
                             const RandomStream& stream);

/// Exact minimizer over all n! permutations. Guarded to n <= 8.
std::pair<Permutation, double> brute_force(const QapInstance& inst);

/// The zero-gap family on n = 2m points: A = [[1,1],[1,1]] (x) J and
/// B = [[1,0],[0,-1]] (x) J with J the m-by-m all-ones block. The objective
/// vanishes identically on permutations while the relaxation reaches
/// -n^2/2.
QapInstance counterexample(std::size_t m);

}  // namespace permround
