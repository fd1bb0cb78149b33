#include "permround/qap.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "permround/errors.hpp"
#include "permround/rounding.hpp"

namespace permround {
namespace {

void eigensolve(const SquareMatrix& m, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(m.mat()));
    if (solver.info() != Eigen::Success) {
        throw NumericalError("QapInstance: symmetric eigensolve failed");
    }
    evals = solver.eigenvalues();   // ascending
    evecs = solver.eigenvectors();  // matching columns
}

}  // namespace

QapInstance::QapInstance(SquareMatrix a, SquareMatrix b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.n() != b_.n()) throw ValidationError("QapInstance: dimension mismatch");
    const double asym_a = (a_.mat() - a_.mat().transpose()).cwiseAbs().maxCoeff();
    const double asym_b = (b_.mat() - b_.mat().transpose()).cwiseAbs().maxCoeff();
    if (asym_a > kSymmetryTol || asym_b > kSymmetryTol) {
        throw ValidationError("QapInstance: matrices must be symmetric (see symmetrize)");
    }
    eigensolve(a_, evals_a_, evecs_a_);
    eigensolve(b_, evals_b_, evecs_b_);
}

SquareMatrix symmetrize(const SquareMatrix& a) {
    return SquareMatrix(RowMatrixXd(0.5 * (a.mat() + a.mat().transpose())));
}

double objective(const QapInstance& inst, const Permutation& sigma) {
    const auto n = inst.n();
    if (static_cast<Eigen::Index>(sigma.size()) != n) {
        throw ValidationError("objective: dimension mismatch");
    }
    // <A, sigma B sigma^{-1}> accumulated in row-major order of A, so that
    // restricting objective_orthogonal to a permutation matrix reproduces
    // this sum term for term.
    const Permutation inv = sigma.inverse();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto ik = inv(static_cast<std::size_t>(k));
        for (Eigen::Index l = 0; l < n; ++l) {
            sum += inst.a()(k, l) * inst.b()(ik, inv(static_cast<std::size_t>(l)));
        }
    }
    return sum;
}

double objective_orthogonal(const QapInstance& inst, const OrthogonalMatrix& u) {
    if (u.n() != inst.n()) throw ValidationError("objective_orthogonal: dimension mismatch");
    const RowMatrixXd conjugated = u.mat() * inst.b().mat() * u.mat().transpose();
    const auto n = inst.n();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) sum += inst.a()(k, l) * conjugated(k, l);
    }
    return sum;
}

double eigenvalue_bound(const QapInstance& inst) {
    const auto n = inst.n();
    // Ascending lambda paired with descending mu is the anti-sorted pairing.
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        sum += inst.eigenvalues_a()(i) * inst.eigenvalues_b()(n - 1 - i);
    }
    return sum;
}

OrthogonalMatrix orthogonal_minimizer(const QapInstance& inst) {
    const auto n = inst.n();
    // Columns of V_B reversed = eigenvectors of B in descending order; the
    // minimizer pairs them against the ascending eigenbasis of A.
    Eigen::MatrixXd vb_desc(n, n);
    for (Eigen::Index j = 0; j < n; ++j) vb_desc.col(j) = inst.eigenvectors_b().col(n - 1 - j);
    RowMatrixXd u = inst.eigenvectors_a() * vb_desc.transpose();
    return OrthogonalMatrix(SquareMatrix(std::move(u)));
}

QapResult rounding_heuristic(const QapInstance& inst, std::size_t n_samples,
                             const RandomStream& stream) {
    if (n_samples < 1) throw ValidationError("rounding_heuristic: need at least 1 sample");
    OrthogonalMatrix relaxed = orthogonal_minimizer(inst);
    const double bound = eigenvalue_bound(inst);

    Permutation best = Permutation::identity(static_cast<std::size_t>(inst.n()));
    double best_value = objective(inst, best);  // identity baseline
    std::unordered_set<Permutation, PermutationHash> seen{best};

    RandomStream local = stream.substream(0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        RoundingSample sample = sample_rounding(relaxed, local);
        if (!seen.insert(sample.sigma).second) continue;
        const double value = objective(inst, sample.sigma);
        if (value < best_value) {
            best_value = value;
            best = sample.sigma;
        }
    }
    return QapResult{bound, std::move(relaxed), std::move(best), best_value, n_samples};
}

std::pair<Permutation, double> brute_force(const QapInstance& inst) {
    const auto n = static_cast<std::size_t>(inst.n());
    if (n > 8) throw ValidationError("brute_force: guarded to n <= 8");
    std::vector<std::int32_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    Permutation best{image};
    double best_value = objective(inst, best);
    while (std::next_permutation(image.begin(), image.end())) {
        Permutation candidate{image};
        const double value = objective(inst, candidate);
        if (value < best_value) {
            best_value = value;
            best = std::move(candidate);
        }
    }
    return {best, best_value};
}

QapInstance counterexample(std::size_t m) {
    if (m < 1) throw ValidationError("counterexample: need m >= 1");
    const auto mi = static_cast<Eigen::Index>(m);
    const Eigen::Index n = 2 * mi;
    RowMatrixXd a = RowMatrixXd::Ones(n, n);
    RowMatrixXd b = RowMatrixXd::Zero(n, n);
    b.topLeftCorner(mi, mi).setOnes();
    b.bottomRightCorner(mi, mi).setConstant(-1.0);
    return QapInstance(SquareMatrix(std::move(a)), SquareMatrix(std::move(b)));
}

}  // namespace permround
