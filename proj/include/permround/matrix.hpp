#pragma once

#include <Eigen/Dense>

#include <vector>

namespace permround {

/// Dense row-major storage for everything in this library.
using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense n-by-n real matrix with all entries finite, n >= 1.
///
/// Immutable after construction; every operation on it is a pure function,
/// so values can be shared freely across threads.
class SquareMatrix {
public:
    /// Takes ownership of `entries`. Throws ValidationError if the matrix is
    /// empty, non-square, or contains a non-finite entry.
    explicit SquareMatrix(RowMatrixXd entries);

    static SquareMatrix zero(Eigen::Index n);
    static SquareMatrix identity(Eigen::Index n);
    /// Convenience for literals in tests and parsers.
    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

    Eigen::Index n() const { return entries_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
    const RowMatrixXd& mat() const { return entries_; }

    SquareMatrix transposed() const;

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.entries_ == b.entries_;
    }

private:
    RowMatrixXd entries_;
};

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);

/// Entrywise max norm: max_ij |b_ij|.
double norm_inf(const SquareMatrix& b);
/// Frobenius norm: sqrt of the sum of squared entries. Equals sqrt(n) on
/// every orthogonal matrix.
double norm_frobenius(const SquareMatrix& b);
/// Euclidean norm of each column.
std::vector<double> column_norms(const SquareMatrix& b);

/// Square matrix U with U^T U = I up to `kOrthogonalityTol`, checked at
/// construction.
class OrthogonalMatrix {
public:
    static constexpr double kOrthogonalityTol = 1e-10;

    /// Throws ValidationError if ||U^T U - I||_inf exceeds the tolerance.
    explicit OrthogonalMatrix(SquareMatrix u);

    static OrthogonalMatrix identity(Eigen::Index n);

    Eigen::Index n() const { return u_.n(); }
    const SquareMatrix& matrix() const { return u_; }
    const RowMatrixXd& mat() const { return u_.mat(); }

    OrthogonalMatrix transposed() const;

private:
    SquareMatrix u_;
};

}  // namespace permround
