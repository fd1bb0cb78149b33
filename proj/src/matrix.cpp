#include "permround/matrix.hpp"

#include <cmath>

#include "permround/errors.hpp"

namespace permround {

SquareMatrix::SquareMatrix(RowMatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
        throw ValidationError("SquareMatrix: expected a non-empty square matrix, got " +
                              std::to_string(entries_.rows()) + "x" +
                              std::to_string(entries_.cols()));
    }
    if (!entries_.allFinite()) {
        throw ValidationError("SquareMatrix: non-finite entry");
    }
}

SquareMatrix SquareMatrix::zero(Eigen::Index n) {
    return SquareMatrix(RowMatrixXd::Zero(n, n));
}

SquareMatrix SquareMatrix::identity(Eigen::Index n) {
    return SquareMatrix(RowMatrixXd::Identity(n, n));
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    RowMatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != n) {
            throw ValidationError("SquareMatrix::from_rows: ragged rows");
        }
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return SquareMatrix(std::move(m));
}

SquareMatrix SquareMatrix::transposed() const {
    return SquareMatrix(entries_.transpose());
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n()) throw ValidationError("matrix product: dimension mismatch");
    return SquareMatrix(a.mat() * b.mat());
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n()) throw ValidationError("matrix difference: dimension mismatch");
    return SquareMatrix(a.mat() - b.mat());
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n()) throw ValidationError("matrix sum: dimension mismatch");
    return SquareMatrix(a.mat() + b.mat());
}

double norm_inf(const SquareMatrix& b) {
    return b.mat().cwiseAbs().maxCoeff();
}

double norm_frobenius(const SquareMatrix& b) {
    return b.mat().norm();
}

std::vector<double> column_norms(const SquareMatrix& b) {
    std::vector<double> out(static_cast<std::size_t>(b.n()));
    for (Eigen::Index j = 0; j < b.n(); ++j) {
        out[static_cast<std::size_t>(j)] = b.mat().col(j).norm();
    }
    return out;
}

OrthogonalMatrix::OrthogonalMatrix(SquareMatrix u) : u_(std::move(u)) {
    const Eigen::Index n = u_.n();
    const double defect =
        (u_.mat().transpose() * u_.mat() - RowMatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (!(defect <= kOrthogonalityTol)) {
        throw ValidationError("OrthogonalMatrix: ||U^T U - I||_inf = " +
                              std::to_string(defect) + " exceeds tolerance");
    }
}

OrthogonalMatrix OrthogonalMatrix::identity(Eigen::Index n) {
    return OrthogonalMatrix(SquareMatrix::identity(n));
}

OrthogonalMatrix OrthogonalMatrix::transposed() const {
    return OrthogonalMatrix(u_.transposed());
}

}  // namespace permround
