#pragma once

// Small generators shared by the test suites.

#include <numeric>
#include <vector>

#include "permround/gaussian.hpp"
#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "permround/random.hpp"

namespace testgen {

inline permround::Permutation random_permutation(std::size_t n, permround::RandomStream& s) {
    std::vector<std::int32_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(s.next_u64() % i);
        std::swap(image[i - 1], image[j]);
    }
    return permround::Permutation(std::move(image));
}

inline permround::SquareMatrix random_matrix(Eigen::Index n, permround::RandomStream& s) {
    permround::RowMatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = 2.0 * s.next_uniform() - 1.0;
    }
    return permround::SquareMatrix(std::move(m));
}

inline permround::SquareMatrix random_symmetric(Eigen::Index n, permround::RandomStream& s) {
    permround::RowMatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = 2.0 * s.next_uniform() - 1.0;
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return permround::SquareMatrix(std::move(m));
}

}  // namespace testgen
