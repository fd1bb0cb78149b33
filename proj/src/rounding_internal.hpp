#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permround/matrix.hpp"
#include "permround/random.hpp"

namespace permround::detail {

/// Reusable buffers for the sampling loops (no per-sample allocation).
struct RoundingWorkspace {
    std::vector<std::int32_t> phi;    ///< ascending order of x
    std::vector<std::int32_t> psi;    ///< ascending order of y
    std::vector<std::int32_t> image;  ///< image[phi[k]] = psi[k]
};

/// Fills ws with the order-matching permutation; false on tied entries.
bool match_into(std::span<const double> x, std::span<const double> y, RoundingWorkspace& ws);

/// Draws x from the standard Gaussian measure, computes y = m*x and the
/// order matching, retrying on ties (bounded; throws NumericalError when
/// exhausted). On return x, y hold the accepted draw and its image.
void sample_rounding_core(const RowMatrixXd& m, RandomStream& stream, Eigen::VectorXd& x,
                          Eigen::VectorXd& y, RoundingWorkspace& ws);

}  // namespace permround::detail
