#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permround/matrix.hpp"
#include "permround/random.hpp"

namespace permround {

/// Standard normal CDF, absolute error below 1e-12 everywhere.
double gaussian_cdf(double t);

/// Inverse of gaussian_cdf on (0, 1): |gaussian_cdf(result) - p| <= 1e-10.
/// Throws ValidationError outside the open interval.
double gaussian_icdf(double p);

/// One standard normal variate by inversion, so each draw is a pure function
/// of the stream position.
double draw_gaussian(RandomStream& stream);

/// Fills `out` with independent standard normal draws.
void fill_gaussian(std::span<double> out, RandomStream& stream);

/// n independent standard normal draws; advances the stream.
std::vector<double> sample_gaussian_vector(std::size_t n, RandomStream& stream);

/// Haar-distributed random orthogonal matrix: QR of an iid Gaussian matrix
/// with the Q columns reoriented so that R has positive diagonal (without the
/// sign correction the distribution is not Haar).
OrthogonalMatrix haar_orthogonal(std::size_t n, RandomStream& stream);

/// Upper bound 2 exp(-t^2/2) on the probability that a fixed coordinate of a
/// standard Gaussian vector exceeds t in absolute value. Requires t >= 0.
double coordinate_tail_bound(double t);

struct NormConcentrationBound {
    double upper_threshold;    ///< n / (1 - eps)
    double lower_threshold;    ///< (1 - eps) * n
    double probability_bound;  ///< exp(-eps^2 n / 4), bounds each tail
};

/// Thresholds and tail bound for the squared norm of a standard Gaussian
/// vector in dimension n. Requires 0 < eps < 1.
NormConcentrationBound norm_concentration_bound(std::size_t n, double eps);

}  // namespace permround
