#include "permround/gaussian.hpp"

#include <cmath>

#include "permround/errors.hpp"

namespace permround {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

// Acklam's rational approximation to the normal quantile, relative error
// below 1.15e-9; a Halley step against gaussian_cdf then reaches full double
// accuracy. Valid for p in (0, 0.5]; the caller reflects the upper half.
double icdf_estimate_lower_half(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double gaussian_cdf(double t) {
    if (std::isnan(t)) throw ValidationError("gaussian_cdf: t must be finite");
    return 0.5 * std::erfc(-t / kSqrt2);
}

double gaussian_icdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("gaussian_icdf: p must lie strictly inside (0, 1)");
    }
    // Solve in the lower half where the CDF is relatively accurate; p and
    // 1 - p are exchanged exactly (Sterbenz) for p >= 0.5.
    const bool reflect = p > 0.5;
    const double q = reflect ? 1.0 - p : p;
    double x = icdf_estimate_lower_half(q);
    // One Halley step against the CDF.
    const double err = gaussian_cdf(x) - q;
    const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return reflect ? -x : x;
}

double draw_gaussian(RandomStream& stream) {
    return gaussian_icdf(stream.next_uniform());
}

void fill_gaussian(std::span<double> out, RandomStream& stream) {
    for (double& v : out) v = gaussian_icdf(stream.next_uniform());
}

std::vector<double> sample_gaussian_vector(std::size_t n, RandomStream& stream) {
    if (n < 1) throw ValidationError("sample_gaussian_vector: n must be positive");
    std::vector<double> out(n);
    fill_gaussian(out, stream);
    return out;
}

OrthogonalMatrix haar_orthogonal(std::size_t n, RandomStream& stream) {
    if (n < 1) throw ValidationError("haar_orthogonal: n must be positive");
    const auto ni = static_cast<Eigen::Index>(n);
    RowMatrixXd g(ni, ni);
    fill_gaussian(std::span<double>(g.data(), n * n), stream);
    Eigen::HouseholderQR<RowMatrixXd> qr(g);
    RowMatrixXd q = qr.householderQ();
    const auto r_diag = qr.matrixQR().diagonal();
    for (Eigen::Index j = 0; j < ni; ++j) {
        if (r_diag(j) < 0.0) q.col(j) = -q.col(j);
    }
    return OrthogonalMatrix(SquareMatrix(std::move(q)));
}

double coordinate_tail_bound(double t) {
    if (!(t >= 0.0)) throw ValidationError("coordinate_tail_bound: t must be >= 0");
    return 2.0 * std::exp(-0.5 * t * t);
}

NormConcentrationBound norm_concentration_bound(std::size_t n, double eps) {
    if (n < 1) throw ValidationError("norm_concentration_bound: n must be positive");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("norm_concentration_bound: eps must lie in (0, 1)");
    }
    const double nd = static_cast<double>(n);
    return {nd / (1.0 - eps), (1.0 - eps) * nd, std::exp(-eps * eps * nd / 4.0)};
}

}  // namespace permround
