#include "permround/permutation.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "permround/errors.hpp"

namespace permround {

Permutation::Permutation(std::vector<std::int32_t> image) : image_(std::move(image)) {
    const auto n = image_.size();
    if (n == 0) throw ValidationError("Permutation: empty image");
    std::vector<bool> seen(n, false);
    for (std::int32_t v : image_) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
            throw ValidationError("Permutation: image is not a bijection on {0..n-1}");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::int32_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::from_one_based(const std::vector<std::int64_t>& image) {
    std::vector<std::int32_t> zero_based;
    zero_based.reserve(image.size());
    for (std::int64_t v : image) {
        if (v < 1 || v > std::numeric_limits<std::int32_t>::max()) {
            throw ValidationError("Permutation: one-based image entry out of range");
        }
        zero_based.push_back(static_cast<std::int32_t>(v - 1));
    }
    return Permutation(std::move(zero_based));
}

Permutation Permutation::parse_one_line(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::int64_t> image;
    std::int64_t v = 0;
    while (in >> v) image.push_back(v);
    if (!in.eof()) throw ParseError("Permutation: non-integer token in one-line notation");
    if (image.empty()) throw ParseError("Permutation: empty one-line notation");
    return from_one_based(image);
}

Permutation Permutation::inverse() const {
    std::vector<std::int32_t> inv(image_.size());
    for (std::size_t j = 0; j < image_.size(); ++j) {
        inv[static_cast<std::size_t>(image_[j])] = static_cast<std::int32_t>(j);
    }
    return Permutation(std::move(inv));
}

std::string Permutation::one_line() const {
    std::ostringstream out;
    for (std::size_t j = 0; j < image_.size(); ++j) {
        if (j > 0) out << ' ';
        out << image_[j] + 1;
    }
    return out.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
    // FNV-1a over the image bytes.
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int32_t v : p.image()) {
        auto u = static_cast<std::uint32_t>(v);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    return static_cast<std::size_t>(h);
}

Permutation compose(const Permutation& rho, const Permutation& sigma) {
    if (rho.size() != sigma.size()) {
        throw ValidationError("compose: dimension mismatch");
    }
    std::vector<std::int32_t> image(rho.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        image[j] = rho(static_cast<std::size_t>(sigma(j)));
    }
    return Permutation(std::move(image));
}

SquareMatrix perm_to_matrix(const Permutation& sigma) {
    const auto n = static_cast<Eigen::Index>(sigma.size());
    RowMatrixXd m = RowMatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        m(sigma(static_cast<std::size_t>(j)), j) = 1.0;
    }
    return SquareMatrix(std::move(m));
}

std::vector<double> apply_perm(const Permutation& sigma, std::span<const double> x) {
    if (x.size() != sigma.size()) {
        throw ValidationError("apply_perm: dimension mismatch");
    }
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[static_cast<std::size_t>(sigma(j))] = x[j];
    }
    return out;
}

}  // namespace permround
