#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permround/matrix.hpp"

namespace permround {

/// Bijection sigma on {0, ..., n-1}, stored as its image array.
///
/// Matrix convention (used everywhere in this library, including every
/// equivariance test): the permutation matrix P = perm_to_matrix(sigma) has
///
///     P(i, j) = 1  iff  sigma(j) = i,
///
/// so P * e_j = e_{sigma(j)} and P * x places x_j at position sigma(j).
/// Composition acts on the left: perm_to_matrix(compose(rho, sigma)) equals
/// perm_to_matrix(rho) * perm_to_matrix(sigma).
///
/// Indices are 0-based in code; textual I/O ("2 1 3" one-line notation and
/// the file formats) is 1-based.
class Permutation {
public:
    /// Validates that `image` is a bijection on {0, ..., n-1}.
    explicit Permutation(std::vector<std::int32_t> image);

    static Permutation identity(std::size_t n);
    /// One-based images, e.g. {2, 1, 3}.
    static Permutation from_one_based(const std::vector<std::int64_t>& image);
    /// Parses one-line notation "2 1 3". Throws ParseError on malformed input.
    static Permutation parse_one_line(const std::string& line);

    std::size_t size() const { return image_.size(); }
    std::int32_t operator()(std::size_t j) const { return image_[j]; }
    const std::vector<std::int32_t>& image() const { return image_; }

    Permutation inverse() const;
    /// "2 1 3" (1-based), the notation used in file formats and JSON keys.
    std::string one_line() const;

    friend bool operator==(const Permutation& a, const Permutation& b) = default;

private:
    std::vector<std::int32_t> image_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept;
};

/// (rho . sigma)(j) = rho(sigma(j)).
Permutation compose(const Permutation& rho, const Permutation& sigma);

/// 0/1 matrix with entry (i, j) = 1 iff sigma(j) = i.
SquareMatrix perm_to_matrix(const Permutation& sigma);

/// Action of perm_to_matrix(sigma) on x: result[sigma(j)] = x[j].
std::vector<double> apply_perm(const Permutation& sigma, std::span<const double> x);

}  // namespace permround
