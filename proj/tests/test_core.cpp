#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "permround/errors.hpp"
#include "permround/gaussian.hpp"
#include "permround/io.hpp"
#include "permround/matrix.hpp"
#include "permround/permutation.hpp"
#include "permround/random.hpp"
#include "support/gen.hpp"

using namespace permround;

namespace {

Permutation swap01(std::size_t n) {
    std::vector<std::int32_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    std::swap(image[0], image[1]);
    return Permutation(std::move(image));
}

// Independent oracle: plain matrix-vector product.
std::vector<double> multiply_oracle(const SquareMatrix& m, const std::vector<double>& x) {
    std::vector<double> out(x.size(), 0.0);
    for (Eigen::Index i = 0; i < m.n(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < m.n(); ++j) sum += m(i, j) * x[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum;
    }
    return out;
}

}  // namespace

TEST_CASE("SquareMatrix validates shape and finiteness") {
    CHECK_THROWS_AS(SquareMatrix(RowMatrixXd::Zero(0, 0)), ValidationError);
    CHECK_THROWS_AS(SquareMatrix(RowMatrixXd::Zero(2, 3)), ValidationError);
    RowMatrixXd bad = RowMatrixXd::Zero(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SquareMatrix(std::move(bad)), ValidationError);
    CHECK(SquareMatrix::identity(1).n() == 1);
}

TEST_CASE("norms: identity and a frozen 2x2 example") {
    const SquareMatrix id4 = SquareMatrix::identity(4);
    CHECK(norm_inf(id4) == 1.0);
    CHECK(norm_frobenius(id4) == 2.0);

    const SquareMatrix b = SquareMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(norm_inf(b) == 4.0);
    CHECK(norm_frobenius(b) == doctest::Approx(5.4772255750516612).epsilon(1e-15));

    const auto cols = column_norms(b);
    CHECK(cols[0] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(cols[1] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
}

TEST_CASE("frobenius norm is sqrt(n) on Haar-random orthogonal matrices") {
    RandomStream s(2024);
    for (std::size_t n : {2u, 8u, 32u}) {
        for (int rep = 0; rep < 100; ++rep) {
            const OrthogonalMatrix u = haar_orthogonal(n, s);
            CHECK(std::abs(norm_frobenius(u.matrix()) - std::sqrt(static_cast<double>(n))) <=
                  1e-9);
        }
    }
}

TEST_CASE("Permutation validates bijections") {
    CHECK_THROWS_AS(Permutation({0, 0}), ValidationError);
    CHECK_THROWS_AS(Permutation({0, 2}), ValidationError);
    CHECK_THROWS_AS(Permutation(std::vector<std::int32_t>{}), ValidationError);
    CHECK(Permutation::identity(3).one_line() == "1 2 3");
    CHECK(Permutation::parse_one_line("2 1 3") == swap01(3));
    CHECK_THROWS_AS(Permutation::parse_one_line("2 x 3"), ParseError);
    CHECK(Permutation::parse_one_line("3 1 2").inverse().one_line() == "2 3 1");
}

TEST_CASE("perm_to_matrix: identity, a forced transposition, a scanned random case") {
    CHECK(perm_to_matrix(Permutation::identity(3)) == SquareMatrix::identity(3));
    CHECK(perm_to_matrix(swap01(2)) == SquareMatrix::from_rows({{0, 1}, {1, 0}}));

    RandomStream s(7);
    const Permutation sigma = testgen::random_permutation(6, s);
    const SquareMatrix m = perm_to_matrix(sigma);
    // orthogonality and exactly one 1 per row/column, by direct scan
    CHECK(norm_inf(SquareMatrix(RowMatrixXd(m.mat().transpose() * m.mat() -
                                            RowMatrixXd::Identity(6, 6)))) == 0.0);
    for (Eigen::Index i = 0; i < 6; ++i) {
        CHECK(m.mat().row(i).sum() == 1.0);
        CHECK(m.mat().col(i).sum() == 1.0);
        for (Eigen::Index j = 0; j < 6; ++j) {
            CHECK((m(i, j) == 0.0 || m(i, j) == 1.0));
        }
    }
}

TEST_CASE("apply_perm agrees with the matrix action") {
    const std::vector<double> xy{3.5, -1.25};
    CHECK(apply_perm(Permutation::identity(2), xy) == xy);
    CHECK(apply_perm(swap01(2), xy) == std::vector<double>{-1.25, 3.5});
    CHECK_THROWS_AS(apply_perm(swap01(2), std::vector<double>{1.0, 2.0, 3.0}), ValidationError);

    // 1000 random (sigma, x), n <= 64, exact match against the multiply oracle.
    RandomStream s(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(s.next_u64() % 64);
        const Permutation sigma = testgen::random_permutation(n, s);
        const std::vector<double> x = sample_gaussian_vector(n, s);
        const auto direct = apply_perm(sigma, x);
        const auto via_matrix = multiply_oracle(perm_to_matrix(sigma), x);
        for (std::size_t i = 0; i < n; ++i) CHECK(direct[i] == via_matrix[i]);
    }
}

TEST_CASE("compose follows the matrix product") {
    RandomStream s(13);
    const Permutation rho = testgen::random_permutation(5, s);
    CHECK(compose(rho, Permutation::identity(5)) == rho);
    CHECK(compose(swap01(2), swap01(2)) == Permutation::identity(2));

    const Permutation sigma = testgen::random_permutation(5, s);
    const SquareMatrix lhs = perm_to_matrix(compose(rho, sigma));
    const SquareMatrix rhs = perm_to_matrix(rho) * perm_to_matrix(sigma);
    CHECK(norm_inf(lhs - rhs) == 0.0);
}

TEST_CASE("perm_to_matrix is a group homomorphism, exhaustively for n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::int32_t> image(n);
        std::iota(image.begin(), image.end(), 0);
        std::vector<Permutation> all;
        do {
            all.emplace_back(image);
        } while (std::next_permutation(image.begin(), image.end()));
        for (const auto& rho : all) {
            for (const auto& sigma : all) {
                const SquareMatrix lhs = perm_to_matrix(compose(rho, sigma));
                const SquareMatrix rhs = perm_to_matrix(rho) * perm_to_matrix(sigma);
                REQUIRE(norm_inf(lhs - rhs) == 0.0);
            }
        }
    }
}

TEST_CASE("file formats round-trip exactly") {
    RandomStream s(19);
    const OrthogonalMatrix u = haar_orthogonal(5, s);

    std::stringstream text;
    write_matrix_text(text, u.matrix());
    CHECK(read_matrix_text(text) == u.matrix());

    CHECK(matrix_from_json(matrix_to_json(u.matrix())) == u.matrix());

    const Permutation sigma = testgen::random_permutation(7, s);
    std::stringstream perm_text;
    write_permutation_text(perm_text, sigma);
    CHECK(read_permutation_text(perm_text) == sigma);

    std::stringstream bad("3\n1 2\n");
    CHECK_THROWS_AS(read_matrix_text(bad), ParseError);
    std::stringstream negative("-2\n");
    CHECK_THROWS_AS(read_matrix_text(negative), ParseError);
}

TEST_CASE("OrthogonalMatrix enforces the orthogonality tolerance") {
    CHECK_NOTHROW(OrthogonalMatrix::identity(3));
    RandomStream s(17);
    CHECK_NOTHROW(OrthogonalMatrix(perm_to_matrix(testgen::random_permutation(8, s))));
    CHECK_THROWS_AS(OrthogonalMatrix(SquareMatrix::from_rows({{1, 0}, {0.5, 1}})),
                    ValidationError);

    const OrthogonalMatrix u = haar_orthogonal(9, s);
    // every orthogonal 9x9 matrix has Frobenius norm 3
    CHECK(norm_frobenius(u.matrix()) == doctest::Approx(3.0).epsilon(1e-12));
    const OrthogonalMatrix ut = u.transposed();
    CHECK(norm_inf(SquareMatrix(RowMatrixXd(ut.mat() - u.mat().transpose()))) == 0.0);
}
