#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kam/embed.hpp"
#include "kam/matrix.hpp"
#include "kam/random.hpp"
#include "kam/spectral.hpp"
#include "test_util.hpp"

using kam::Complex;
using kam::Matrix;
using kam::Quaternion;
using kam::test::matrix_close;

namespace {
const Quaternion qi{0, 1, 0, 0};
const Quaternion qj{0, 0, 1, 0};
const Quaternion qk{0, 0, 0, 1};
}  // namespace

TEST_CASE("adjoint transposes and conjugates", "[matrix]") {
    const auto real = Matrix<double>::from_rows({{1, 2}, {3, 4}});
    CHECK(adjoint(real) == Matrix<double>::from_rows({{1, 3}, {2, 4}}));

    const auto cplx = Matrix<Complex>::from_rows({{Complex{0, 1}}});
    CHECK(adjoint(cplx) == Matrix<Complex>::from_rows({{Complex{0, -1}}}));

    const auto quat = Matrix<Quaternion>::from_rows({{qj, Quaternion{0}}, {qk, Quaternion{1}}});
    CHECK(adjoint(quat) ==
          Matrix<Quaternion>::from_rows({{-qj, -qk}, {Quaternion{0}, Quaternion{1}}}));
    CHECK(adjoint(adjoint(quat)) == quat);
}

TEST_CASE("ring operations respect identity and entry non-commutativity", "[matrix]") {
    kam::Rng rng(3);
    const auto a = kam::random_matrix<double>(3, rng);
    CHECK(Matrix<double>::identity(3) * a == a);

    const auto mi = Matrix<Quaternion>::from_rows({{qi}});
    const auto mj = Matrix<Quaternion>::from_rows({{qj}});
    CHECK(mi * mj == Matrix<Quaternion>::from_rows({{qk}}));
    CHECK(mj * mi == Matrix<Quaternion>::from_rows({{-qk}}));

    // scalar multiplication acts from the left
    CHECK(kam::scale_left(qj, mi) == Matrix<Quaternion>::from_rows({{-qk}}));
    CHECK(kam::scale_left(qi, mj) == Matrix<Quaternion>::from_rows({{qk}}));
    CHECK(2.0 * mi == Matrix<Quaternion>::from_rows({{Quaternion{0, 2, 0, 0}}}));

    CHECK_THROWS_AS(a + kam::random_matrix<double>(2, rng), kam::DimensionMismatch);
}

TEST_CASE("quaternionic products are compatible with the complex representation", "[matrix]") {
    kam::Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const auto p = kam::random_matrix<Quaternion>(2, rng);
        const auto q = kam::random_matrix<Quaternion>(2, rng);
        CHECK(kam::test::rel_residual(kam::complexify(p * q),
                                      kam::complexify(p) * kam::complexify(q)) <= 1e-12);
    }
}

TEST_CASE("hermitian predicate across the three algebras", "[matrix]") {
    const auto hc = Matrix<Complex>::from_rows({{Complex{1, 0}, Complex{0, 1}},
                                                {Complex{0, -1}, Complex{2, 0}}});
    CHECK(kam::is_hermitian(hc, 1e-12));

    // conj(j) = -j, so the (1,2) entry of the adjoint is -(-j) = j
    const auto hq = Matrix<Quaternion>::from_rows({{Quaternion{1}, qj}, {-qj, Quaternion{2}}});
    CHECK(kam::is_hermitian(hq, 1e-12));

    CHECK_FALSE(kam::is_hermitian(Matrix<double>::from_rows({{0, 1}, {0, 0}}), 1e-12));
}

TEST_CASE("positive definiteness is decided by the spectrum", "[matrix]") {
    CHECK(kam::is_positive_definite(Matrix<double>::diagonal({1, 2})));
    CHECK_FALSE(kam::is_positive_definite(Matrix<double>::diagonal({1, -1})));

    // eigenvalues 1 and 3: roots of l^2 - 4l + 3
    const auto pd = Matrix<Complex>::from_rows({{Complex{2, 0}, Complex{0, 1}},
                                                {Complex{0, -1}, Complex{2, 0}}});
    CHECK(kam::is_positive_definite(pd));
    CHECK_THROWS_AS(kam::is_positive_definite(Matrix<double>::from_rows({{0, 1}, {0, 0}})),
                    kam::NotHermitian);
}

TEST_CASE("loewner order on explicit pairs", "[matrix]") {
    const auto eye = Matrix<double>::identity(2);
    CHECK(kam::loewner_leq(eye, 2.0 * eye));
    CHECK(kam::loewner_leq(eye, eye));  // reflexive
    // B - A = diag(1, -1) is indefinite
    CHECK_FALSE(kam::loewner_leq(Matrix<double>::diagonal({1, 3}), Matrix<double>::diagonal({2, 2})));
}

TEST_CASE("loewner order is a partial order up to tolerance", "[matrix]") {
    kam::Rng rng(99);
    const double tol = 1e-10;
    for (int t = 0; t < 50; ++t) {
        const auto a = kam::random_hermitian<Complex>(3, rng);
        const auto g1 = kam::random_matrix<Complex>(3, rng);
        const auto g2 = kam::random_matrix<Complex>(3, rng);
        const auto b = a + g1 * adjoint(g1);
        const auto c = b + g2 * adjoint(g2);
        CHECK(kam::loewner_leq(a, a, tol));
        CHECK(kam::loewner_leq(a, b, tol));
        CHECK(kam::loewner_leq(b, c, tol));
        CHECK(kam::loewner_leq(a, c, 2.0 * tol));  // transitivity with slack
        // antisymmetry: a <= b and b <= a only for a == b
        if (kam::loewner_leq(b, a, tol))
            CHECK(kam::frobenius_norm(b - a) <= 1e-8 * std::max(1.0, kam::frobenius_norm(a)));
    }
}

TEST_CASE("trace and reduced trace", "[matrix]") {
    CHECK(kam::trace(Matrix<double>::diagonal({1, 2, 3})) == 6.0);
    CHECK(kam::trace(Matrix<double>::identity(5)) == 5.0);

    const auto hq = Matrix<Quaternion>::from_rows({{Quaternion{1}, qj}, {-qj, Quaternion{2}}});
    CHECK(kam::reduced_trace(hq) == 3.0);
    const Quaternion tr = kam::trace(hq);
    CHECK(kam::abs(tr - Quaternion{3}) <= 1e-12);

    const auto nonherm = Matrix<Quaternion>::from_rows({{qj, Quaternion{0}}, {Quaternion{0}, qk}});
    CHECK_THROWS_AS(kam::reduced_trace(nonherm), kam::NotHermitian);
}

TEST_CASE("hermitian quaternionic matrices have a real trace", "[matrix]") {
    kam::Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const auto x = kam::random_hermitian<Quaternion>(3, rng);
        const Quaternion tr = kam::trace(x);
        CHECK(std::abs(tr.b) <= 1e-12);
        CHECK(std::abs(tr.c) <= 1e-12);
        CHECK(std::abs(tr.d) <= 1e-12);
        CHECK(std::abs(tr.a - kam::reduced_trace(x)) <= 1e-12);
    }
}

TEST_CASE("adjoint is an anti-homomorphism on random matrices", "[matrix]") {
    kam::Rng rng(31);
    auto check = [&](auto tag) {
        using S = decltype(tag);
        for (int t = 0; t < 40; ++t) {
            const auto a = kam::random_matrix<S>(3, rng);
            const auto b = kam::random_matrix<S>(3, rng);
            CHECK(kam::test::rel_residual(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-12);
            CHECK(adjoint(adjoint(a)) == a);
        }
    };
    check(double{});
    check(Complex{});
    check(Quaternion{});
}

TEST_CASE("determinant via elimination matches closed forms", "[matrix]") {
    CHECK(kam::test::scalar_close(kam::determinant(Matrix<double>::diagonal({1, 2, 3, 4})), 24.0));
    const auto m = Matrix<double>::from_rows({{2, 1}, {1, 2}});
    CHECK(kam::test::scalar_close(kam::determinant(m), 3.0));
    CHECK(kam::determinant(Matrix<double>::from_rows({{1, 1}, {1, 1}})) == 0.0);
}
