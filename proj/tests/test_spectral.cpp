#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kam/embed.hpp"
#include "kam/random.hpp"
#include "kam/spectral.hpp"
#include "test_util.hpp"

using kam::Complex;
using kam::Matrix;
using kam::Quaternion;
using kam::test::matrix_close;
using kam::test::rel_residual;
using kam::test::scalar_close;

namespace {

template <typename S>
void check_decomposition(const Matrix<S>& x, const kam::EigenDecomposition<S>& eig) {
    const std::size_t n = x.size();
    REQUIRE(eig.eigenvalues.size() == n);
    const auto& u = eig.eigenvectors;
    CHECK(kam::frobenius_norm(adjoint(u) * u - Matrix<S>::identity(n)) <= 1e-10);
    Matrix<S> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = S{eig.eigenvalues[i]};
    CHECK(kam::frobenius_norm(x * u - u * lam) <=
          1e-10 * std::max(1.0, kam::frobenius_norm(x)));
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
}

template <typename S>
Matrix<S> exp_series(const Matrix<S>& x, int terms) {  // independent oracle for mexp
    Matrix<S> acc = Matrix<S>::identity(x.size());
    Matrix<S> pw = Matrix<S>::identity(x.size());
    double factorial = 1.0;
    for (int k = 1; k <= terms; ++k) {
        pw = pw * x;
        factorial *= k;
        acc += (1.0 / factorial) * pw;
    }
    return acc;
}

}  // namespace

TEST_CASE("eigendecomposition of explicit matrices", "[spectral]") {
    const auto d = kam::eig_hermitian(Matrix<double>::diagonal({3, 1}));
    CHECK(scalar_close(d.eigenvalues[0], 1.0));
    CHECK(scalar_close(d.eigenvalues[1], 3.0));
    CHECK(std::abs(d.eigenvectors(1, 0)) == 1.0);  // permutation columns
    CHECK(std::abs(d.eigenvectors(0, 1)) == 1.0);

    // roots of l^2 - 4l + 3
    const auto e = kam::eig_hermitian(Matrix<double>::from_rows({{2, 1}, {1, 2}}));
    CHECK(scalar_close(e.eigenvalues[0], 1.0));
    CHECK(scalar_close(e.eigenvalues[1], 3.0));

    // [[1, j], [-j, 1]]: the complex representation has spectrum {0,0,2,2}
    const Quaternion qj{0, 0, 1, 0};
    const auto h = kam::eig_hermitian(
        Matrix<Quaternion>::from_rows({{Quaternion{1}, qj}, {-qj, Quaternion{1}}}));
    CHECK(std::abs(h.eigenvalues[0] - 0.0) <= 1e-12);
    CHECK(scalar_close(h.eigenvalues[1], 2.0));
}

TEST_CASE("eigendecomposition invariants on random Hermitian matrices", "[spectral]") {
    kam::Rng rng(404);
    auto sweep = [&](auto tag) {
        using S = decltype(tag);
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = 1 + t % 8;
            const auto x = kam::random_hermitian<S>(n, rng);
            check_decomposition(x, kam::eig_hermitian(x));
        }
    };
    sweep(double{});
    sweep(Complex{});
    sweep(Quaternion{});
}

TEST_CASE("subnormal off-diagonal pivots do not corrupt the frame", "[spectral]") {
    // squaring a pivot of magnitude ~1e-160 underflows; the solver must not
    // build a rotation from it
    const auto x = Matrix<double>::from_rows({{1.0, 9.13e-160}, {9.13e-160, 1.0}});
    check_decomposition(x, kam::eig_hermitian(x));

    // realified matrices have exactly doubled spectra and reach tiny pivots
    // while converging; the doubled pairs must agree to machine precision
    kam::Rng rng(kam::derive_seed(7, 235));
    const auto ac = kam::random_hpd<Complex>(4, rng);
    const auto lifted = kam::realify(ac);
    const auto eig = kam::eig_hermitian(lifted);
    check_decomposition(lifted, eig);
    const double scale = std::max(1.0, kam::frobenius_norm(lifted));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(eig.eigenvalues[2 * i + 1] - eig.eigenvalues[2 * i]) <= 1e-12 * scale);
    const auto fa = kam::apply_function(ac, [](double v) { return std::sqrt(v); });
    CHECK(kam::frobenius_norm(kam::apply_function(lifted, [](double v) { return std::sqrt(v); }) -
                              kam::realify(fa)) <= 1e-9 * (1.0 + kam::frobenius_norm(fa)));
}

TEST_CASE("positive definite inputs give positive eigenvalues", "[spectral]") {
    kam::Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto x = kam::random_hpd<Quaternion>(3, rng);
        const auto eig = kam::eig_hermitian(x);
        for (double l : eig.eigenvalues) CHECK(l > 0.0);
    }
}

TEST_CASE("degenerate quaternionic clusters still produce a unitary frame", "[spectral]") {
    // identity: one cluster of multiplicity 4 in the complex representation
    check_decomposition(Matrix<Quaternion>::identity(2),
                        kam::eig_hermitian(Matrix<Quaternion>::identity(2)));
    const auto x = Matrix<Quaternion>::diagonal({2, 2, 5});
    check_decomposition(x, kam::eig_hermitian(x));

    kam::Rng rng(77);
    // U diag(c, c) U* has a genuinely degenerate eigenspace
    const auto u = kam::random_unitary<Quaternion>(2, rng);
    const auto deg = u * Matrix<Quaternion>::diagonal({1.5, 1.5}) * adjoint(u);
    check_decomposition((deg + adjoint(deg)) * 0.5,
                        kam::eig_hermitian((deg + adjoint(deg)) * 0.5));
}

TEST_CASE("quaternionic eigenvalues agree across both embedding routes", "[spectral]") {
    kam::Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 4;
        const auto x = kam::random_hermitian<Quaternion>(n, rng);
        const auto lam = kam::eig_hermitian(x).eigenvalues;
        const auto via_c = kam::detail::jacobi_eigensolver(kam::complexify(x)).eigenvalues;
        const auto via_r = kam::detail::jacobi_eigensolver(kam::realify(kam::complexify(x))).eigenvalues;
        const double tol = 1e-9 * std::max(1.0, kam::frobenius_norm(x));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(via_c[2 * i] - lam[i]) <= tol);
            CHECK(std::abs(via_c[2 * i + 1] - lam[i]) <= tol);
            for (std::size_t r = 0; r < 4; ++r)
                CHECK(std::abs(via_r[4 * i + r] - lam[i]) <= tol);
        }
    }
}

TEST_CASE("functional calculus on explicit matrices", "[spectral]") {
    const auto sq = kam::apply_function(Matrix<double>::diagonal({2, 3}),
                                        [](double x) { return x * x; });
    CHECK(matrix_close(sq, Matrix<double>::diagonal({4, 9})));

    // sqrt[[2,1],[1,2]] = [[(s+1)/2, (s-1)/2], [(s-1)/2, (s+1)/2]] with s = sqrt 3
    const double s3 = std::sqrt(3.0);
    const auto rt = kam::apply_function(Matrix<double>::from_rows({{2, 1}, {1, 2}}),
                                        [](double x) { return std::sqrt(x); });
    CHECK(matrix_close(rt, Matrix<double>::from_rows({{(s3 + 1) / 2, (s3 - 1) / 2},
                                                      {(s3 - 1) / 2, (s3 + 1) / 2}})));

    kam::Rng rng(6);
    const auto x = kam::random_hpd<Complex>(3, rng);
    CHECK(matrix_close(kam::apply_function(x, [](double v) { return v; }), x));
}

TEST_CASE("functional calculus rejects invalid inputs", "[spectral]") {
    CHECK_THROWS_AS(kam::eig_hermitian(Matrix<double>::from_rows({{0, 1}, {0, 0}})),
                    kam::NotHermitian);
    CHECK_THROWS_AS(kam::apply_function(Matrix<double>::diagonal({1, -1}),
                                        [](double x) { return x; }),
                    kam::NotPositiveDefinite);
    CHECK_THROWS_AS(kam::mlog(Matrix<double>::diagonal({1, 0})), kam::NotPositiveDefinite);
    CHECK_THROWS_AS(kam::apply_function(Matrix<double>::diagonal({1, 2}),
                                        [](double) { return std::nan(""); }),
                    kam::FunctionDomainError);
}

TEST_CASE("matrix exponential, logarithm and powers", "[spectral]") {
    CHECK(matrix_close(kam::mexp(Matrix<double>::zero(3)), Matrix<double>::identity(3)));
    CHECK(matrix_close(kam::mlog(Matrix<double>::diagonal({std::exp(1.0), std::exp(2.0)})),
                       Matrix<double>::diagonal({1, 2}), 1e-12));

    const auto a = Matrix<double>::from_rows({{2, 1}, {1, 2}});
    CHECK(kam::test::max_entry_diff(kam::mexp(kam::mlog(a)), a) <= 1e-10);

    CHECK(matrix_close(kam::mpow(Matrix<double>::diagonal({4, 9}), 0.5),
                       Matrix<double>::diagonal({2, 3})));
    CHECK(matrix_close(kam::mpow(a, 0.0), Matrix<double>::identity(2)));
    CHECK(matrix_close(kam::mpow(a, 1.0), a, 1e-12));
    CHECK(matrix_close(kam::mpow(a, -1.0),
                       (1.0 / 3.0) * Matrix<double>::from_rows({{2, -1}, {-1, 2}}), 1e-12));

    kam::Rng rng(23);
    auto roundtrips = [&](auto tag) {
        using S = decltype(tag);
        for (int t = 0; t < 15; ++t) {
            const std::size_t n = 1 + t % 3;
            const auto x = kam::random_hpd<S>(n, rng);
            const double scale = std::max(1.0, kam::frobenius_norm(x));
            CHECK(kam::frobenius_norm(kam::mexp(kam::mlog(x)) - x) <= 1e-9 * scale);
            const auto y = kam::random_hermitian<S>(n, rng);
            CHECK(kam::frobenius_norm(kam::mlog(kam::mexp(y)) - y) <=
                  1e-9 * std::max(1.0, kam::frobenius_norm(y)));
            CHECK(kam::frobenius_norm(kam::mpow(x, -1.0) * x - Matrix<S>::identity(n)) <= 1e-9);
            const auto h = kam::mpow(x, 0.5);
            CHECK(kam::frobenius_norm(h * h - x) <= 1e-9 * scale);
        }
    };
    roundtrips(double{});
    roundtrips(Complex{});
    roundtrips(Quaternion{});
}

TEST_CASE("mexp agrees with the truncated power series", "[spectral]") {
    kam::Rng rng(88);
    auto against_series = [&](auto tag) {
        using S = decltype(tag);
        for (int t = 0; t < 10; ++t) {
            const std::size_t n = 1 + t % 4;
            auto x = kam::random_hermitian<S>(n, rng);
            const double norm = kam::frobenius_norm(x);
            if (norm > 2.0) x = (2.0 / norm) * x;  // keep truncation error negligible
            CHECK(kam::frobenius_norm(kam::mexp(x) - exp_series(x, 20)) <= 1e-12);
        }
    };
    against_series(double{});
    against_series(Complex{});
    against_series(Quaternion{});
}

TEST_CASE("functional calculus commutes with the embeddings", "[spectral]") {
    kam::Rng rng(505);
    const std::vector<std::pair<const char*, double (*)(double)>> fs = {
        {"sqrt", [](double x) { return std::sqrt(x); }},
        {"log", [](double x) { return std::log(x); }},
        {"square", [](double x) { return x * x; }},
        {"half1px", [](double x) { return 0.5 * (1.0 + x); }},
    };
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 3;
        const auto a = kam::random_hpd<Complex>(n, rng);
        const auto b = kam::random_hpd<Quaternion>(n, rng);
        for (const auto& [name, f] : fs) {
            (void)name;
            const auto fa = kam::apply_function(a, f);
            CHECK(kam::frobenius_norm(kam::apply_function(kam::realify(a), f) - kam::realify(fa)) <=
                  1e-9 * (1.0 + kam::frobenius_norm(fa)));
            const auto fb = kam::apply_function(b, f);
            CHECK(kam::frobenius_norm(kam::apply_function(kam::complexify(b), f) -
                                      kam::complexify(fb)) <= 1e-9 * (1.0 + kam::frobenius_norm(fb)));
        }
    }
}

TEST_CASE("positive functions give positive definite results", "[spectral]") {
    kam::Rng rng(3030);
    for (int t = 0; t < 10; ++t) {
        const auto x = kam::random_hpd<Complex>(3, rng);
        const auto y = kam::apply_function(x, [](double v) { return std::exp(-v) + 0.5; });
        CHECK(kam::is_positive_definite(y));
    }
}
