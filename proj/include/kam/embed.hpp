#pragma once

// The two block embeddings between matrix algebras over R, C and H:
//
//   realify:     Mat_n(C) -> Mat_2n(R),  A + iB      |-> [[A, B], [-B, A]]
//   complexify:  Mat_n(H) -> Mat_2n(C),  Z1 + Z2*j   |-> [[Z1, Z2], [-conj(Z2), conj(Z1)]]
//
// Both are injective algebra morphisms compatible with adjoints. Their images
// are cut out by the structure matrix K = [[0, I], [-I, 0]]: a real Y is a
// realified matrix iff K*Y = Y*K, and a complex Y is a complexified matrix iff
// K*conj(Y) = Y*K.

#include <cstddef>

#include "kam/errors.hpp"
#include "kam/matrix.hpp"

namespace kam {

inline constexpr double kImageTol = 1e-10;  // relative

template <typename S>
Matrix<S> structure_matrix(std::size_t half_n) {
    Matrix<S> k(2 * half_n);
    for (std::size_t i = 0; i < half_n; ++i) {
        k(i, half_n + i) = S{1.0};
        k(half_n + i, i) = S{-1.0};
    }
    return k;
}

inline Matrix<double> realify(const Matrix<Complex>& x) {
    const std::size_t n = x.size();
    Matrix<double> y(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = x(i, j).real();
            const double im = x(i, j).imag();
            y(i, j) = re;
            y(n + i, n + j) = re;
            y(i, n + j) = im;
            y(n + i, j) = -im;
        }
    return y;
}

inline Matrix<Complex> complexify(const Matrix<Quaternion>& x) {
    const std::size_t n = x.size();
    Matrix<Complex> y(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto [z1, z2] = complex_split(x(i, j));
            y(i, j) = z1;
            y(i, n + j) = z2;
            y(n + i, j) = -std::conj(z2);
            y(n + i, n + j) = std::conj(z1);
        }
    return y;
}

namespace detail {

inline void require_even(std::size_t n, const char* who) {
    if (n % 2 != 0) throw OddDimension(std::string(who) + ": size must be even");
}

}  // namespace detail

// ||K*Y - Y*K||_F without forming K; the commutator of [[P,Q],[R,S]] with K
// has blocks built from Q+R and S-P.
inline bool in_realified_image(const Matrix<double>& y, double tol = kImageTol) {
    detail::require_even(y.size(), "in_realified_image");
    const std::size_t n = y.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double qr = y(i, n + j) + y(n + i, j);        // Q + R
            const double sp = y(n + i, n + j) - y(i, j);        // S - P
            s += 2.0 * (qr * qr + sp * sp);
        }
    return std::sqrt(s) <= tol * std::max(1.0, frobenius_norm(y));
}

// ||K*conj(Y) - Y*K||_F, the twisted commutation characterizing complexified matrices
inline bool in_complexified_image(const Matrix<Complex>& y, double tol = kImageTol) {
    detail::require_even(y.size(), "in_complexified_image");
    const std::size_t n = y.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // rows of K*conj(Y) are conj(lower), -conj(upper); columns of Y*K are -upper, lower
            s += abs_sq(std::conj(y(n + i, j)) + y(i, n + j));          // block (1,1) vs (1,1)
            s += abs_sq(std::conj(y(n + i, n + j)) - y(i, j));          // block (1,2)
            s += abs_sq(-std::conj(y(i, j)) + y(n + i, n + j));         // block (2,1)
            s += abs_sq(-std::conj(y(i, n + j)) - y(n + i, j));         // block (2,2)
        }
    return std::sqrt(s) <= tol * std::max(1.0, frobenius_norm(y));
}

// Reads A, B from the top block row and rejects if the bottom row deviates
// from (-B, A); no silent averaging.
inline Matrix<Complex> realify_inv(const Matrix<double>& y, double tol = kImageTol) {
    detail::require_even(y.size(), "realify_inv");
    const std::size_t n = y.size() / 2;
    const double bound = tol * std::max(1.0, frobenius_norm(y));
    double dev = 0.0;
    Matrix<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            x(i, j) = Complex{y(i, j), y(i, n + j)};
            dev = std::max(dev, std::abs(y(n + i, j) + y(i, n + j)));
            dev = std::max(dev, std::abs(y(n + i, n + j) - y(i, j)));
        }
    if (dev > bound)
        throw NotInImage("realify_inv: block deviation " + std::to_string(dev) +
                         " exceeds tolerance");
    return x;
}

inline Matrix<Quaternion> complexify_inv(const Matrix<Complex>& y, double tol = kImageTol) {
    detail::require_even(y.size(), "complexify_inv");
    const std::size_t n = y.size() / 2;
    const double bound = tol * std::max(1.0, frobenius_norm(y));
    double dev = 0.0;
    Matrix<Quaternion> x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            x(i, j) = Quaternion::from_complex_pair(y(i, j), y(i, n + j));
            dev = std::max(dev, std::sqrt(abs_sq(y(n + i, j) + std::conj(y(i, n + j)))));
            dev = std::max(dev, std::sqrt(abs_sq(y(n + i, n + j) - std::conj(y(i, j)))));
        }
    if (dev > bound)
        throw NotInImage("complexify_inv: block deviation " + std::to_string(dev) +
                         " exceeds tolerance");
    return x;
}

}  // namespace kam
