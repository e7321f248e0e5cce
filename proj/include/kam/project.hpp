#pragma once

// Frobenius-nearest structured matrices. hermitian_part is the classical
// nearest-Hermitian projection. project_to_complex_structure maps a symmetric
// PD matrix of even size onto the symmetric K-commutant by averaging with its
// conjugation K A K^t; this is the orthogonal projection, keeps positive
// definiteness (average of two PD matrices) and commutes with K to machine
// precision by construction. project_to_quaternionic_structure is the
// analogue for the twisted symmetry K conj(A) K^t inside the complex
// Hermitian matrices.

#include <cmath>
#include <cstddef>

#include "kam/embed.hpp"
#include "kam/errors.hpp"
#include "kam/matrix.hpp"
#include "kam/spectral.hpp"

namespace kam {

template <typename S>
Matrix<S> hermitian_part(const Matrix<S>& a) {
    return (a + adjoint(a)) * 0.5;
}

namespace detail {

// K M K^t without forming K; blocks [[P,Q],[R,S]] |-> [[S,-R],[-Q,P]]
template <typename S>
Matrix<S> k_conjugated(const Matrix<S>& m) {
    const std::size_t n = m.size() / 2;
    Matrix<S> r(m.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j) = m(n + i, n + j);
            r(i, n + j) = -m(n + i, j);
            r(n + i, j) = -m(i, n + j);
            r(n + i, n + j) = m(i, j);
        }
    return r;
}

}  // namespace detail

inline Matrix<double> project_to_complex_structure(const Matrix<double>& a) {
    detail::require_even(a.size(), "project_to_complex_structure");
    if (!is_hermitian(a)) throw NotPositiveDefinite("project_to_complex_structure: input must be symmetric positive definite");
    if (!is_positive_definite(a))
        throw NotPositiveDefinite("project_to_complex_structure: input must be positive definite");
    return (a + detail::k_conjugated(a)) * 0.5;
}

inline Matrix<Complex> project_to_quaternionic_structure(const Matrix<Complex>& a) {
    detail::require_even(a.size(), "project_to_quaternionic_structure");
    if (!is_hermitian(a)) throw NotPositiveDefinite("project_to_quaternionic_structure: input must be Hermitian positive definite");
    if (!is_positive_definite(a))
        throw NotPositiveDefinite("project_to_quaternionic_structure: input must be positive definite");
    return (a + detail::k_conjugated(conjugated(a))) * 0.5;
}

// ||Y + Y^t||_F of the top-right block: zero exactly when the off-diagonal
// block is skew, i.e. when the projection leaves it untouched
inline double complex_structure_defect(const Matrix<double>& a) {
    detail::require_even(a.size(), "complex_structure_defect");
    const std::size_t n = a.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = a(i, n + j) + a(j, n + i);
            s += v * v;
        }
    return std::sqrt(s);
}

}  // namespace kam
