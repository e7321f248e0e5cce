#pragma once

#include <cmath>

#include "kam/matrix.hpp"

namespace kam::test {

// absolute 1e-12 below magnitude 1, relative 1e-12 above
inline bool scalar_close(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

template <typename S>
double max_entry_diff(const Matrix<S>& a, const Matrix<S>& b) {
    return max_abs(a - b);
}

template <typename S>
bool matrix_close(const Matrix<S>& a, const Matrix<S>& b, double tol = 1e-12) {
    if (a.size() != b.size()) return false;
    return max_entry_diff(a, b) <= tol * std::max(1.0, max_abs(b));
}

template <typename S>
double rel_residual(const Matrix<S>& a, const Matrix<S>& b) {
    return frobenius_norm(a - b) / std::max(1.0, frobenius_norm(a));
}

}  // namespace kam::test
