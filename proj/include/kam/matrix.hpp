#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "kam/errors.hpp"
#include "kam/quaternion.hpp"

namespace kam {

using Complex = std::complex<double>;

// Runtime tag for the three entry algebras; the compile-time scalar type is
// the source of truth, this enum only surfaces it at I/O boundaries.
enum class Algebra { R, C, H };

inline const char* algebra_name(Algebra a) {
    switch (a) {
        case Algebra::R: return "R";
        case Algebra::C: return "C";
        default: return "H";
    }
}

// ---- scalar helpers shared by all matrix code -------------------------------

inline double conjugate(double x) { return x; }
inline Complex conjugate(const Complex& z) { return std::conj(z); }
inline Quaternion conjugate(const Quaternion& q) { return conj(q); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
inline double abs_sq(const Quaternion& q) { return norm_squared(q); }

// magnitude without the underflow of sqrt(abs_sq(s)) on subnormal squares
inline double scalar_abs(double x) { return std::abs(x); }
inline double scalar_abs(const Complex& z) { return std::abs(z); }
inline double scalar_abs(const Quaternion& q) {
    const double m = std::max(std::max(std::abs(q.a), std::abs(q.b)),
                              std::max(std::abs(q.c), std::abs(q.d)));
    if (m == 0.0) return 0.0;
    const double a = q.a / m, b = q.b / m, c = q.c / m, d = q.d / m;
    return m * std::sqrt(a * a + b * b + c * c + d * d);
}

inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }
inline double real_part(const Quaternion& q) { return q.a; }

inline bool finite_scalar(double x) { return std::isfinite(x); }
inline bool finite_scalar(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}
inline bool finite_scalar(const Quaternion& q) {
    return std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c) && std::isfinite(q.d);
}

template <typename S>
struct algebra_of;
template <> struct algebra_of<double> { static constexpr Algebra value = Algebra::R; };
template <> struct algebra_of<Complex> { static constexpr Algebra value = Algebra::C; };
template <> struct algebra_of<Quaternion> { static constexpr Algebra value = Algebra::H; };

template <typename S>
inline constexpr Algebra algebra_of_v = algebra_of<S>::value;

// number of real components per scalar
template <typename S>
inline constexpr int component_count =
    algebra_of_v<S> == Algebra::R ? 1 : (algebra_of_v<S> == Algebra::C ? 2 : 4);

// ---- dense square matrix over the tagged algebra ----------------------------

template <typename S>
class Matrix {
  public:
    using value_type = S;

    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), e_(n * n, S{}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S{1.0};
        return m;
    }

    static Matrix zero(std::size_t n) { return Matrix(n); }

    static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = S{d[i]};
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<S>> rows) {
        Matrix m(rows.size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.n_) throw DimensionMismatch("from_rows: ragged rows");
            std::size_t j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t size() const { return n_; }

    S& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix& operator+=(const Matrix& r) {
        require_same_size(r);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += r.e_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& r) {
        require_same_size(r);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= r.e_[k];
        return *this;
    }

    void require_same_size(const Matrix& r) const {
        if (n_ != r.n_)
            throw DimensionMismatch("matrix sizes differ: " + std::to_string(n_) + " vs " +
                                    std::to_string(r.n_));
    }

  private:
    std::size_t n_ = 0;
    std::vector<S> e_;
};

template <typename S>
Matrix<S> operator+(Matrix<S> a, const Matrix<S>& b) { return a += b; }

template <typename S>
Matrix<S> operator-(Matrix<S> a, const Matrix<S>& b) { return a -= b; }

template <typename S>
Matrix<S> operator-(const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = -a(i, j);
    return r;
}

template <typename S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
    a.require_same_size(b);
    const std::size_t n = a.size();
    Matrix<S> r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const S aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

template <typename S>
Matrix<S> operator*(double s, const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = s * a(i, j);
    return r;
}

template <typename S>
Matrix<S> operator*(const Matrix<S>& a, double s) { return s * a; }

// Scalar multiplication from the left; matters over H where entries do not commute.
template <typename S>
Matrix<S> scale_left(const S& s, const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = s * a(i, j);
    return r;
}

template <typename S>
Matrix<S> transpose(const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = a(j, i);
    return r;
}

template <typename S>
Matrix<S> conjugated(const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = conjugate(a(i, j));
    return r;
}

// conjugate transpose under the tag's conjugation; an involution
template <typename S>
Matrix<S> adjoint(const Matrix<S>& a) {
    Matrix<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = conjugate(a(j, i));
    return r;
}

template <typename S>
S trace(const Matrix<S>& a) {
    S t{};
    for (std::size_t i = 0; i < a.size(); ++i) t += a(i, i);
    return t;
}

template <typename S>
double frobenius_norm(const Matrix<S>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s += abs_sq(a(i, j));
    return std::sqrt(s);
}

template <typename S>
double max_abs(const Matrix<S>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::sqrt(abs_sq(a(i, j))));
    return m;
}

template <typename S>
bool all_finite(const Matrix<S>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!finite_scalar(a(i, j))) return false;
    return true;
}

inline double default_hermitian_tol(double fro) { return 1e-10 * std::max(1.0, fro); }

template <typename S>
bool is_hermitian(const Matrix<S>& a, double tol) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            const S d = a(i, j) - conjugate(a(j, i));
            dev = std::max(dev, std::sqrt(abs_sq(d)));
        }
    return dev <= tol;
}

template <typename S>
bool is_hermitian(const Matrix<S>& a) {
    return is_hermitian(a, default_hermitian_tol(frobenius_norm(a)));
}

// Real-part trace. Over H it is only meaningful on Hermitian matrices, where
// it coincides with the (then real) plain trace.
template <typename S>
double reduced_trace(const Matrix<S>& a) {
    if constexpr (algebra_of_v<S> == Algebra::H) {
        if (!is_hermitian(a)) throw NotHermitian("reduced_trace over H requires a Hermitian matrix");
    }
    double t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) t += real_part(a(i, i));
    return t;
}

// LU with partial pivoting; real matrices only (used for the embedded 4x4 coefficients).
inline double determinant(Matrix<double> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        if (a(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

template <typename S>
std::ostream& operator<<(std::ostream& os, const Matrix<S>& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < a.size(); ++j) os << a(i, j) << (j + 1 < a.size() ? ", " : "");
        os << (i + 1 < a.size() ? ";\n" : "]");
    }
    return os;
}

}  // namespace kam
