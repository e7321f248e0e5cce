#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <utility>

namespace kam {

// Quaternion q = a + b*i + c*j + d*k with double components, stored in
// (a, b, c, d) order so that the C ⊕ Cj split is the pair (a+bi, c+di).
struct Quaternion {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
        : a(a_), b(b_), c(c_), d(d_) {}

    // z1 + z2*j
    static constexpr Quaternion from_complex_pair(std::complex<double> z1,
                                                  std::complex<double> z2) {
        return Quaternion{z1.real(), z1.imag(), z2.real(), z2.imag()};
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

    constexpr Quaternion& operator+=(const Quaternion& r) {
        a += r.a; b += r.b; c += r.c; d += r.d;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        a -= r.a; b -= r.b; c -= r.c; d -= r.d;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }

// Hamilton product; non-commutative, i*j = k.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.a, s * q.b, s * q.c, s * q.d};
}
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) {
    return {q.a / s, q.b / s, q.c / s, q.d / s};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

constexpr double norm_squared(const Quaternion& q) {
    return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

inline double abs(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

inline Quaternion inverse(const Quaternion& q) { return conj(q) / norm_squared(q); }

// q = z1 + z2*j with z1 = a + bi, z2 = c + di; components are copied verbatim.
constexpr std::pair<std::complex<double>, std::complex<double>> complex_split(
    const Quaternion& q) {
    return {std::complex<double>{q.a, q.b}, std::complex<double>{q.c, q.d}};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.a << (q.b < 0 ? "" : "+") << q.b << "i"
              << (q.c < 0 ? "" : "+") << q.c << "j"
              << (q.d < 0 ? "" : "+") << q.d << "k)";
}

}  // namespace kam
