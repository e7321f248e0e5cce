#pragma once

// Kubo-Ando operator means. A mean is generated by its representing function
// f (operator monotone on (0,inf), f(1) = 1) through
//
//     A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2},
//
// and that evaluation transports across the algebra embeddings: the mean with
// the same f applied upstairs agrees with the embedded downstairs mean. For
// 2x2 matrices the functional calculus collapses to an affine expression
// A sigma B = alpha*A + beta*B whose coefficients depend only on the spectrum
// of A^{-1/2} B A^{-1/2}, hence only on its trace and determinant (Moore
// determinant over H).

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kam/embed.hpp"
#include "kam/errors.hpp"
#include "kam/matrix.hpp"
#include "kam/spectral.hpp"

namespace kam {

struct RepresentingFunction {
    std::string name;
    std::function<double(double)> eval;  // on (0, inf), eval(1) == 1
};

inline RepresentingFunction arithmetic_function() {
    return {"arithmetic", [](double x) { return 0.5 * (1.0 + x); }};
}

inline RepresentingFunction geometric_function() {
    return {"geometric", [](double x) { return std::sqrt(x); }};
}

inline RepresentingFunction harmonic_function() {
    return {"harmonic", [](double x) { return 2.0 * x / (1.0 + x); }};
}

inline RepresentingFunction logarithmic_function() {
    return {"logarithmic", [](double x) {
                const double u = x - 1.0;
                if (std::abs(u) < 1e-8) return 1.0 + 0.5 * u;  // removable singularity at 1
                return u / std::log(x);
            }};
}

inline RepresentingFunction weighted_geometric_function(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw FunctionDomainError("weighted geometric exponent must lie in [0, 1], got " +
                                  std::to_string(t));
    return {"weighted-geometric-" + std::to_string(t),
            [t](double x) { return std::pow(x, t); }};
}

inline const std::vector<RepresentingFunction>& catalog() {
    static const std::vector<RepresentingFunction> entries = {
        arithmetic_function(), geometric_function(), harmonic_function(),
        logarithmic_function(), weighted_geometric_function(0.25)};
    return entries;
}

inline RepresentingFunction make_representing_function(const std::string& name,
                                                       std::optional<double> t = {}) {
    if (name == "arithmetic") return arithmetic_function();
    if (name == "geometric") return geometric_function();
    if (name == "harmonic") return harmonic_function();
    if (name == "logarithmic") return logarithmic_function();
    if (name == "weighted-geometric") return weighted_geometric_function(t.value_or(0.5));
    throw FunctionDomainError("unknown representing function '" + name + "'");
}

// Enforces f(1) = 1 and positivity on a log grid; operator monotonicity is not
// decidable from samples, so a failed scalar monotonicity sweep only returns a
// warning string.
inline std::optional<std::string> check_representing_function(const RepresentingFunction& f) {
    if (std::abs(f.eval(1.0) - 1.0) > 1e-12)
        throw FunctionDomainError(f.name + ": f(1) must equal 1");
    double prev = -1.0;
    bool monotone = true;
    for (int k = 0; k <= 64; ++k) {
        const double x = std::pow(10.0, -6.0 + 12.0 * k / 64.0);
        const double v = f.eval(x);
        if (!(v > 0.0) || !std::isfinite(v))
            throw FunctionDomainError(f.name + ": f must be positive and finite on (0, inf)");
        if (v < prev) monotone = false;
        prev = v;
    }
    if (!monotone)
        return f.name + ": sampled values are not monotone; this is not a valid "
                        "representing function unless f is operator monotone";
    return std::nullopt;
}

enum class MeanPath { direct, closed_form_2x2, trace_det };

template <typename S>
struct MeanResult {
    Matrix<S> value;
    MeanPath path = MeanPath::direct;
    double eigen_gap = 0.0;       // spread of the spectrum of A^{-1/2} B A^{-1/2}
    double herm_residual = 0.0;   // ||M - (M + M*)/2||_F before symmetrization
};

namespace detail {

template <typename S>
std::pair<Matrix<S>, Matrix<S>> sqrt_and_inv_sqrt(const Matrix<S>& a, const char* who) {
    const auto eig = eig_hermitian(a);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite(std::string(who) + ": first operand is not positive definite");
    return {rebuild(eig, [](double t) { return std::sqrt(t); }),
            rebuild(eig, [](double t) { return 1.0 / std::sqrt(t); })};
}

template <typename S>
Matrix<S> inv_sqrt(const Matrix<S>& a, const char* who) {
    const auto eig = eig_hermitian(a);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite(std::string(who) + ": first operand is not positive definite");
    return rebuild(eig, [](double t) { return 1.0 / std::sqrt(t); });
}

// trace and determinant of a 2x2 Hermitian matrix; over H these are the
// reduced trace and the Moore determinant a*d - |q|^2
template <typename S>
std::pair<double, double> hermitian_trace_det_2x2(const Matrix<S>& x) {
    const double tr = real_part(x(0, 0)) + real_part(x(1, 1));
    const double det = real_part(x(0, 0)) * real_part(x(1, 1)) - abs_sq(x(0, 1));
    return {tr, det};
}

}  // namespace detail

template <typename S>
MeanResult<S> kubo_ando_mean(const Matrix<S>& a, const Matrix<S>& b,
                             const RepresentingFunction& f) {
    a.require_same_size(b);
    const auto [root, inv_root] = detail::sqrt_and_inv_sqrt(a, "kubo_ando_mean");
    const Matrix<S> x0 = inv_root * b * inv_root;
    const Matrix<S> x = (x0 + adjoint(x0)) * 0.5;
    const auto xeig = eig_hermitian(x);
    if (xeig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite("kubo_ando_mean: second operand is not positive definite");
    const Matrix<S> fx = detail::rebuild(xeig, f.eval);
    const Matrix<S> m = root * fx * root;
    MeanResult<S> out{(m + adjoint(m)) * 0.5, MeanPath::direct, 0.0, 0.0};
    out.eigen_gap = xeig.eigenvalues.back() - xeig.eigenvalues.front();
    out.herm_residual = frobenius_norm(m - out.value);
    return out;
}

// || Psi(A sigma B) - Psi(A) sigma Psi(B) ||_F / max(1, ||Psi(A sigma B)||_F)
// with the same representing function on both sides
inline double mean_correspondence_residual(const Matrix<Complex>& a, const Matrix<Complex>& b,
                                           const RepresentingFunction& f) {
    const Matrix<double> lifted = realify(kubo_ando_mean(a, b, f).value);
    const Matrix<double> upstairs = kubo_ando_mean(realify(a), realify(b), f).value;
    return frobenius_norm(lifted - upstairs) / std::max(1.0, frobenius_norm(lifted));
}

inline double mean_correspondence_residual(const Matrix<Quaternion>& a,
                                           const Matrix<Quaternion>& b,
                                           const RepresentingFunction& f) {
    const Matrix<Complex> lifted = complexify(kubo_ando_mean(a, b, f).value);
    const Matrix<Complex> upstairs = kubo_ando_mean(complexify(a), complexify(b), f).value;
    return frobenius_norm(lifted - upstairs) / std::max(1.0, frobenius_norm(lifted));
}

// Roots of t^2 - tr*t + det for a Hermitian PD 2x2 spectrum; the smaller root
// comes from the product to avoid cancellation.
inline std::pair<double, double> eigs_from_trace_det(double tr, double det) {
    if (!(tr > 0.0) || !(det > 0.0))
        throw InvalidSpectrumData("eigs_from_trace_det: trace and determinant must be positive");
    const double disc = tr * tr - 4.0 * det;
    if (disc < -1e-12)
        throw InvalidSpectrumData("eigs_from_trace_det: negative discriminant " +
                                  std::to_string(disc));
    const double lp = 0.5 * (tr + std::sqrt(std::max(disc, 0.0)));
    return {lp, det / lp};
}

inline constexpr double kDegenerateGapTol = 1e-12;   // relative to max(1, lambda_+)
inline constexpr double kFiniteDiffGapTol = 1e-7;
inline constexpr double kFiniteDiffStep = 1e-5;      // relative to the midpoint

namespace detail {

// Interpolant of f on a two-point spectrum written around the midpoint:
// r(t) = center + slope * (t - mid). Divided differences when the gap is
// healthy; a central finite-difference slope in the band where the divided
// difference would lose half the digits; slope 0 at the exact-degenerate end.
struct CenteredAffine {
    double center = 0.0;
    double slope = 0.0;
    double mid = 0.0;
    double gap = 0.0;
};

inline CenteredAffine centered_affine(double lambda_plus, double lambda_minus,
                                      const RepresentingFunction& f) {
    if (lambda_plus < lambda_minus) std::swap(lambda_plus, lambda_minus);
    CenteredAffine r;
    r.gap = lambda_plus - lambda_minus;
    r.mid = 0.5 * (lambda_plus + lambda_minus);
    const double scale = std::max(1.0, lambda_plus);
    if (r.gap <= kDegenerateGapTol * scale) {
        r.center = f.eval(lambda_plus);
        r.mid = lambda_plus;
    } else if (r.gap <= kFiniteDiffGapTol * scale) {
        const double h = kFiniteDiffStep * r.mid;
        r.slope = (f.eval(r.mid + h) - f.eval(r.mid - h)) / (2.0 * h);
        r.center = f.eval(r.mid);
    } else {
        const double fp = f.eval(lambda_plus);
        const double fm = f.eval(lambda_minus);
        r.slope = (fp - fm) / r.gap;
        r.center = 0.5 * (fp + fm);
    }
    return r;
}

}  // namespace detail

// Affine coefficients of f on a two-point spectrum: f(X) = alpha*I + beta*X
// with alpha the intercept, i.e. beta the divided difference. The centered
// interpolant is re-anchored at zero; callers combining whole matrices should
// prefer the centered form (see mean_2x2_closed_form), which avoids the
// cancellation in alpha when the gap is small.
inline std::pair<double, double> affine_coefficients_2x2(double lambda_plus, double lambda_minus,
                                                         const RepresentingFunction& f) {
    const auto r = detail::centered_affine(lambda_plus, lambda_minus, f);
    return {r.center - r.slope * r.mid, r.slope};
}

template <typename S>
MeanResult<S> mean_2x2_closed_form(const Matrix<S>& a, const Matrix<S>& b,
                                   const RepresentingFunction& f) {
    a.require_same_size(b);
    if (a.size() != 2) throw DimensionMismatch("mean_2x2_closed_form: matrices must be 2x2");
    const Matrix<S> inv_root = detail::inv_sqrt(a, "mean_2x2_closed_form");
    const Matrix<S> x0 = inv_root * b * inv_root;
    const Matrix<S> x = (x0 + adjoint(x0)) * 0.5;
    const auto [tr, det] = detail::hermitian_trace_det_2x2(x);
    if (!(tr > 0.0) || !(det > 0.0))
        throw NotPositiveDefinite("mean_2x2_closed_form: second operand is not positive definite");
    const auto [lp, lm] = eigs_from_trace_det(tr, det);
    const auto r = detail::centered_affine(lp, lm, f);
    // alpha*A + beta*B evaluated as center*A + slope*(B - mid*A): the slope
    // noise then multiplies a matrix of norm O(gap) instead of O(|B|)
    return {r.center * a + r.slope * (b - r.mid * a), MeanPath::closed_form_2x2, r.gap, 0.0};
}

// A # B = (B + sqrt(det X) A) / sqrt(tr X + 2 sqrt(det X)), X = A^{-1/2} B A^{-1/2}
template <typename S>
Matrix<S> geometric_mean_trace_det(const Matrix<S>& a, const Matrix<S>& b) {
    a.require_same_size(b);
    if (a.size() != 2) throw DimensionMismatch("geometric_mean_trace_det: matrices must be 2x2");
    const Matrix<S> inv_root = detail::inv_sqrt(a, "geometric_mean_trace_det");
    const Matrix<S> x0 = inv_root * b * inv_root;
    const Matrix<S> x = (x0 + adjoint(x0)) * 0.5;
    const auto [tr, det] = detail::hermitian_trace_det_2x2(x);
    if (!(tr > 0.0) || !(det > 0.0))
        throw NotPositiveDefinite("geometric_mean_trace_det: operands are not positive definite");
    const double root_det = std::sqrt(det);
    return (1.0 / std::sqrt(tr + 2.0 * root_det)) * (b + root_det * a);
}

struct Embedded4Coefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
};

// For T positive definite in the realified image of Mat_2(C): T has (at most)
// two distinct eigenvalues, each of multiplicity two, recoverable from
// lambda_+ + lambda_- = tr(T)/2 and lambda_+ * lambda_- = det(T)^{1/2}.
inline Embedded4Coefficients affine_coefficients_embedded4(const Matrix<double>& t,
                                                           const RepresentingFunction& f) {
    if (t.size() != 4)
        throw DimensionMismatch("affine_coefficients_embedded4: matrix must be 4x4");
    if (!in_realified_image(t))
        throw NotInImage("affine_coefficients_embedded4: matrix does not commute with K");
    if (!is_positive_definite(t))
        throw NotPositiveDefinite("affine_coefficients_embedded4: matrix is not positive definite");
    const double half_tr = 0.5 * trace(t);
    const double sqrt_det = std::sqrt(std::max(determinant(t), 0.0));
    const auto [lp, lm] = eigs_from_trace_det(half_tr, sqrt_det);
    const auto [alpha, beta] = affine_coefficients_2x2(lp, lm, f);
    return {alpha, beta, lp, lm};
}

struct AffineFit {
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;
    bool degenerate = false;  // X, Y linearly dependent; 1-parameter fit returned
};

namespace detail {

template <typename S>
double real_frobenius_inner(const Matrix<S>& a, const Matrix<S>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s += real_part(conjugate(a(i, j)) * b(i, j));
    return s;
}

}  // namespace detail

// Least-squares minimizer of ||M - (alpha X + beta Y)||_F over real (alpha, beta)
// via the 2x2 normal equations on Frobenius inner products.
template <typename S>
AffineFit affine_fit_residual(const Matrix<S>& x, const Matrix<S>& y, const Matrix<S>& m) {
    x.require_same_size(y);
    x.require_same_size(m);
    const double gxx = detail::real_frobenius_inner(x, x);
    const double gxy = detail::real_frobenius_inner(x, y);
    const double gyy = detail::real_frobenius_inner(y, y);
    const double rx = detail::real_frobenius_inner(x, m);
    const double ry = detail::real_frobenius_inner(y, m);
    const double det = gxx * gyy - gxy * gxy;

    AffineFit fit;
    if (det <= 1e-12 * gxx * gyy || gxx == 0.0 || gyy == 0.0) {
        fit.degenerate = true;
        if (gxx > 0.0) {
            fit.alpha = rx / gxx;
        } else if (gyy > 0.0) {
            fit.beta = ry / gyy;
        }
    } else {
        fit.alpha = (gyy * rx - gxy * ry) / det;
        fit.beta = (gxx * ry - gxy * rx) / det;
    }
    fit.residual = frobenius_norm(m - (fit.alpha * x + fit.beta * y));
    return fit;
}

}  // namespace kam
