#pragma once

// Hermitian eigendecomposition and the functional calculus f(X) = U f(L) U*.
//
// Over R and C the solver is a cyclic Jacobi iteration with two-sided unitary
// 2x2 rotations, run until the off-diagonal Frobenius mass falls below
// 1e-14 * ||X||_F (cap: 100 sweeps). Over H the matrix is pushed through the
// complex adjoint representation, the 2n x 2n complex problem is solved, and
// eigenvectors are pulled back; the eigenvalues of the representation come in
// pairs and one representative per pair is kept.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kam/embed.hpp"
#include "kam/errors.hpp"
#include "kam/matrix.hpp"

namespace kam {

template <typename S>
struct EigenDecomposition {
    Matrix<S> eigenvectors;            // unitary; columns are (right) eigenvectors
    std::vector<double> eigenvalues;   // real, ascending
};

namespace detail {

inline constexpr double kOffDiagStopFactor = 1e-14;
inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kPairingTolFactor = 1e-8;

template <typename S>
double offdiag_norm(const Matrix<S>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) s += abs_sq(a(i, j));
    return std::sqrt(s);
}

// One rotation zeroing a(p,q). The unitary is J = diag(1, w) * G restricted to
// the (p,q) plane, with w = conj(a_pq)/|a_pq| turning the pivot real and G the
// classical symmetric Jacobi rotation; updates A <- J* A J and V <- V J.
// Pivots at or below the threshold are skipped: they cannot be the reason the
// off-diagonal mass is above the stopping bound, and dividing by a subnormal
// |a_pq| would make w lose its unit modulus.
template <typename S>
void jacobi_rotate(Matrix<S>& a, Matrix<S>& v, std::size_t p, std::size_t q, double threshold) {
    const S apq = a(p, q);
    const double r = scalar_abs(apq);
    if (r <= threshold) return;
    const S w = conjugate(apq) * (1.0 / r);
    const double tau = (real_part(a(q, q)) - real_part(a(p, p))) / (2.0 * r);
    const double t = 1.0 / (tau + std::copysign(std::sqrt(1.0 + tau * tau), tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {  // A <- A J
        const S akp = a(k, p);
        const S akq = a(k, q);
        a(k, p) = akp * c - akq * (w * s);
        a(k, q) = akp * s + akq * (w * c);
    }
    for (std::size_t k = 0; k < n; ++k) {  // A <- J* A
        const S apk = a(p, k);
        const S aqk = a(q, k);
        a(p, k) = apk * c - (conjugate(w) * s) * aqk;
        a(q, k) = apk * s + (conjugate(w) * c) * aqk;
    }
    a(p, q) = S{};
    a(q, p) = S{};
    for (std::size_t k = 0; k < n; ++k) {  // V <- V J
        const S vkp = v(k, p);
        const S vkq = v(k, q);
        v(k, p) = vkp * c - vkq * (w * s);
        v(k, q) = vkp * s + vkq * (w * c);
    }
}

// Deterministic output: ascending eigenvalues, and each column rotated so its
// first non-negligible component is real and positive.
template <typename S>
void canonicalize(Matrix<S>& u, std::vector<double>& lam) {
    const std::size_t n = u.size();
    std::vector<std::size_t> order(lam.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return lam[x] < lam[y]; });
    Matrix<S> up(n);
    std::vector<double> lp(lam.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
        lp[c] = lam[order[c]];
        for (std::size_t k = 0; k < n; ++k) up(k, c) = u(k, order[c]);
    }
    for (std::size_t c = 0; c < order.size(); ++c) {
        double colmax = 0.0;
        for (std::size_t k = 0; k < n; ++k) colmax = std::max(colmax, std::sqrt(abs_sq(up(k, c))));
        for (std::size_t k = 0; k < n; ++k) {
            const double m = std::sqrt(abs_sq(up(k, c)));
            if (m > 1e-10 * colmax) {
                const S phase = conjugate(up(k, c)) * (1.0 / m);
                for (std::size_t r = 0; r < n; ++r) up(r, c) = up(r, c) * phase;
                break;
            }
        }
    }
    u = std::move(up);
    lam = std::move(lp);
}

template <typename S>
EigenDecomposition<S> jacobi_eigensolver(const Matrix<S>& x) {
    const std::size_t n = x.size();
    Matrix<S> a = (x + adjoint(x)) * 0.5;  // exact Hermitian working copy
    Matrix<S> v = Matrix<S>::identity(n);
    const double stop = kOffDiagStopFactor * frobenius_norm(a);
    const double threshold = stop / (2.0 * static_cast<double>(n));

    bool converged = (n <= 1) || offdiag_norm(a) <= stop;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q, threshold);
        converged = offdiag_norm(a) <= stop;
    }
    if (!converged)
        throw ConvergenceFailure("jacobi_eigensolver: sweep cap reached, off-diagonal mass " +
                                 std::to_string(offdiag_norm(a)));

    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = real_part(a(i, i));
    canonicalize(v, lam);
    return {std::move(v), std::move(lam)};
}

using CVec = std::vector<Complex>;

inline Complex cdot(const CVec& x, const CVec& y) {  // <x, y> = x* y
    Complex s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
    return s;
}

inline CVec k_conj(const CVec& w) {  // w |-> K * conj(w), the quaternionic structure on C^2n
    const std::size_t n = w.size() / 2;
    CVec r(w.size());
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = std::conj(w[n + k]);
        r[n + k] = -std::conj(w[k]);
    }
    return r;
}

// Pull a quaternionic-compatible orthonormal pair basis out of a degenerate
// eigenspace: greedily take the remaining eigenvector with the largest
// residual after projecting out accepted (w, K*conj(w)) pairs. The accepted
// list spans every cluster processed so far: for clusters separated by a tiny
// spectral gap the complex eigenvectors (and hence the K*conj partners) leak
// across clusters at the eps*|X|/gap level, and only a global
// orthogonalization keeps the quaternionic frame unitary.
inline std::vector<CVec> pair_cluster(const std::vector<CVec>& cluster,
                                      std::vector<CVec>& accepted) {
    std::vector<CVec> chosen;          // w_t only
    std::vector<bool> used(cluster.size(), false);
    const std::size_t pairs = cluster.size() / 2;
    for (std::size_t t = 0; t < pairs; ++t) {
        std::vector<std::pair<double, CVec>> residuals(cluster.size());
        double max_norm = 0.0;
        for (std::size_t cnd = 0; cnd < cluster.size(); ++cnd) {
            if (used[cnd]) continue;
            CVec r = cluster[cnd];
            for (const CVec& u : accepted) {
                const Complex ov = cdot(u, r);
                for (std::size_t k = 0; k < r.size(); ++k) r[k] -= ov * u[k];
            }
            double nr = 0.0;
            for (const Complex& z : r) nr += abs_sq(z);
            nr = std::sqrt(nr);
            residuals[cnd] = {nr, std::move(r)};
            max_norm = std::max(max_norm, nr);
        }
        if (max_norm < 1e-6)
            throw ConvergenceFailure("quaternionic eigenvector pairing failed in a degenerate cluster");
        // first near-maximal candidate, so columns keep ascending-eigenvalue
        // order when the cluster actually contains two close but distinct pairs
        std::size_t pick = 0;
        while (used[pick] || residuals[pick].first < 0.9 * max_norm) ++pick;
        CVec w = std::move(residuals[pick].second);
        for (Complex& z : w) z /= residuals[pick].first;
        used[pick] = true;
        accepted.push_back(w);
        accepted.push_back(k_conj(w));
        chosen.push_back(std::move(w));
    }
    return chosen;
}

inline EigenDecomposition<Quaternion> quaternion_eigensolver(const Matrix<Quaternion>& x) {
    const std::size_t n = x.size();
    const auto big = jacobi_eigensolver(complexify(x));
    const double pair_tol = kPairingTolFactor * std::max(1.0, frobenius_norm(x));

    Matrix<Quaternion> u(n);
    std::vector<double> lam;
    lam.reserve(n);
    std::vector<CVec> accepted;
    std::size_t col = 0;
    std::size_t start = 0;
    while (start < 2 * n) {
        std::size_t stop = start + 1;
        while (stop < 2 * n && big.eigenvalues[stop] - big.eigenvalues[stop - 1] <= pair_tol)
            ++stop;
        const std::size_t len = stop - start;
        if (len % 2 != 0)
            throw ConvergenceFailure("quaternionic eigenvalue cluster of odd size " +
                                     std::to_string(len));
        std::vector<CVec> cluster(len, CVec(2 * n));
        for (std::size_t c = 0; c < len; ++c)
            for (std::size_t k = 0; k < 2 * n; ++k)
                cluster[c][k] = big.eigenvectors(k, start + c);
        for (const CVec& w : pair_cluster(cluster, accepted)) {
            // identification H^n ~ C^2n: column (a; b) lifts to u + v*j with
            // u_k = a_k and v_k = -conj(b_k)
            for (std::size_t k = 0; k < n; ++k)
                u(k, col) = Quaternion::from_complex_pair(w[k], -std::conj(w[n + k]));
            ++col;
        }
        for (std::size_t t = 0; t < len / 2; ++t)
            lam.push_back(0.5 * (big.eigenvalues[start + 2 * t] + big.eigenvalues[start + 2 * t + 1]));
        start = stop;
    }
    canonicalize(u, lam);
    return {std::move(u), std::move(lam)};
}

template <typename S, typename F>
Matrix<S> rebuild(const EigenDecomposition<S>& eig, F&& f) {
    const std::size_t n = eig.eigenvectors.size();
    Matrix<S> scaled = eig.eigenvectors;
    for (std::size_t c = 0; c < n; ++c) {
        const double fv = f(eig.eigenvalues[c]);
        if (!std::isfinite(fv))
            throw FunctionDomainError("functional calculus: f not finite at eigenvalue " +
                                      std::to_string(eig.eigenvalues[c]));
        for (std::size_t k = 0; k < n; ++k) scaled(k, c) = scaled(k, c) * fv;
    }
    Matrix<S> m = scaled * adjoint(eig.eigenvectors);
    return (m + adjoint(m)) * 0.5;
}

}  // namespace detail

template <typename S>
EigenDecomposition<S> eig_hermitian(const Matrix<S>& x) {
    if (!is_hermitian(x)) throw NotHermitian("eig_hermitian: matrix is not Hermitian");
    if constexpr (algebra_of_v<S> == Algebra::H)
        return detail::quaternion_eigensolver(x);
    else
        return detail::jacobi_eigensolver(x);
}

template <typename S>
double min_eigenvalue(const Matrix<S>& x) {
    return eig_hermitian(x).eigenvalues.front();
}

inline constexpr double kPdTol = 1e-12;

// min eigenvalue > tol * max(1, ||X||_F); delegates to the eigensolver so a
// single numerical kernel backs every predicate
template <typename S>
bool is_positive_definite(const Matrix<S>& x, double tol = kPdTol) {
    if (!is_hermitian(x)) throw NotHermitian("is_positive_definite: matrix is not Hermitian");
    return min_eigenvalue(x) > tol * std::max(1.0, frobenius_norm(x));
}

// Loewner partial order: A <= B iff B - A is positive semidefinite (up to tol)
template <typename S>
bool loewner_leq(const Matrix<S>& a, const Matrix<S>& b, double tol = 1e-10) {
    a.require_same_size(b);
    if (!is_hermitian(a) || !is_hermitian(b))
        throw NotHermitian("loewner_leq: both matrices must be Hermitian");
    const Matrix<S> d = b - a;
    return min_eigenvalue(d) >= -tol * std::max(1.0, frobenius_norm(d));
}

// f(X) = U f(L) U* for positive definite X
template <typename S, typename F>
Matrix<S> apply_function(const Matrix<S>& x, F&& f) {
    const auto eig = eig_hermitian(x);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite("apply_function: matrix is not positive definite");
    return detail::rebuild(eig, std::forward<F>(f));
}

template <typename S>
Matrix<S> mexp(const Matrix<S>& x) {
    const auto eig = eig_hermitian(x);  // Hermitian input is enough
    return detail::rebuild(eig, [](double t) { return std::exp(t); });
}

template <typename S>
Matrix<S> mlog(const Matrix<S>& x) {
    const auto eig = eig_hermitian(x);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite("mlog: matrix is not positive definite");
    return detail::rebuild(eig, [](double t) { return std::log(t); });
}

// X^t = exp(t log X)
template <typename S>
Matrix<S> mpow(const Matrix<S>& x, double t) {
    const auto eig = eig_hermitian(x);
    if (eig.eigenvalues.front() <= 0.0)
        throw NotPositiveDefinite("mpow: matrix is not positive definite");
    return detail::rebuild(eig, [t](double v) { return std::exp(t * std::log(v)); });
}

}  // namespace kam
