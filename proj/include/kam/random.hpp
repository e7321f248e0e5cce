#pragma once

// Deterministic random inputs for tests and the verify harness. The engine is
// std::mt19937_64 with an explicit bits-to-double mapping, so a (seed, trial)
// pair reproduces the same matrices on every platform and regardless of which
// other trials ran.

#include <cstdint>
#include <random>
#include <vector>

#include "kam/matrix.hpp"
#include "kam/spectral.hpp"

namespace kam {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform in [-1, 1)
    double symmetric() { return 2.0 * uniform() - 1.0; }

    std::size_t index(std::size_t bound) { return static_cast<std::size_t>(eng_() % bound); }

  private:
    std::mt19937_64 eng_;
};

// splitmix64 step; decorrelates per-trial seeds derived from (seed, index)
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

template <typename S>
S random_scalar(Rng& rng) {
    if constexpr (algebra_of_v<S> == Algebra::R) {
        return rng.symmetric();
    } else if constexpr (algebra_of_v<S> == Algebra::C) {
        const double re = rng.symmetric();
        const double im = rng.symmetric();
        return Complex{re, im};
    } else {
        const double a = rng.symmetric();
        const double b = rng.symmetric();
        const double c = rng.symmetric();
        const double d = rng.symmetric();
        return Quaternion{a, b, c, d};
    }
}

template <typename S>
Matrix<S> random_matrix(std::size_t n, Rng& rng) {
    Matrix<S> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar<S>(rng);
    return m;
}

template <typename S>
Matrix<S> random_hermitian(std::size_t n, Rng& rng) {
    const Matrix<S> g = random_matrix<S>(n, rng);
    return (g + adjoint(g)) * 0.5;
}

// G G* + 0.001 n I with G uniform in [-1, 1] per component
template <typename S>
Matrix<S> random_hpd(std::size_t n, Rng& rng) {
    const Matrix<S> g = random_matrix<S>(n, rng);
    Matrix<S> m = g * adjoint(g);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += S{0.001 * static_cast<double>(n)};
    return m;
}

template <typename S>
Matrix<S> gen_random_hpd(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_hpd<S>(n, rng);
}

// random unitary over the tag: eigenvector frame of a random Hermitian matrix
template <typename S>
Matrix<S> random_unitary(std::size_t n, Rng& rng) {
    return eig_hermitian(random_hermitian<S>(n, rng)).eigenvectors;
}

inline std::vector<double> random_weights(std::size_t k, Rng& rng) {
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& v : w) {
        v = rng.uniform(0.1, 1.0);
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace kam
