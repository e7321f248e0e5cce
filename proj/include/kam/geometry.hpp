#pragma once

// Log-Euclidean geometry on the positive definite cones: the distance
// d(A, B) = ||log A - log B||_F, its 1/sqrt(2)-rescaled restriction to the
// embedded cones (which turns both embeddings into isometries), and weighted
// barycenters exp(sum w_j log A_j).

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "kam/embed.hpp"
#include "kam/errors.hpp"
#include "kam/matrix.hpp"
#include "kam/spectral.hpp"

namespace kam {

using WeightVector = std::vector<double>;

inline void validate_weights(const WeightVector& w, std::size_t count) {
    if (w.size() != count)
        throw WeightMismatch("expected " + std::to_string(count) + " weights, got " +
                             std::to_string(w.size()));
    double sum = 0.0;
    for (double v : w) {
        if (!(v > 0.0)) throw WeightMismatch("weights must be strictly positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw WeightMismatch("weights must sum to 1, got " + std::to_string(sum));
}

template <typename S>
double log_euclidean_distance(const Matrix<S>& a, const Matrix<S>& b) {
    a.require_same_size(b);
    return frobenius_norm(mlog(a) - mlog(b));
}

// (1/sqrt(2)) * d restricted to the realified cone; equals the complex
// distance of the preimages
inline double scaled_distance_on_image(const Matrix<double>& a, const Matrix<double>& b,
                                       double tol = kImageTol) {
    if (!in_realified_image(a, tol) || !in_realified_image(b, tol))
        throw NotInImage("scaled_distance_on_image: arguments must lie in the realified cone");
    return log_euclidean_distance(a, b) / std::sqrt(2.0);
}

// same, for the complexified cone inside the complex matrices
inline double scaled_distance_on_image(const Matrix<Complex>& a, const Matrix<Complex>& b,
                                       double tol = kImageTol) {
    if (!in_complexified_image(a, tol) || !in_complexified_image(b, tol))
        throw NotInImage("scaled_distance_on_image: arguments must lie in the complexified cone");
    return log_euclidean_distance(a, b) / std::sqrt(2.0);
}

template <typename S>
Matrix<S> log_euclidean_barycenter(const std::vector<Matrix<S>>& as, const WeightVector& w) {
    if (as.empty()) throw WeightMismatch("barycenter of an empty family");
    validate_weights(w, as.size());
    Matrix<S> acc(as.front().size());
    for (std::size_t j = 0; j < as.size(); ++j) {
        as.front().require_same_size(as[j]);
        acc += w[j] * mlog(as[j]);
    }
    return mexp(acc);
}

}  // namespace kam
