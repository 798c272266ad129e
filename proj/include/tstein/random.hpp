#pragma once

#include <cstddef>
#include <random>

#include "tstein/matrix.hpp"
#include "tstein/schur.hpp"

namespace tstein {

/// Entries with independent standard normal real and imaginary parts.
inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (auto& v : m.data()) {
        const double re = g(rng);
        v = Complex{re, g(rng)};
    }
    return m;
}

/// Scales b so that rho(A^T B) equals rho. Returns the scaled copy.
inline ComplexMatrix scale_to_radius(const ComplexMatrix& a, ComplexMatrix b, double rho) {
    const double current = spectral_radius(transpose(a) * b);
    if (rho == 0.0) return b *= 0.0;
    if (current > 0.0) b *= rho / current;
    return b;
}

} // namespace tstein
