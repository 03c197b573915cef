// oscillator.hpp: normalized harmonic-oscillator eigenfunctions
//
// psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(sqrt(pi) 2^n n!), generated by the
// three-term recurrence on psi_n itself so nothing overflows at large n.

#pragma once

#include <cmath>

#include "dicat/types.hpp"

namespace dicat {

/// psi_0(x) .. psi_{n_max}(x).
inline RealVector oscillator_functions(double x, int n_max) {
    RealVector psi(n_max + 1);
    psi[0] = std::exp(-0.5 * x * x) / std::pow(pi, 0.25);
    if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int n = 1; n < n_max; ++n) {
        const double dn = n;
        psi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * psi[n] - std::sqrt(dn / (dn + 1.0)) * psi[n - 1];
    }
    return psi;
}

/// Rows are grid points, columns Fock levels.
inline RealMatrix oscillator_table(const RealVector& x, int n_max) {
    RealMatrix T(x.size(), n_max + 1);
    for (Eigen::Index i = 0; i < x.size(); ++i) T.row(i) = oscillator_functions(x[i], n_max).transpose();
    return T;
}

/// Uniform grid of `count` points on [lo, hi].
inline RealVector uniform_grid(double lo, double hi, int count) {
    if (count < 2) throw ConfigError("a grid needs at least two points");
    if (!(hi > lo)) throw ConfigError("grid upper bound must exceed lower bound");
    return RealVector::LinSpaced(count, lo, hi);
}

} // namespace dicat
