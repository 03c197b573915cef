// elliptic.hpp: complete elliptic integrals in the parameter convention
//
// K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t),  E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt,
// both from the arithmetic-geometric mean.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dicat/types.hpp"

namespace dicat {

/// E(m) for m in [0, 1]; arguments within 1e-12 outside the interval are clamped.
inline double ellint_e(double m) {
    if (m < -1e-12 || m > 1.0 + 1e-12 || std::isnan(m))
        throw Error("elliptic parameter outside [0, 1]: " + std::to_string(m));
    m = std::clamp(m, 0.0, 1.0);
    if (m == 1.0) return 1.0;
    double a = 1.0, b = std::sqrt(1.0 - m);
    double c2 = m;          // c_n^2
    double weight = 0.5;    // 2^{n-1}
    double sum = weight * c2;
    // c_{n+1} ~ c_n^2 / (4a): once c_n < 1e-9 a the remaining terms are below rounding,
    // and iterating further only amplifies 1-ulp noise in a - b by 2^n.
    for (int it = 0; it < 64; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        const double cn = 0.5 * (a - b);
        a = an;
        b = bn;
        weight *= 2.0;
        c2 = cn * cn;
        sum += weight * c2;
        if (std::abs(cn) < 1e-9 * a) break;
    }
    return pi / (2.0 * a) * (1.0 - sum);
}

/// K(m) for m in [0, 1).
inline double ellint_k(double m) {
    if (m < 0.0 || m >= 1.0) throw Error("K(m) needs m in [0, 1)");
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-17 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return pi / (2.0 * a);
}

} // namespace dicat
