// angular.hpp: angular mean field for spin s and its Gaussian fluctuations
//
//   h(u, phi)    = 2s (-omegaz cos phi + g u sin phi - 2 s J cos^2 phi)
//   F_mf(u, phi) = omega0 u^2/4 + h(u, phi)
//   A            = 4 J s^2 cos^2 phi - h
//   B_k          = A - 8 J s^2 sin^2 phi cos k
//   F_fl         = (1/(2s)) int dk/2pi sqrt(A B_k)
//                = (1/(pi s)) sqrt(A (A + c)) E(2c/(A + c)),   c = 8 s^2 J sin^2 phi
// Stability needs 4 s J cos 2phi + omegaz cos phi - g u sin phi > 0 together with
// A > 0 and min_k B_k = A - c > 0.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "dicat/field/free_energy.hpp"

namespace dicat {

inline double angular_h(double u, double phi, const ModelParams& p) {
    const double s = p.spin, c = std::cos(phi);
    return 2.0 * s * (-p.omegaz * c + p.g * u * std::sin(phi) - 2.0 * s * p.J * c * c);
}

inline double angular_f_mf(double u, double phi, const ModelParams& p) {
    return 0.25 * p.omega0 * u * u + angular_h(u, phi, p);
}

/// d F_mf / d phi.
inline double angular_dphi(double u, double phi, const ModelParams& p) {
    const double s = p.spin;
    return 2.0 * s * (p.omegaz * std::sin(phi) + p.g * u * std::cos(phi) + 2.0 * s * p.J * std::sin(2.0 * phi));
}

inline double stability_margin(double u, double phi, const ModelParams& p) {
    return 4.0 * p.spin * p.J * std::cos(2.0 * phi) + p.omegaz * std::cos(phi) - p.g * u * std::sin(phi);
}

inline double fluct_A(double u, double phi, const ModelParams& p) {
    const double s = p.spin, c = std::cos(phi);
    return 4.0 * p.J * s * s * c * c - angular_h(u, phi, p);
}

inline double fluct_B(double k, double u, double phi, const ModelParams& p) {
    const double s = p.spin, sn = std::sin(phi);
    return fluct_A(u, phi, p) - 8.0 * p.J * s * s * sn * sn * std::cos(k);
}

inline bool is_stable(double u, double phi, const ModelParams& p) {
    const double s = p.spin, sn = std::sin(phi);
    const double A = fluct_A(u, phi, p);
    const double c = 8.0 * s * s * p.J * sn * sn;
    return stability_margin(u, phi, p) > 0.0 && A > 0.0 && A - std::abs(c) > 0.0;
}

inline double fluctuation_free_energy(double u, double phi, const ModelParams& p) {
    if (!is_stable(u, phi, p)) throw ConfigError("fluctuation free energy requested at an unstable point");
    const double s = p.spin, sn = std::sin(phi);
    const double A = fluct_A(u, phi, p);
    const double c = 8.0 * s * s * p.J * sn * sn;
    return std::sqrt(A * (A + c)) * ellint_e(2.0 * c / (A + c)) / (pi * s);
}

/// Root of dF/dphi nearest to `guess`, found by scanning outward and polishing with TOMS 748.
/// Returns NaN when no sign change exists within pi of the guess.
inline double stationary_phi_near(double u, double guess, const ModelParams& p, double step = 1e-3) {
    auto f = [&](double phi) { return angular_dphi(u, phi, p); };
    const double f0 = f(guess);
    if (f0 == 0.0) return guess;
    for (double w = step; w <= pi + step; w += step) {
        for (double sgn : {-1.0, 1.0}) {
            const double a = guess + sgn * (w - step), b = guess + sgn * w;
            const double fa = f(a), fb = f(b);
            if (fa * fb <= 0.0) {
                boost::uintmax_t iters = 200;
                const auto r = boost::math::tools::toms748_solve(f, std::min(a, b), std::max(a, b),
                                                                 sgn < 0 ? fb : fa, sgn < 0 ? fa : fb,
                                                                 boost::math::tools::eps_tolerance<double>(52),
                                                                 iters);
                return 0.5 * (r.first + r.second);
            }
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

struct PhiBranch {
    RealVector u;
    RealVector phi;
    bool branch_jump{false};
    double jump_u{std::numeric_limits<double>::quiet_NaN()};
};

/// phi~(u) on a grid, continued from phi~(0) = 0 outward in both directions.
inline PhiBranch stationary_branch(const RealVector& u_grid, const ModelParams& p, double jump_tol = 0.2) {
    PhiBranch b;
    b.u = u_grid;
    b.phi = RealVector::Constant(u_grid.size(), std::numeric_limits<double>::quiet_NaN());
    Eigen::Index i0 = 0;
    u_grid.cwiseAbs().minCoeff(&i0);
    b.phi[i0] = stationary_phi_near(u_grid[i0], 0.0, p);
    auto sweep = [&](Eigen::Index from, int dir) {
        for (Eigen::Index i = from + dir; i >= 0 && i < u_grid.size(); i += dir) {
            const double prev = b.phi[i - dir];
            const double phi = stationary_phi_near(u_grid[i], std::isnan(prev) ? 0.0 : prev, p);
            if (std::isnan(phi) || std::abs(phi - prev) > jump_tol) {
                if (!b.branch_jump) {
                    b.branch_jump = true;
                    b.jump_u = u_grid[i];
                }
            }
            b.phi[i] = phi;
        }
    };
    sweep(i0, +1);
    sweep(i0, -1);
    return b;
}

struct AngularSurface {
    RealVector u_grid;
    RealVector phi_grid;
    RealMatrix h_values;        // (u, phi)
    RealMatrix f_mf_values;
    RealVector stationary_phi;  // phi~(u)
    RealMatrix fluct_values;    // NaN where unstable
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> stability_mask;
    bool branch_jump{false};
    double jump_u{std::numeric_limits<double>::quiet_NaN()};
};

inline AngularSurface angular_mean_field(const ModelParams& p, const RealVector& u_grid, const RealVector& phi_grid) {
    if (!(p.spin >= 0.5)) throw ConfigError("spin must be at least 1/2");
    AngularSurface s;
    s.u_grid = u_grid;
    s.phi_grid = phi_grid;
    const Eigen::Index nu = u_grid.size(), np = phi_grid.size();
    s.h_values.resize(nu, np);
    s.f_mf_values.resize(nu, np);
    s.fluct_values.resize(nu, np);
    s.stability_mask.resize(nu, np);
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = 0; j < np; ++j) {
            const double u = u_grid[i], phi = phi_grid[j];
            s.h_values(i, j) = angular_h(u, phi, p);
            s.f_mf_values(i, j) = angular_f_mf(u, phi, p);
            const bool ok = is_stable(u, phi, p);
            s.stability_mask(i, j) = ok;
            s.fluct_values(i, j) = ok ? fluctuation_free_energy(u, phi, p) : std::numeric_limits<double>::quiet_NaN();
        }
    const PhiBranch b = stationary_branch(u_grid, p);
    s.stationary_phi = b.phi;
    s.branch_jump = b.branch_jump;
    s.jump_u = b.jump_u;
    return s;
}

/// F_mf(u, phi~(u)) as a function of u; phi~ is tracked from a dense reference branch.
inline std::function<double(double)> angular_reduced_free_energy(const ModelParams& p, double u_max,
                                                                 int points = 4001) {
    const RealVector grid = RealVector::LinSpaced(points, -u_max, u_max);
    const PhiBranch b = stationary_branch(grid, p);
    if (b.branch_jump) throw Error("stationary angle branch is discontinuous on the requested range");
    return [p, grid, phis = b.phi, u_max](double u) {
        if (std::abs(u) > u_max) throw ConfigError("u outside the tracked angle branch");
        const double pos = (u + u_max) / (2.0 * u_max) * static_cast<double>(grid.size() - 1);
        const auto i = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(pos), 0, grid.size() - 2);
        const double t = pos - static_cast<double>(i);
        const double guess = (1.0 - t) * phis[i] + t * phis[i + 1];
        const double phi = stationary_phi_near(u, guess, p, 1e-4);
        return angular_f_mf(u, phi, p);
    };
}

inline FreeEnergyProfile angular_profile(const ModelParams& p, const RealVector& u_grid) {
    const double u_max = u_grid.cwiseAbs().maxCoeff() * 1.5 + 1e-9;
    return make_profile(angular_reduced_free_energy(p, u_max), ProfileModel::angular_mean_field, u_grid, p.omega0);
}

struct FluctuationReport {
    double max_ratio{0.0};   // max |F_fl| / |F_mf| over stable points with |F_mf| above the floor
    int stable_points{0};
    int masked_points{0};
};

inline FluctuationReport fluctuation_report(const AngularSurface& s, double floor = 1e-3) {
    FluctuationReport r;
    for (Eigen::Index i = 0; i < s.u_grid.size(); ++i)
        for (Eigen::Index j = 0; j < s.phi_grid.size(); ++j) {
            if (!s.stability_mask(i, j)) { ++r.masked_points; continue; }
            ++r.stable_points;
            const double fmf = std::abs(s.f_mf_values(i, j));
            if (fmf > floor) r.max_ratio = std::max(r.max_ratio, std::abs(s.fluct_values(i, j)) / fmf);
        }
    return r;
}

// Matsubara product prod_{n>=1} (1 + x^2/n^2) = sinh(pi |x|)/(pi |x|).

inline double matsubara_exact(double x) {
    const double a = pi * std::abs(x);
    return a < 1e-8 ? 1.0 + a * a / 6.0 : std::sinh(a) / a;
}

/// Finite product up to n = M, accumulated in log space.
inline double matsubara_product(double x, long M) {
    double lg = 0.0;
    const double x2 = x * x;
    for (long n = M; n >= 1; --n) {
        const double dn = static_cast<double>(n);
        lg += std::log1p(x2 / (dn * dn));
    }
    return std::exp(lg);
}

/// Finite product times the Euler-Maclaurin tail exp(x^2/(M + 1/2)).
inline double matsubara_product_corrected(double x, long M) {
    return matsubara_product(x, M) * std::exp(x * x / (static_cast<double>(M) + 0.5));
}

} // namespace dicat
