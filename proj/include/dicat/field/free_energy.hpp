// free_energy.hpp: mean-field free energies, magnon bands and critical couplings
//
// u is the order parameter (a + a^dagger)/sqrt(N). Profiles:
//   F_D(u)  = omega0 u^2/4 - omegaz (sqrt(1 + g^2 u^2/omegaz^2) - 1)
//   F_DI(u) = omega0 u^2/4 - (2/pi)(g|u| + J) E(4 g|u| J / (g|u| + J)^2)    (omegaz = 0)
// The second equals omega0 u^2/4 - (1/2) int dk/2pi |eps(k)| with the magnon band
// eps(k) = 2 sqrt(g^2 u^2 + J^2 - 2 J g u cos k).

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "dicat/core/model.hpp"
#include "dicat/field/elliptic.hpp"

namespace dicat {

enum class ProfileModel { dicke, dicke_ising, angular_mean_field };
enum class Phase { normal, coexistence, superradiant };

inline std::string to_string(ProfileModel m) {
    switch (m) {
    case ProfileModel::dicke: return "dicke";
    case ProfileModel::dicke_ising: return "dicke_ising";
    case ProfileModel::angular_mean_field: return "angular_mean_field";
    }
    return "?";
}

inline std::string to_string(Phase p) {
    switch (p) {
    case Phase::normal: return "normal";
    case Phase::coexistence: return "coexistence";
    case Phase::superradiant: return "superradiant";
    }
    return "?";
}

inline double free_energy_dicke(double u, const ModelParams& p) {
    if (!(p.omegaz > 0.0)) throw ConfigError("the Dicke free energy needs omegaz > 0");
    const double r = p.g * u / p.omegaz;
    return 0.25 * p.omega0 * u * u - p.omegaz * (std::sqrt(1.0 + r * r) - 1.0);
}

inline double free_energy_dicke_ising(double u, const ModelParams& p) {
    if (!(p.J > 0.0)) throw ConfigError("the Dicke-Ising free energy needs J > 0");
    const double gu = std::abs(p.g * u);
    const double s = gu + p.J;
    const double m = 4.0 * gu * p.J / (s * s);
    return 0.25 * p.omega0 * u * u - (2.0 / pi) * s * ellint_e(m);
}

/// (eps_+, eps_-) at momentum k.
inline std::pair<double, double> magnon_spectrum(double k, double u, const ModelParams& p) {
    const double gu = p.g * u;
    const double e = 2.0 * std::sqrt(std::max(0.0, gu * gu + p.J * p.J - 2.0 * p.J * gu * std::cos(k)));
    return {e, -e};
}

struct Minimum {
    double u{0.0};
    double F{0.0};
};

struct FreeEnergyProfile {
    ProfileModel model{ProfileModel::dicke_ising};
    RealVector u_grid;
    RealVector values;
    std::vector<Minimum> minima;   // ascending in u
    Phase classification{Phase::normal};
    std::function<double(double)> F;
    double omega0{1.0};
};

/// Brent refinement of a bracketed minimum.
inline Minimum refine_minimum(const std::function<double(double)>& F, double lo, double hi) {
    const auto r = boost::math::tools::brent_find_minima(F, lo, hi, 52);
    return {r.first, r.second};
}

/// Interior grid minima refined with Brent; a minimum within `zero_tol` of 0 is snapped to 0.
inline std::vector<Minimum> locate_minima(const std::function<double(double)>& F, const RealVector& u,
                                          const RealVector& v, double zero_tol = 1e-6) {
    std::vector<Minimum> out;
    for (Eigen::Index i = 1; i + 1 < u.size(); ++i) {
        if (!(v[i] <= v[i - 1] && v[i] < v[i + 1])) continue;
        Minimum m = refine_minimum(F, u[i - 1], u[i + 1]);
        if (std::abs(m.u) < zero_tol) m = {0.0, F(0.0)};
        if (!out.empty() && std::abs(out.back().u - m.u) < 1e-9) continue;
        out.push_back(m);
    }
    return out;
}

inline Phase classify(const std::vector<Minimum>& minima) {
    bool central = false, side = false;
    for (const auto& m : minima) (m.u == 0.0 ? central : side) = true;
    if (!side) return Phase::normal;
    return central ? Phase::coexistence : Phase::superradiant;
}

inline FreeEnergyProfile make_profile(std::function<double(double)> F, ProfileModel model, const RealVector& u_grid,
                                      double omega0) {
    FreeEnergyProfile prof;
    prof.model = model;
    prof.u_grid = u_grid;
    prof.values.resize(u_grid.size());
    for (Eigen::Index i = 0; i < u_grid.size(); ++i) prof.values[i] = F(u_grid[i]);
    prof.minima = locate_minima(F, u_grid, prof.values);
    prof.classification = classify(prof.minima);
    prof.F = std::move(F);
    prof.omega0 = omega0;
    return prof;
}

inline FreeEnergyProfile free_energy_profile(ProfileModel model, const ModelParams& p, const RealVector& u_grid) {
    switch (model) {
    case ProfileModel::dicke:
        return make_profile([p](double u) { return free_energy_dicke(u, p); }, model, u_grid, p.omega0);
    case ProfileModel::dicke_ising:
        return make_profile([p](double u) { return free_energy_dicke_ising(u, p); }, model, u_grid, p.omega0);
    case ProfileModel::angular_mean_field:
        break;
    }
    throw ConfigError("angular profiles are built by angular_mean_field()");
}

/// Lowest value of F on [lo, hi] from a grid scan refined by Brent.
inline Minimum side_minimum(const std::function<double(double)>& F, double lo, double hi, int points = 2001) {
    const RealVector u = RealVector::LinSpaced(points, lo, hi);
    Eigen::Index best = 0;
    double fbest = F(u[0]);
    for (Eigen::Index i = 1; i < points; ++i)
        if (const double f = F(u[i]); f < fbest) { fbest = f; best = i; }
    if (best == 0 || best == points - 1) return {u[best], fbest};
    return refine_minimum(F, u[best - 1], u[best + 1]);
}

struct CriticalCouplings {
    double g_c_dicke{0.0};          // sqrt(omega0 omegaz / 2)
    double g_c_dicke_numeric{0.0};  // from the sign change of F_D''(0)
    double g_c_dicke_ising{0.0};    // Maxwell point of F_DI
    double c0{0.0};                 // g_c_dicke_ising / sqrt(omega0 J)
    double u_side{0.0};             // side minimum at the Maxwell point
};

/// Central second difference of F_D at u = 0.
inline double dicke_curvature_at_zero(const ModelParams& p, double h = 1e-3) {
    return (free_energy_dicke(h, p) + free_energy_dicke(-h, p) - 2.0 * free_energy_dicke(0.0, p)) / (h * h);
}

/// F_DI(side minimum) - F_DI(0) at coupling g.
inline double maxwell_gap(double g, ModelParams p, Minimum* side = nullptr) {
    p.g = g;
    const auto F = [&p](double u) { return free_energy_dicke_ising(u, p); };
    const double lo = 0.2 * p.J / std::max(g, 1e-12);
    const double hi = 8.0 * std::max(g, p.J) / p.omega0 + 2.0 * lo;
    const Minimum m = side_minimum(F, std::min(lo, 0.2), hi);
    if (side) *side = m;
    return m.F - F(0.0);
}

inline CriticalCouplings critical_couplings(const ModelParams& p, double g_tol = 1e-8) {
    CriticalCouplings c;
    if (p.omegaz > 0.0) {
        c.g_c_dicke = std::sqrt(p.omega0 * p.omegaz / 2.0);
        ModelParams q = p;
        double lo = 0.0, hi = std::max(c.g_c_dicke, 1e-3);
        for (q.g = hi; dicke_curvature_at_zero(q) > 0.0; q.g = hi) hi *= 2.0;
        while (hi - lo > 1e-12 * std::max(1.0, hi)) {
            q.g = 0.5 * (lo + hi);
            (dicke_curvature_at_zero(q) > 0.0 ? lo : hi) = q.g;
        }
        c.g_c_dicke_numeric = 0.5 * (lo + hi);
    }
    if (p.J > 0.0) {
        const double scale = std::sqrt(p.omega0 * p.J);
        double lo = -1.0, hi = -1.0;
        double prev_g = 0.3 * scale;
        double prev = maxwell_gap(prev_g, p);
        for (double x = 0.35; x <= 4.0 + 1e-12; x += 0.05) {
            const double g = x * scale;
            const double gap = maxwell_gap(g, p);
            if (prev > 0.0 && gap <= 0.0) {
                lo = prev_g;
                hi = g;
                break;
            }
            prev_g = g;
            prev = gap;
        }
        if (lo < 0.0) throw Error("no coexistence window found for the Dicke-Ising free energy");
        while (hi - lo > g_tol * 1e-2) {
            const double mid = 0.5 * (lo + hi);
            (maxwell_gap(mid, p) > 0.0 ? lo : hi) = mid;
        }
        c.g_c_dicke_ising = 0.5 * (lo + hi);
        c.c0 = c.g_c_dicke_ising / scale;
        Minimum side;
        maxwell_gap(c.g_c_dicke_ising, p, &side);
        c.u_side = side.u;
    }
    return c;
}

} // namespace dicat
