// instanton.hpp: imaginary-time tunnelling trajectory between the side minima
//
// The trajectory conserves (du/dtau)^2/(4 omega0) - F(u) = -F(u0), so
//   tau(u) = int_0^u du' / sqrt(4 omega0 (F(u') - F(u0)))
// with tau = 0 at the midpoint u = 0. Near the minima the integrand behaves like
// 1/(kappa (u0 - u')) with kappa = sqrt(2 omega0 F''(u0)); that pole is integrated
// analytically and only the regular remainder goes through Gauss-Kronrod.
// Close to u0, where F(u) - F(u0) loses precision, the trajectory continues as
// u = u0 - A exp(-kappa tau), matched to the last quadrature node.

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "dicat/field/free_energy.hpp"

namespace dicat {

struct InstantonOptions {
    int samples{401};              // tau samples over [-tau_max, tau_max]
    double splice_fraction{1e-3};  // quadrature stops at |u| = u0 (1 - splice_fraction)
    double tail_fraction{1e-6};    // trajectory ends at |u| = u0 (1 - tail_fraction)
    double stencil_h{1e-3};        // step of the five-point derivative
};

struct InstantonSolution {
    RealVector tau_grid;
    RealVector u_of_tau;
    double u0{0.0};
    double kappa{0.0};
    double action{0.0};            // per qubit: int_{-u0}^{u0} sqrt((F - F(u0))/omega0) du
    double energy_residual{0.0};   // max |-(du/dtau)^2/(4 omega0) + F(u) - F(u0)|
    double antisymmetry{0.0};      // max |u(tau) + u(-tau)|
    bool crosses_critical{false};  // trajectory passes u = +-J/g (Dicke-Ising input)
    std::function<double(double)> u_at;   // u(tau) for any real tau
};

namespace detail {

/// tau along one branch (sign = +1 or -1) from 0 to u = sign * v, v in [0, u_splice].
class InstantonBranch {
public:
    InstantonBranch(std::function<double(double)> F, double u0, double omega0, double kappa, int sign,
                    double u_splice)
        : F_(std::move(F)), u0_(u0), omega0_(omega0), kappa_(kappa), sign_(sign), Fmin_(F_(sign * u0)),
          splice_(u_splice) {
        // Cumulative nodes for fast evaluation.
        const int n = 64;
        nodes_ = RealVector::LinSpaced(n + 1, 0.0, splice_);
        cumulative_ = RealVector::Zero(n + 1);
        for (int i = 0; i < n; ++i) cumulative_[i + 1] = cumulative_[i] + regular(nodes_[i], nodes_[i + 1]);
    }

    /// tau at distance v >= 0 from the midpoint along this branch.
    [[nodiscard]] double tau(double v) const {
        if (v <= 0.0) return 0.0;
        if (v > splice_) throw Error("instanton branch evaluated beyond the splice point");
        const auto it = std::upper_bound(nodes_.data(), nodes_.data() + nodes_.size(), v);
        const auto i = std::max<Eigen::Index>(0, (it - nodes_.data()) - 1);
        const double reg = cumulative_[i] + regular(nodes_[i], v);
        return reg + std::log(u0_ / (u0_ - v)) / kappa_;
    }

    [[nodiscard]] double delta_F(double v) const { return F_(sign_ * v) - Fmin_; }
    [[nodiscard]] double splice() const { return splice_; }

private:
    [[nodiscard]] double integrand(double v) const {
        const double dF = delta_F(v);
        if (!(dF > 0.0)) throw Error("F(u) - F(u0) is not positive inside the instanton domain");
        return 1.0 / std::sqrt(4.0 * omega0_ * dF) - 1.0 / (kappa_ * (u0_ - v));
    }

    [[nodiscard]] double regular(double a, double b) const {
        if (b <= a) return 0.0;
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [this](double v) { return integrand(v); }, a, b, 6, 1e-11);
    }

    std::function<double(double)> F_;
    double u0_, omega0_, kappa_;
    int sign_;
    double Fmin_;
    double splice_;
    RealVector nodes_, cumulative_;
};

} // namespace detail

/// Root of a central-difference F' near `guess`, sharper than a bracketing minimizer.
inline double stationary_point(const std::function<double(double)>& F, double guess, double width) {
    const double h = 1e-5 * std::max(1.0, std::abs(guess));
    auto dF = [&](double u) { return (F(u + h) - F(u - h)) / (2.0 * h); };
    double lo = guess - width, hi = guess + width;
    if (dF(lo) * dF(hi) > 0.0) return guess;
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(dF, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

/// Trajectory for an even profile with side minima at +-u0 (u0 > 0).
inline InstantonSolution instanton(const std::function<double(double)>& F, double u0, double omega0,
                                   const InstantonOptions& opt = {}, double critical_u = -1.0) {
    if (!(u0 > 0.0)) throw ConfigError("instanton needs a positive side minimum u0");
    InstantonSolution sol;
    sol.u0 = u0;
    const double h2 = 1e-4 * u0;
    const double curv = (F(u0 + h2) + F(u0 - h2) - 2.0 * F(u0)) / (h2 * h2);
    if (!(curv > 0.0)) throw Error("side minimum is not quadratic");
    sol.kappa = std::sqrt(2.0 * omega0 * curv);

    const double v_splice = u0 * (1.0 - opt.splice_fraction);
    const auto plus = std::make_shared<const detail::InstantonBranch>(F, u0, omega0, sol.kappa, +1, v_splice);
    const auto minus = std::make_shared<const detail::InstantonBranch>(F, u0, omega0, sol.kappa, -1, v_splice);

    // Tail u = u0 - A exp(-kappa tau), continuous at the splice.
    const double tau_splice_p = plus->tau(v_splice);
    const double tau_splice_m = minus->tau(v_splice);
    const double A_p = (u0 - v_splice) * std::exp(sol.kappa * tau_splice_p);
    const double A_m = (u0 - v_splice) * std::exp(sol.kappa * tau_splice_m);

    const double kappa = sol.kappa;
    auto branch_u = [kappa, u0](const detail::InstantonBranch& b, double tau_abs, double tau_splice, double A) {
        if (tau_abs >= tau_splice) return u0 - A * std::exp(-kappa * tau_abs);
        boost::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve([&](double v) { return b.tau(v) - tau_abs; }, 0.0,
                                                         b.splice(), -tau_abs, tau_splice - tau_abs,
                                                         boost::math::tools::eps_tolerance<double>(50), iters);
        return 0.5 * (r.first + r.second);
    };
    sol.u_at = [=](double tau) {
        if (tau == 0.0) return 0.0;
        return tau > 0.0 ? branch_u(*plus, tau, tau_splice_p, A_p) : -branch_u(*minus, -tau, tau_splice_m, A_m);
    };

    const double tau_max = std::log(A_p / (opt.tail_fraction * u0)) / sol.kappa;
    sol.tau_grid = RealVector::LinSpaced(opt.samples, -tau_max, tau_max);
    sol.u_of_tau.resize(opt.samples);
    for (int i = 0; i < opt.samples; ++i) sol.u_of_tau[i] = sol.u_at(sol.tau_grid[i]);
    for (int i = 0; i < opt.samples; ++i)
        sol.antisymmetry = std::max(sol.antisymmetry, std::abs(sol.u_of_tau[i] + sol.u_of_tau[opt.samples - 1 - i]));

    // Conservation law along the quadrature-resolved part of the trajectory.
    const double h = opt.stencil_h;
    const double Fmin = F(u0);
    for (int i = 0; i < opt.samples; ++i) {
        const double t = sol.tau_grid[i];
        if (std::abs(t) + 2.0 * h >= std::min(tau_splice_p, tau_splice_m)) continue;
        const double du = (-sol.u_at(t + 2 * h) + 8 * sol.u_at(t + h) - 8 * sol.u_at(t - h) + sol.u_at(t - 2 * h)) /
                          (12.0 * h);
        const double res = -du * du / (4.0 * omega0) + F(sol.u_of_tau[i]) - Fmin;
        sol.energy_residual = std::max(sol.energy_residual, std::abs(res));
    }

    // Euclidean action over the full path: int sqrt(dF/omega0) du.
    auto half_action = [&](int sign) {
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double v) { return std::sqrt(std::max(0.0, F(sign * v) - Fmin) / omega0); }, 0.0, u0, 15, 1e-12);
    };
    sol.action = half_action(+1) + half_action(-1);

    if (critical_u > 0.0) {
        const double umin = sol.u_of_tau.minCoeff(), umax = sol.u_of_tau.maxCoeff();
        sol.crosses_critical = umin < -critical_u && umax > critical_u;
    }
    return sol;
}

/// Instanton of a profile: uses its outermost positive minimum as u0.
inline InstantonSolution instanton(const FreeEnergyProfile& prof, const InstantonOptions& opt = {},
                                   double critical_u = -1.0) {
    double u0 = 0.0, Fside = std::numeric_limits<double>::infinity();
    for (const auto& m : prof.minima)
        if (m.u > 0.0) { u0 = m.u; Fside = m.F; }
    if (!(u0 > 0.0)) throw Error("profile has no superradiant minimum");
    double Fcentral = prof.F(0.0);
    if (!(Fcentral - Fside > 0.0)) throw Error("side minima are not below F(0): the input is not superradiant");
    // Refine u0 on the exact function.
    const Minimum m = refine_minimum(prof.F, 0.5 * u0, 1.5 * u0);
    return instanton(prof.F, stationary_point(prof.F, m.u, 1e-4 * m.u), prof.omega0, opt, critical_u);
}

} // namespace dicat
