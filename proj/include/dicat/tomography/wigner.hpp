// wigner.hpp: Wigner function of a photon density matrix in quadrature coordinates
//
// W(x, p) = sum_{n,m} rho_nm V_nm(x, p) with, for n <= m and d = m - n,
//   V_nm = ((-1)^n / pi) sqrt(n!/m!) (sqrt(2)(x + i p))^d e^{-r^2} L_n^{(d)}(2 r^2),
// and V_mn = conj(V_nm). The Laguerre factor is evaluated through the
// normalized recurrence for l_n = sqrt(n!/(n+d)!) L_n^{(d)}, with the
// (sqrt(2) r)^d / sqrt(d!) prefactor built multiplicatively, so no factorial
// or power overflows. W integrates to tr(rho) over the (x, p) plane.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "dicat/core/oscillator.hpp"
#include "dicat/core/states.hpp"

namespace dicat {

struct WignerGrid {
    RealVector x{uniform_grid(-6.0, 6.0, 121)};
    RealVector p{uniform_grid(-6.0, 6.0, 121)};

    static WignerGrid square(double half_width, int points) {
        return {uniform_grid(-half_width, half_width, points), uniform_grid(-half_width, half_width, points)};
    }
};

struct WignerField {
    RealVector x_grid;
    RealVector p_grid;
    RealMatrix values;              // values(i, j) = W(x_i, p_j)
    double trace_in{0.0};
    double min_value{0.0};
    double min_x{0.0};
    double min_p{0.0};
    double quadrature_integral{0.0};
    double max_imag_residue{0.0};
    bool mass_warning{false};

    /// Same field scaled to unit input trace.
    [[nodiscard]] WignerField normalized() const {
        if (!(trace_in > 0.0)) throw Error("cannot renormalize a Wigner field with non-positive trace");
        WignerField w = *this;
        w.values /= trace_in;
        w.min_value /= trace_in;
        w.quadrature_integral /= trace_in;
        w.trace_in = 1.0;
        return w;
    }
};

/// Composite trapezoid rule over a uniform 1-D grid.
inline double trapezoid(const RealVector& f, const RealVector& grid) {
    if (f.size() < 2) return 0.0;
    const double h = grid[1] - grid[0];
    return h * (f.sum() - 0.5 * (f[0] + f[f.size() - 1]));
}

inline double trapezoid_2d(const RealMatrix& v, const RealVector& x, const RealVector& p) {
    RealVector rows(v.rows());
    for (Eigen::Index i = 0; i < v.rows(); ++i) rows[i] = trapezoid(v.row(i).transpose(), p);
    return trapezoid(rows, x);
}

/// Fills summary fields from `values`.
inline void summarize(WignerField& w) {
    Eigen::Index i = 0, j = 0;
    w.min_value = w.values.minCoeff(&i, &j);
    w.min_x = w.x_grid[i];
    w.min_p = w.p_grid[j];
    w.quadrature_integral = trapezoid_2d(w.values, w.x_grid, w.p_grid);
    w.mass_warning = std::abs(w.quadrature_integral - w.trace_in) > 1e-4 * std::max(1.0, std::abs(w.trace_in));
}

/// Complex sum_{n,m} rho_nm V_nm at one phase-space point.
inline cplx wigner_point(const Matrix& rho, double x, double p) {
    const Eigen::Index dim = rho.rows();
    const double r2 = x * x + p * p;
    const double z = 2.0 * r2;
    const double theta = std::atan2(p, x);
    cplx acc = 0.0;
    double t_d = std::exp(-r2);   // (sqrt(2) r)^d / sqrt(d!) e^{-r^2}
    for (Eigen::Index d = 0; d < dim; ++d) {
        if (d > 0) t_d *= std::sqrt(z / static_cast<double>(d));
        const cplx phase = std::polar(1.0, static_cast<double>(d) * theta);
        const double dd = static_cast<double>(d);
        double l_prev = 0.0, l_cur = 1.0;
        for (Eigen::Index n = 0; n + d < dim; ++n) {
            if (n == 1) {
                l_prev = l_cur;
                l_cur = (1.0 + dd - z) / std::sqrt(1.0 + dd);
            } else if (n > 1) {
                const double k = static_cast<double>(n - 1);
                const double next = ((2.0 * k + 1.0 + dd - z) * l_cur - std::sqrt(k * (k + dd)) * l_prev) /
                                    std::sqrt((k + 1.0) * (k + 1.0 + dd));
                l_prev = l_cur;
                l_cur = next;
            }
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const cplx v = (sign / pi) * t_d * l_cur * phase;
            acc += rho(n, n + d) * v;
            if (d > 0) acc += rho(n + d, n) * std::conj(v);
        }
    }
    return acc;
}

namespace detail {

template <class F>
void parallel_rows(Eigen::Index rows, int threads, F&& body) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(rows)));
    if (threads == 1) {
        for (Eigen::Index i = 0; i < rows; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (Eigen::Index i = t; i < rows; i += threads) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

inline WignerField wigner_direct(const DensityMatrix& rho, const WignerGrid& grid = {}, int threads = 1) {
    if (rho.entries.rows() != rho.entries.cols()) throw ConfigError("density matrix must be square");
    WignerField w;
    w.x_grid = grid.x;
    w.p_grid = grid.p;
    w.trace_in = rho.trace;
    w.values.resize(grid.x.size(), grid.p.size());
    std::vector<double> imag_max(static_cast<std::size_t>(grid.x.size()), 0.0);
    detail::parallel_rows(grid.x.size(), threads, [&](Eigen::Index i) {
        for (Eigen::Index j = 0; j < grid.p.size(); ++j) {
            const cplx v = wigner_point(rho.entries, grid.x[i], grid.p[j]);
            w.values(i, j) = v.real();
            imag_max[static_cast<std::size_t>(i)] = std::max(imag_max[static_cast<std::size_t>(i)], std::abs(v.imag()));
        }
    });
    w.max_imag_residue = *std::max_element(imag_max.begin(), imag_max.end());
    summarize(w);
    return w;
}

} // namespace dicat
