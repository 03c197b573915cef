// lindblad.hpp: dissipative windows between Trotter steps
//
// d rho/dt = N kappa (a rho a^dagger - {a^dagger a, rho}/2)
//          + (gamma_phi/2) sum_j (sigma^z_j rho sigma^z_j - rho)
//          + gamma_1 sum_j (sigma^-_j rho sigma^+_j - {|1><1|_j, rho}/2)
//
// Rates are angular frequencies in rad/s and windows last tau_rabi seconds;
// the Hamiltonian clock never enters. Every term is applied elementwise on
// the photon-major index, so no superoperator is formed.

#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "dicat/circuit/trotter.hpp"
#include "dicat/core/states.hpp"

namespace dicat {

struct NoiseParams {
    double kappa{0.0};       // rad/s
    double gamma_phi{0.0};   // rad/s
    double gamma_1{0.0};     // rad/s
    double tau_rabi{100e-9}; // s

    /// Rates given as ordinary frequencies in Hz; stored as 2 pi f.
    static NoiseParams from_hz(double kappa_hz, double gamma_phi_hz, double gamma_1_hz, double tau_rabi_s) {
        NoiseParams n{2.0 * pi * kappa_hz, 2.0 * pi * gamma_phi_hz, 2.0 * pi * gamma_1_hz, tau_rabi_s};
        n.validate();
        return n;
    }

    void validate() const {
        if (kappa < 0.0 || gamma_phi < 0.0 || gamma_1 < 0.0) throw ConfigError("noise rates must be non-negative");
        if (!(tau_rabi > 0.0)) throw ConfigError("tau_rabi must be positive");
    }

    [[nodiscard]] bool silent() const { return kappa == 0.0 && gamma_phi == 0.0 && gamma_1 == 0.0; }
};

/// Upper bound on the magnitude of the dissipator's eigenvalues.
inline double lindblad_rate_bound(const HilbertLayout& L, const NoiseParams& noise) {
    return L.N * noise.kappa * L.n_max + L.N * (noise.gamma_phi + noise.gamma_1);
}

inline Matrix lindblad_rhs(const Matrix& rho, const HilbertLayout& L, const NoiseParams& noise) {
    const Eigen::Index D = L.dim();
    const Eigen::Index Q = L.qubit_dim();
    if (rho.rows() != D || rho.cols() != D) throw ConfigError("density matrix dimension does not match the layout");
    Matrix out = Matrix::Zero(D, D);
    const double nk = L.N * noise.kappa;

    for (Eigen::Index c = 0; c < D; ++c) {
        const int nc = L.photon(c);
        const auto qc = static_cast<std::uint64_t>(c % Q);
        for (Eigen::Index r = 0; r < D; ++r) {
            const int nr = L.photon(r);
            const auto qr = static_cast<std::uint64_t>(r % Q);
            cplx acc = 0.0;
            if (nk != 0.0) {
                if (nr < L.n_max && nc < L.n_max)
                    acc += nk * std::sqrt((nr + 1.0) * (nc + 1.0)) * rho(r + Q, c + Q);
                acc -= 0.5 * nk * (nr + nc) * rho(r, c);
            }
            if (noise.gamma_phi != 0.0) acc -= noise.gamma_phi * std::popcount(qr ^ qc) * rho(r, c);
            if (noise.gamma_1 != 0.0) {
                // Jump term: both indices have qubit j in |0>, source entries have it in |1>.
                const std::uint64_t both_ground = ~(qr | qc) & static_cast<std::uint64_t>(Q - 1);
                for (std::uint64_t m = both_ground; m; m &= m - 1) {
                    const auto bit = static_cast<Eigen::Index>(m & (~m + 1));
                    acc += noise.gamma_1 * rho(r | bit, c | bit);
                }
                acc -= 0.5 * noise.gamma_1 * (std::popcount(qr) + std::popcount(qc)) * rho(r, c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline DensityMatrix lindblad_rhs(const DensityMatrix& rho, const ModelParams& p, const NoiseParams& noise) {
    return DensityMatrix(lindblad_rhs(rho.entries, HilbertLayout(p), noise));
}

struct WindowOptions {
    double dt_step{0.0};           // seconds; 0 picks the largest step with rate * dt <= 0.1
    bool check_positivity{true};
    double positivity_tol{1e-7};
    int max_halvings{6};
};

struct WindowReport {
    int steps{0};
    double dt_step{0.0};
    double trace_drift{0.0};
    double min_eigenvalue{0.0};
};

namespace detail {

inline Matrix rk4_window(Matrix rho, double h, int steps, const HilbertLayout& L,
                         const NoiseParams& noise) {
    for (int s = 0; s < steps; ++s) {
        const Matrix k1 = lindblad_rhs(rho, L, noise);
        const Matrix k2 = lindblad_rhs(rho + 0.5 * h * k1, L, noise);
        const Matrix k3 = lindblad_rhs(rho + 0.5 * h * k2, L, noise);
        const Matrix k4 = lindblad_rhs(rho + h * k3, L, noise);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint()).eval();
    }
    return rho;
}

} // namespace detail

/// Fixed-step RK4 over one window. The step is halved if positivity fails.
inline Matrix lindblad_window(const Matrix& rho, double duration, const NoiseParams& noise, const HilbertLayout& L,
                              const WindowOptions& opt = {}, WindowReport* report = nullptr) {
    noise.validate();
    if (duration < 0.0) throw ConfigError("window duration must be non-negative");
    WindowReport rep;
    const double tr0 = rho.trace().real();
    if (noise.silent() || duration == 0.0) {
        rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        if (report) *report = rep;
        return rho;
    }
    const double rate = lindblad_rate_bound(L, noise);
    double h = opt.dt_step > 0.0 ? opt.dt_step : 0.1 / rate;
    if (rate * h > 0.1 + 1e-12) throw ConfigError("window step violates the rate bound rate * dt <= 0.1");

    for (int attempt = 0; attempt <= opt.max_halvings; ++attempt) {
        const int steps = std::max(1, static_cast<int>(std::ceil(duration / h - 1e-12)));
        const double hs = duration / steps;
        Matrix out = detail::rk4_window(rho, hs, steps, L, noise);
        rep.steps = steps;
        rep.dt_step = hs;
        rep.trace_drift = std::abs(out.trace().real() - tr0);
        rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
        if (opt.check_positivity) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(out, Eigen::EigenvaluesOnly);
            rep.min_eigenvalue = es.eigenvalues().minCoeff();
            if (rep.min_eigenvalue < -opt.positivity_tol) {
                h = 0.5 * hs;
                continue;
            }
        }
        if (report) *report = rep;
        return out;
    }
    throw ConvergenceError("Lindblad window lost positivity after step halving", -rep.min_eigenvalue);
}

inline DensityMatrix lindblad_window(const DensityMatrix& rho, double duration, const NoiseParams& noise,
                                     const ModelParams& p, const WindowOptions& opt = {},
                                     WindowReport* report = nullptr) {
    return DensityMatrix(lindblad_window(rho.entries, duration, noise, HilbertLayout(p), opt, report));
}

struct NoisyTrotterResult {
    DensityMatrix lab;
    DensityMatrix interaction;
    std::vector<WindowReport> windows;
    double max_window_drift{0.0};
    double total_trace_drift{0.0};
    double min_eigenvalue{std::numeric_limits<double>::infinity()};
};

/// Alternates rho -> S_DI rho S_DI^dagger and one Lindblad window, L times,
/// then rotates to the lab frame.
inline NoisyTrotterResult noisy_trotter(const DensityMatrix& rho0, const ModelParams& p, int L, double t_final,
                                        Architecture arch, const NoiseParams& noise,
                                        const WindowOptions& wopt = {}, ScheduleOptions sopt = {}) {
    const HilbertLayout layout(p);
    if (rho0.dim() != layout.dim()) throw ConfigError("initial density matrix does not match the model");
    sopt.include_readout = false;
    const CircuitSchedule sched = build_schedule(p, L, t_final, arch, sopt);

    NoisyTrotterResult res;
    Matrix rho = rho0.entries;
    const double tr0 = rho.trace().real();
    std::size_t g = 0;
    for (int k = 1; k <= L; ++k) {
        std::vector<GateRecord> step;
        while (g < sched.gates.size() && sched.gates[g].step == k) step.push_back(sched.gates[g++]);
        conjugate_gates(step, layout, rho);
        WindowReport rep;
        rho = lindblad_window(rho, noise.tau_rabi, noise, layout, wopt, &rep);
        res.max_window_drift = std::max(res.max_window_drift, rep.trace_drift);
        if (!std::isnan(rep.min_eigenvalue)) res.min_eigenvalue = std::min(res.min_eigenvalue, rep.min_eigenvalue);
        res.windows.push_back(rep);
    }
    res.interaction = DensityMatrix(rho);
    const Vector ph = free_phases(layout, p.omega0, t_final);
    res.lab = DensityMatrix(ph.asDiagonal() * rho * ph.conjugate().asDiagonal());
    res.total_trace_drift = std::abs(res.lab.trace - tr0);
    return res;
}

} // namespace dicat
