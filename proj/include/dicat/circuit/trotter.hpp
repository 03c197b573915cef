// trotter.hpp: Trotterized Dicke-Ising evolution and single-qubit parity readout

#pragma once

#include "dicat/circuit/schedule.hpp"
#include "dicat/core/operators.hpp"
#include "dicat/core/states.hpp"
#include "dicat/exact/reduce.hpp"

namespace dicat {

struct TrotterResult {
    State interaction;   // product of the step gates applied to psi0
    State lab;           // exp(-i H0 t_f) * interaction
    CircuitSchedule schedule;
};

/// Phases exp(-i H0 t) on the diagonal of the free Hamiltonian.
inline Vector free_phases(const HilbertLayout& L, double omega0, double t) {
    const RealVector d = free_diagonal(L, omega0);
    Vector ph(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) ph[i] = std::exp(-I * d[i] * t);
    return ph;
}

inline TrotterResult trotter_evolve(const State& psi0, const ModelParams& p, int L, double t_final,
                                    Architecture arch, ScheduleOptions opt = {}) {
    const HilbertLayout layout(p);
    if (psi0.size() != layout.dim()) throw ConfigError("initial state dimension does not match the model");
    opt.include_readout = false;
    TrotterResult r;
    r.schedule = build_schedule(p, L, t_final, arch, opt);
    r.interaction = psi0;
    apply_gates(r.schedule.gates, layout, r.interaction);
    r.lab = free_phases(layout, p.omega0, t_final).cwiseProduct(r.interaction);
    return r;
}

struct ReadoutResult {
    double p_plus{0.0};
    DensityMatrix post_state_plus;   // photon state conditioned on z_0 = +1, unit trace
};

/// Runs the CNOT ladder, then conditions on qubit 0 reading sigma^z = +1.
inline ReadoutResult parity_readout(const State& psi, const HilbertLayout& L) {
    std::vector<GateRecord> ladder;
    append_parity_ladder(ladder, L.N);
    State out = psi;
    apply_gates(ladder, L, out);

    const Eigen::Index Q = L.qubit_dim();
    const auto m0 = static_cast<Eigen::Index>(L.mask(0));
    Matrix proj = Matrix::Zero(Q, Q);
    for (Eigen::Index q = 0; q < Q; ++q)
        if (!(q & m0)) proj(q, q) = 1.0;

    const DensityMatrix cond = reduce_photon_density(out, L, std::optional<Matrix>(proj));
    ReadoutResult r;
    r.p_plus = cond.trace;
    if (r.p_plus < 1e-12) throw Error("parity readout: probability of z_0 = +1 is too small to condition on");
    r.post_state_plus = DensityMatrix(cond.entries / r.p_plus);
    return r;
}

} // namespace dicat
