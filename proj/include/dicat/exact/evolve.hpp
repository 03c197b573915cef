// evolve.hpp: sampled real-time evolution under a fixed Hamiltonian

#pragma once

#include <vector>

#include "dicat/core/states.hpp"
#include "dicat/linalg/expm.hpp"

namespace dicat {

struct Trajectory {
    RealVector times;
    std::vector<State> states;
    double norm_drift{0.0};          // max | |psi(t)| - |psi(0)| |
    double energy_drift{0.0};        // max relative change of <H>
    PropagatorStats stats;
};

/// psi(t_k) = exp(-i H t_k) psi0 on `samples` uniform times over [0, t_final].
/// The propagator controls the local error to `tol` per unit time.
inline Trajectory evolve(const SparseOperator& H, const State& psi0, double t_final, double tol = 1e-10,
                         int samples = 200, int max_substeps = 1'000'000) {
    if (samples < 2) throw ConfigError("evolve needs at least two samples");
    Trajectory tr;
    tr.times = RealVector::LinSpaced(samples, 0.0, t_final);
    tr.states.reserve(static_cast<std::size_t>(samples));
    tr.states.push_back(psi0);

    const double n0 = psi0.norm();
    const double e0 = expectation(H, psi0);
    const double escale = std::max(1.0, std::abs(e0));
    PropagatorOptions opt;
    opt.tol = tol;
    opt.max_substeps = max_substeps;

    State psi = psi0;
    for (int k = 1; k < samples; ++k) {
        PropagatorStats st;
        psi = evolve_krylov(H, psi, tr.times[k] - tr.times[k - 1], opt, &st);
        tr.stats.substeps += st.substeps;
        tr.stats.matvecs += st.matvecs;
        tr.stats.error_estimate += st.error_estimate;
        tr.norm_drift = std::max(tr.norm_drift, std::abs(psi.norm() - n0));
        tr.energy_drift = std::max(tr.energy_drift, std::abs(expectation(H, psi) - e0) / escale);
        tr.states.push_back(psi);
    }
    return tr;
}

/// c_m = <Psi_m | psi0>.
template <class Spectrum>
Vector overlap_coefficients(const Spectrum& spectrum, const State& psi0) {
    Vector c(static_cast<Eigen::Index>(spectrum.states.size()));
    for (std::size_t m = 0; m < spectrum.states.size(); ++m)
        c[static_cast<Eigen::Index>(m)] = spectrum.states[m].dot(psi0);
    return c;
}

} // namespace dicat
