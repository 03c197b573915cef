// quench.hpp: exact quench from |FM> with the observables of the cat protocol

#pragma once

#include <vector>

#include "dicat/core/operators.hpp"
#include "dicat/exact/evolve.hpp"
#include "dicat/exact/fidelity.hpp"
#include "dicat/exact/reduce.hpp"
#include "dicat/linalg/lanczos.hpp"
#include "dicat/tomography/marginal.hpp"

namespace dicat {

struct QuenchOptions {
    double t_final{5.0};
    int samples{200};
    double tol{1e-10};
    RealVector x_grid{uniform_grid(-6.0, 6.0, 121)};
    EigenOptions eigen{};
};

struct QuenchTrace {
    RealVector times;
    RealVector photon_number;
    RealVector parity_plus;
    RealVector parity_minus;
    RealVector fidelity;            // against the mixed photon reduction of the ground state
    RealVector x_grid;
    RealMatrix marginal_w;          // rows x, columns t
    RealVector top_fock_population; // population of Fock level n_max
    State final_state;
    SpectrumSlice ground;           // lowest eigenpair(s) used for the reference state
    double norm_drift{0.0};
    double energy_drift{0.0};
};

/// Population of each Fock level, summed over the qubit register.
inline RealVector photon_distribution(const State& psi, const HilbertLayout& L) {
    const Eigen::Map<const Matrix> M(psi.data(), L.qubit_dim(), L.photon_dim());
    return M.cwiseAbs2().colwise().sum().transpose();
}

inline QuenchTrace run_quench(const ModelParams& p, const QuenchOptions& opt = {}) {
    const HilbertLayout L(p);
    const SparseOperator H = hamiltonian(HamiltonianKind::dicke_ising, p);
    const State psi0 = special_state(StateSpec::ferromagnet(), L).psi;

    QuenchTrace qt;
    qt.ground = ground_state(H, 1, opt.eigen);
    const DensityMatrix rho_sr = reduce_photon_density(qt.ground.states[0], L);

    Trajectory tr = evolve(H, psi0, opt.t_final, opt.tol, opt.samples);
    const auto ns = static_cast<Eigen::Index>(tr.states.size());
    qt.times = tr.times;
    qt.norm_drift = tr.norm_drift;
    qt.energy_drift = tr.energy_drift;
    qt.x_grid = opt.x_grid;
    qt.photon_number.resize(ns);
    qt.parity_plus.resize(ns);
    qt.parity_minus.resize(ns);
    qt.fidelity.resize(ns);
    qt.top_fock_population.resize(ns);

    const RealVector even = qubit_parity_diagonal(+1, p.N);
    std::vector<DensityMatrix> mixed;
    mixed.reserve(static_cast<std::size_t>(ns));
    for (Eigen::Index k = 0; k < ns; ++k) {
        const State& psi = tr.states[static_cast<std::size_t>(k)];
        const RealVector dist = photon_distribution(psi, L);
        qt.photon_number[k] = dist.dot(RealVector::LinSpaced(dist.size(), 0.0, static_cast<double>(p.n_max)));
        qt.top_fock_population[k] = dist[p.n_max];
        const Eigen::Map<const Matrix> M(psi.data(), L.qubit_dim(), L.photon_dim());
        const double pp = M.cwiseAbs2().rowwise().sum().dot(even);
        qt.parity_plus[k] = pp;
        qt.parity_minus[k] = psi.squaredNorm() - pp;
        mixed.push_back(reduce_photon_density(psi, L));
        qt.fidelity[k] = fidelity(mixed.back(), rho_sr);
    }
    qt.marginal_w = marginal_w(mixed, opt.x_grid);
    qt.final_state = tr.states.back();
    return qt;
}

} // namespace dicat
