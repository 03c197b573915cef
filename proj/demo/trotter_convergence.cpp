// Digital-analog Trotter circuit against exact evolution for two qubits.

#include <cstdio>

#include "dicat/circuit/trotter.hpp"
#include "dicat/exact/evolve.hpp"

int main() {
    using namespace dicat;
    ModelParams p;
    p.N = 2;
    p.n_max = 8;
    p.omegaz = 0.05;
    p.J = 1.0;
    p.g = 0.9;
    const double t = 2.0;
    const HilbertLayout L(p);
    const State psi0 = special_state(StateSpec::ferromagnet(), L).psi;
    const Trajectory exact = evolve(hamiltonian(HamiltonianKind::dicke_ising, p), psi0, t, 1e-12, 2);
    const State& ref = exact.states.back();

    std::printf("%6s %14s %10s %8s %8s\n", "steps", "state error", "ratio", "JC", "CNOT");
    double prev = 0.0;
    for (int steps : {4, 8, 16, 32, 64, 128}) {
        const double err = (trotter_evolve(psi0, p, steps, t, Architecture::star).lab - ref).norm();
        const GateCount c = gate_count(steps, p.N, Architecture::star);
        std::printf("%6d %14.6e %10.3f %8ld %8ld\n", steps, err, prev > 0.0 ? prev / err : 0.0, c.jc, c.cnot);
        prev = err;
    }
}
