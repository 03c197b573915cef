// Ground-state cat of a five-qubit Dicke-Ising chain: the mixed photon state is
// nearly classical, the even-parity sector shows negative fringes.

#include <cstdio>

#include "dicat/exact/reduce.hpp"
#include "dicat/linalg/lanczos.hpp"
#include "dicat/tomography/wigner.hpp"

int main() {
    using namespace dicat;
    ModelParams p;
    p.N = 5;
    p.n_max = 20;
    p.omegaz = 0.05;
    p.J = 1.0;
    p.g = 0.9;
    const HilbertLayout L(p);
    const SpectrumSlice s = ground_state(hamiltonian(HamiltonianKind::dicke_ising, p), 2);
    std::printf("dimension %ld, E0 = %.10f, E1 - E0 = %.3e\n", static_cast<long>(L.dim()), s.energies[0],
                s.energies[1] - s.energies[0]);

    const WignerGrid grid = WignerGrid::square(5.0, 101);
    for (int sector : {0, +1, -1}) {
        const DensityMatrix rho = sector == 0 ? reduce_photon_density(s.states[0], L)
                                              : reduce_photon_density(s.states[0], L, sector);
        const WignerField w = wigner_direct(rho, grid);
        std::printf("%-6s trace %.6f  min W %+.5f at (x, p) = (%+.2f, %+.2f)\n",
                    sector == 0 ? "mixed" : sector > 0 ? "even" : "odd", rho.trace, w.min_value, w.min_x, w.min_p);
    }
}
