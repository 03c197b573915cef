// Mean-field phase structure: critical couplings, minima of F_DI and the
// tunnelling action between the two superradiant minima.

#include <cstdio>

#include "dicat/core/oscillator.hpp"
#include "dicat/field/instanton.hpp"

int main() {
    using namespace dicat;
    ModelParams p;
    p.omega0 = 1.0;
    p.omegaz = 0.05;
    p.J = 1.0;
    const CriticalCouplings c = critical_couplings(p);
    std::printf("Dicke g_c = %.6f, Dicke-Ising g_c = %.6f (c0 = %.4f)\n", c.g_c_dicke, c.g_c_dicke_ising, c.c0);

    std::printf("%8s %14s %10s %10s %12s\n", "g/g_c", "phase", "u_min", "J/g", "action");
    for (double r : {0.8, 1.05, 1.2, 1.4, 1.8}) {
        p.g = r * c.g_c_dicke_ising;
        const FreeEnergyProfile prof = free_energy_profile(ProfileModel::dicke_ising, p, uniform_grid(-5, 5, 1001));
        const double u_min = prof.minima.empty() ? 0.0 : prof.minima.back().u;
        char action[32] = "-";
        if (prof.classification == Phase::superradiant)
            std::snprintf(action, sizeof(action), "%.6f", instanton(prof, InstantonOptions{}, p.J / p.g).action);
        std::printf("%8.2f %14s %10.4f %10.4f %12s\n", r, to_string(prof.classification).c_str(), u_min, p.J / p.g,
                    action);
    }
}
