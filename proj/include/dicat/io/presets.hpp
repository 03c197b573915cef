// presets.hpp: named, fully explicit run configurations for the reference figures

#pragma once

#include <string>
#include <vector>

#include "dicat/io/config.hpp"

namespace dicat::io {

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig5_7", "fig4_8", "free_energy_sketch",
                                                "instanton_demo"};
    return names;
}

namespace detail {

/// omega0 = J = 1, omegaz = 0.05, g = 0.9, open chain, 20-photon cutoff.
inline ModelParams figure_model(int N) {
    ModelParams p;
    p.omega0 = 1.0;
    p.omegaz = 0.05;
    p.J = 1.0;
    p.g = 0.9;
    p.N = N;
    p.n_max = 20;
    p.boundary = Boundary::open;
    return p;
}

} // namespace detail

inline RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.preset = name;
    if (name == "fig1" || name == "fig2") {
        // Ground-state density matrices (fig1) and their Wigner functions (fig2), N = 7.
        c.kind = RunKind::ground_state;
        c.model = detail::figure_model(7);
        c.emit_wigner = name == "fig2";
    } else if (name == "fig5_7") {
        c.kind = RunKind::quench;
        c.model = detail::figure_model(5);
        c.t_final = 5.0;
        c.samples = 200;
    } else if (name == "fig4_8") {
        // Unitary circuit output, plus the noisy run while noise.enabled stays true.
        c.kind = RunKind::trotter;
        c.model = detail::figure_model(5);
        c.t_final = 5.0;
        c.trotter_steps = 15;
        c.architecture = Architecture::star;
        c.noise = {true, 1e3, 5e3, 5e3, 100e-9};
    } else if (name == "free_energy_sketch") {
        // Normal, critical and ordered profiles of both models.
        c.kind = RunKind::free_energy;
        c.model = detail::figure_model(1);
        c.profile_models = "dicke,dicke_ising";
        c.couplings = {0.5, 1.0, 1.5};
        c.u = {-4.0, 4.0, 801};
    } else if (name == "instanton_demo") {
        c.kind = RunKind::instanton;
        c.model = detail::figure_model(1);
        c.profile_models = "dicke_ising";
        c.couplings = {1.3};
        c.u = {-5.0, 5.0, 1001};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    validate(c);
    return c;
}

} // namespace dicat::io
