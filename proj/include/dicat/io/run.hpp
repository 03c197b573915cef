// run.hpp: executes a RunConfig and emits its CSV bundle and manifest

#pragma once

#include <filesystem>
#include <sstream>
#include <string>

#include "dicat/circuit/trotter.hpp"
#include "dicat/exact/evolve.hpp"
#include "dicat/exact/fidelity.hpp"
#include "dicat/exact/quench.hpp"
#include "dicat/exact/reduce.hpp"
#include "dicat/field/angular.hpp"
#include "dicat/field/instanton.hpp"
#include "dicat/io/config.hpp"
#include "dicat/io/csv.hpp"
#include "dicat/io/manifest.hpp"
#include "dicat/io/presets.hpp"
#include "dicat/noise/lindblad.hpp"
#include "dicat/tomography/displacement.hpp"
#include "dicat/tomography/wigner.hpp"

namespace dicat::io {

/// Config text with an optional `preset` key: the preset is expanded first, then
/// the remaining keys override it.
inline RunConfig load_config(const std::string& text) {
    const KeyValues kv = parse_key_values(text);
    RunConfig cfg;
    if (const auto it = kv.find("preset"); it != kv.end()) cfg = preset_config(it->second);
    apply_keys(cfg, kv);
    validate(cfg);
    return cfg;
}

namespace detail {

inline WignerField wigner_of(const DensityMatrix& rho, const RunConfig& c) {
    WignerGrid grid;
    grid.x = c.x.grid();
    grid.p = c.p.grid();
    return c.wigner_route == "direct" ? wigner_direct(rho, grid, c.threads)
                                      : wigner_displaced_parity(rho, grid, c.threads);
}

inline Json grid_json(const Range& r) { return {{"min", r.lo}, {"max", r.hi}, {"points", r.points}}; }

inline Json field_json(const WignerField& w, const RunConfig& c) {
    return {{"trace", w.trace_in},     {"min", w.min_value},
            {"min_x", w.min_x},        {"min_p", w.min_p},
            {"integral", w.quadrature_integral},
            {"mass_warning", w.mass_warning},
            {"x_grid", grid_json(c.x)}, {"p_grid", grid_json(c.p)}};
}

/// W_mix, W_+ and W_- of a photon state; projected fields are also written renormalized.
inline void emit_sectors(ResultBundle& b, const std::string& prefix, const DensityMatrix& mix,
                         const DensityMatrix& plus, const DensityMatrix& minus, const RunConfig& c) {
    b.emit(prefix + "dm_mix.csv", density_csv(mix));
    b.emit(prefix + "dm_plus.csv", density_csv(plus));
    b.emit(prefix + "dm_minus.csv", density_csv(minus));
    Json& d = b.diagnostics()[prefix + "sectors"];
    d["trace_plus"] = plus.trace;
    d["trace_minus"] = minus.trace;
    if (!c.emit_wigner) return;
    const auto [w_mix, w_plus, w_minus] = b.timed(prefix + "wigner", [&] {
        return std::tuple{wigner_of(mix, c), wigner_of(plus, c), wigner_of(minus, c)};
    });
    b.emit(prefix + "wigner_mix.csv", wigner_csv(w_mix));
    b.emit(prefix + "wigner_plus.csv", wigner_csv(w_plus));
    b.emit(prefix + "wigner_minus.csv", wigner_csv(w_minus));
    d["wigner_mix"] = field_json(w_mix, c);
    d["wigner_plus"] = field_json(w_plus, c);
    d["wigner_minus"] = field_json(w_minus, c);
    d["min_W_mix"] = w_mix.min_value;
    d["min_W_plus"] = w_plus.min_value;
    d["sector_identity_residual"] = (w_mix.values - w_plus.values - w_minus.values).cwiseAbs().maxCoeff();
    if (plus.trace > 1e-12) {
        const WignerField n = w_plus.normalized();
        b.emit(prefix + "wigner_plus_normalized.csv", wigner_csv(n));
        d["min_W_plus_normalized"] = n.min_value;
    }
    if (minus.trace > 1e-12) b.emit(prefix + "wigner_minus_normalized.csv", wigner_csv(w_minus.normalized()));
}

template <class Input>
void emit_photon_state(ResultBundle& b, const std::string& prefix, const Input& in, const HilbertLayout& L,
                       const RunConfig& c) {
    emit_sectors(b, prefix, reduce_photon_density(in, L), reduce_photon_density(in, L, +1),
                 reduce_photon_density(in, L, -1), c);
}

inline EigenOptions eigen_options(const RunConfig& c) {
    EigenOptions o;
    o.tol = c.eigen_tol;
    return o;
}

inline void run_ground_state(ResultBundle& b, const RunConfig& c) {
    const HilbertLayout L(c.model);
    const SparseOperator H = hamiltonian(HamiltonianKind::dicke_ising, c.model);
    const SpectrumSlice s = b.timed("eigensolver", [&] { return ground_state(H, c.m_max, eigen_options(c)); });
    Csv spec({"m", "energy"});
    for (Eigen::Index m = 0; m < s.energies.size(); ++m) spec.row({static_cast<double>(m), s.energies[m]});
    b.emit("spectrum.csv", spec.str());
    Json& d = b.diagnostics();
    d["E0"] = s.energies[0];
    d["max_residual"] = s.max_residual;
    d["matvecs"] = s.matvecs;
    d["dimension"] = L.dim();
    emit_photon_state(b, "", s.states[0], L, c);
}

inline void run_quench_kind(ResultBundle& b, const RunConfig& c) {
    QuenchOptions o;
    o.t_final = c.t_final;
    o.samples = c.samples;
    o.tol = c.evolve_tol;
    o.x_grid = c.x.grid();
    o.eigen = eigen_options(c);
    const QuenchTrace q = b.timed("quench", [&] { return run_quench(c.model, o); });
    const HilbertLayout L(c.model);
    b.emit("quench_trace.csv", quench_csv(q));
    b.emit("marginal_w.csv", marginal_csv(q.x_grid, q.times, q.marginal_w));

    const State psi0 = special_state(StateSpec::ferromagnet(), L).psi;
    const Vector c0 = overlap_coefficients(q.ground, psi0);
    const Eigen::Index last = q.times.size() - 1;
    Json& d = b.diagnostics();
    d["ground_energy"] = q.ground.energies[0];
    d["ground_overlap_sq"] = std::norm(c0[0]);
    d["final_n_photon"] = q.photon_number[last];
    d["final_P_plus"] = q.parity_plus[last];
    d["final_P_minus"] = q.parity_minus[last];
    d["final_fidelity"] = q.fidelity[last];
    d["max_top_fock_population"] = q.top_fock_population.maxCoeff();
    d["norm_drift"] = q.norm_drift;
    d["energy_drift"] = q.energy_drift;
    emit_photon_state(b, "final_", q.final_state, L, c);
}

inline void emit_noisy(ResultBundle& b, const RunConfig& c, const State& psi0, const State* unitary_lab) {
    const HilbertLayout L(c.model);
    ScheduleOptions so;
    so.decompose_zz = c.decompose_zz;
    so.palindromic = c.palindromic;
    const NoisyTrotterResult r = b.timed("noisy_trotter", [&] {
        return noisy_trotter(DensityMatrix::pure(psi0), c.model, c.trotter_steps, c.t_final, c.architecture,
                             c.noise.params(), WindowOptions{}, so);
    });
    Json& d = b.diagnostics()["noisy"];
    d["total_trace_drift"] = r.total_trace_drift;
    d["max_window_drift"] = r.max_window_drift;
    d["min_eigenvalue"] = r.min_eigenvalue;
    d["window_steps"] = r.windows.empty() ? 0 : r.windows.front().steps;
    if (unitary_lab) d["fidelity_to_unitary"] = unitary_lab->dot(r.lab.entries * *unitary_lab).real();
    emit_photon_state(b, "noisy_", r.lab, L, c);
}

inline void run_trotter_kind(ResultBundle& b, const RunConfig& c, bool unitary, bool noisy) {
    const HilbertLayout L(c.model);
    const State psi0 = special_state(StateSpec::ferromagnet(), L).psi;
    ScheduleOptions so;
    so.decompose_zz = c.decompose_zz;
    so.palindromic = c.palindromic;
    const CircuitSchedule full = build_schedule(c.model, c.trotter_steps, c.t_final, c.architecture, so);
    b.emit("schedule.txt", to_text(full));
    const GateCount formula = gate_count(c.trotter_steps, c.model.N, c.architecture);
    const GateCount counted = count_records(full.gates);
    b.diagnostics()["gate_count"] = {{"jc", formula.jc}, {"cnot", formula.cnot}, {"swap", formula.swap},
                                     {"materialized_jc", counted.jc}, {"materialized_cnot", counted.cnot},
                                     {"materialized_swap", counted.swap}};
    State lab;
    if (unitary) {
        const TrotterResult r = b.timed("trotter", [&] {
            return trotter_evolve(psi0, c.model, c.trotter_steps, c.t_final, c.architecture, so);
        });
        lab = r.lab;
        const ReadoutResult ro = parity_readout(r.interaction, L);
        b.diagnostics()["readout_p_plus"] = ro.p_plus;
        emit_photon_state(b, "", lab, L, c);
    }
    if (noisy) emit_noisy(b, c, psi0, unitary ? &lab : nullptr);
}

inline DensityMatrix parse_state(const std::string& spec, int n_max) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto complex_arg = [&] {
        const std::vector<double> v = parse_list(arg);
        if (v.empty() || v.size() > 2) throw ConfigError("expected re[,im] in wigner.state");
        return cplx(v[0], v.size() == 2 ? v[1] : 0.0);
    };
    if (kind == "fock") {
        const int n = parse_int("wigner.state", arg);
        if (n < 0 || n > n_max) throw ConfigError("Fock index outside 0..n_max");
        Vector v = Vector::Zero(n_max + 1);
        v[n] = 1.0;
        return DensityMatrix::pure(v);
    }
    if (kind == "coherent") return DensityMatrix::pure(photon_coherent(complex_arg(), n_max));
    if (kind == "cat") {
        const cplx a = complex_arg();
        const Vector v = coherent_amplitudes(a, n_max) + coherent_amplitudes(-a, n_max);
        if (v.norm() == 0.0) throw ConfigError("cat state has zero norm");
        return DensityMatrix::pure(v / v.norm());
    }
    if (kind == "file") return parse_density_csv(read_file(arg));
    throw ConfigError("wigner.state must be fock:n, coherent:re,im, cat:re,im or file:path");
}

inline void run_wigner_kind(ResultBundle& b, const RunConfig& c) {
    const DensityMatrix rho = parse_state(c.state, c.model.n_max);
    const WignerField w = b.timed("wigner", [&] { return wigner_of(rho, c); });
    b.emit("wigner.csv", wigner_csv(w));
    b.diagnostics()["wigner"] = field_json(w, c);
    b.diagnostics()["route"] = c.wigner_route;
}

inline std::vector<ProfileModel> profile_models(const std::string& list) {
    std::vector<ProfileModel> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item == "dicke") out.push_back(ProfileModel::dicke);
        else if (item == "dicke_ising") out.push_back(ProfileModel::dicke_ising);
        else if (!item.empty()) throw ConfigError("profile.models accepts dicke and dicke_ising");
    }
    if (out.empty()) throw ConfigError("profile.models is empty");
    return out;
}

/// Couplings g for one model: multiples of its critical coupling, or model.g when none are listed.
inline std::vector<double> model_couplings(ProfileModel m, const RunConfig& c, const CriticalCouplings& cc) {
    if (c.couplings.empty()) return {c.model.g};
    const double gc = m == ProfileModel::dicke ? cc.g_c_dicke : cc.g_c_dicke_ising;
    std::vector<double> out;
    for (double x : c.couplings) out.push_back(x * gc);
    return out;
}

inline Json minima_json(const FreeEnergyProfile& prof) {
    Json arr = Json::array();
    for (const auto& m : prof.minima) arr.push_back({{"u", m.u}, {"F", m.F}});
    return arr;
}

inline CriticalCouplings criticals(const RunConfig& c) {
    ModelParams q = c.model;
    return critical_couplings(q);
}

inline void run_free_energy_kind(ResultBundle& b, const RunConfig& c) {
    const std::vector<ProfileModel> models = profile_models(c.profile_models);
    const CriticalCouplings cc = b.timed("critical_couplings", [&] { return criticals(c); });
    Json& d = b.diagnostics();
    d["g_c_dicke"] = cc.g_c_dicke;
    d["g_c_dicke_numeric"] = cc.g_c_dicke_numeric;
    d["g_c_dicke_ising"] = cc.g_c_dicke_ising;
    d["c0"] = cc.c0;
    Json profiles = Json::array();
    for (ProfileModel m : models) {
        const std::vector<double> gs = model_couplings(m, c, cc);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            ModelParams q = c.model;
            q.g = gs[i];
            const FreeEnergyProfile prof = free_energy_profile(m, q, c.u.grid());
            const std::string name = "profile_" + to_string(m) + "_" + std::to_string(i) + ".csv";
            b.emit(name, profile_csv(prof));
            profiles.push_back({{"file", name}, {"model", to_string(m)}, {"g", q.g},
                                {"phase", to_string(prof.classification)}, {"minima", minima_json(prof)}});
        }
    }
    d["profiles"] = profiles;
}

inline void run_instanton_kind(ResultBundle& b, const RunConfig& c) {
    const CriticalCouplings cc = criticals(c);
    const std::vector<double> gs = model_couplings(ProfileModel::dicke_ising, c, cc);
    ModelParams q = c.model;
    q.g = gs.front();
    const FreeEnergyProfile prof = free_energy_profile(ProfileModel::dicke_ising, q, c.u.grid());
    b.emit("profile_dicke_ising.csv", profile_csv(prof));
    InstantonOptions o;
    o.samples = c.instanton_samples;
    const InstantonSolution s = b.timed("instanton", [&] { return instanton(prof, o, q.J / q.g); });
    b.emit("instanton.csv", instanton_csv(s));
    Json& d = b.diagnostics();
    d["g"] = q.g;
    d["phase"] = to_string(prof.classification);
    d["u0"] = s.u0;
    d["critical_u"] = q.J / q.g;
    d["kappa"] = s.kappa;
    d["action_per_qubit"] = s.action;
    d["energy_residual"] = s.energy_residual;
    d["antisymmetry"] = s.antisymmetry;
    d["crosses_critical"] = s.crosses_critical;
}

inline void run_angular_kind(ResultBundle& b, const RunConfig& c) {
    const AngularSurface s = b.timed("angular", [&] { return angular_mean_field(c.model, c.u.grid(), c.phi.grid()); });
    b.emit("angular_surface.csv", surface_csv(s));
    Csv branch({"u", "phi"});
    for (Eigen::Index i = 0; i < s.u_grid.size(); ++i) branch.row({s.u_grid[i], s.stationary_phi[i]});
    b.emit("stationary_phi.csv", branch.str());
    const FluctuationReport r = fluctuation_report(s);
    Json& d = b.diagnostics();
    d["stable_points"] = r.stable_points;
    d["masked_points"] = r.masked_points;
    d["max_fluctuation_ratio"] = r.max_ratio;
    d["branch_jump"] = s.branch_jump;
    if (s.branch_jump) d["jump_u"] = s.jump_u;
}

inline void run_schedule_kind(ResultBundle& b, const RunConfig& c) {
    ScheduleOptions so;
    so.decompose_zz = c.decompose_zz;
    so.palindromic = c.palindromic;
    const CircuitSchedule s = build_schedule(c.model, c.trotter_steps, c.t_final, c.architecture, so);
    b.emit("schedule.txt", to_text(s));
    const GateCount f = gate_count(c.trotter_steps, c.model.N, c.architecture);
    const GateCount m = count_records(s.gates);
    b.diagnostics()["gate_count"] = {{"jc", f.jc}, {"cnot", f.cnot}, {"swap", f.swap}, {"materialized_jc", m.jc},
                                     {"materialized_cnot", m.cnot}, {"materialized_swap", m.swap}};
}

} // namespace detail

/// Runs `cfg`, writes every payload, the config echo (config.txt) and manifest.json into `out`.
inline ResultBundle run(const RunConfig& cfg, const std::filesystem::path& out) {
    validate(cfg);
    check_resources(cfg);
    ResultBundle b(out);
    b.emit("config.txt", echo(cfg));
    switch (cfg.kind) {
    case RunKind::ground_state: detail::run_ground_state(b, cfg); break;
    case RunKind::quench: detail::run_quench_kind(b, cfg); break;
    case RunKind::trotter: detail::run_trotter_kind(b, cfg, true, cfg.noise.enabled); break;
    case RunKind::noisy_trotter: detail::run_trotter_kind(b, cfg, false, true); break;
    case RunKind::wigner: detail::run_wigner_kind(b, cfg); break;
    case RunKind::free_energy: detail::run_free_energy_kind(b, cfg); break;
    case RunKind::instanton: detail::run_instanton_kind(b, cfg); break;
    case RunKind::angular: detail::run_angular_kind(b, cfg); break;
    case RunKind::schedule: detail::run_schedule_kind(b, cfg); break;
    }
    b.write_manifest(to_string(cfg.kind), cfg.preset);
    return b;
}

inline ResultBundle run_preset(const std::string& name, const std::filesystem::path& out) {
    return run(preset_config(name), out);
}

} // namespace dicat::io
