// config.hpp: key = value run configuration with explicit units
//
// Couplings are dimensionless in units of omega0, noise rates are in Hz and the
// Lindblad window length is in seconds. The `units.*` keys state this and are
// checked on parse. `#` starts a comment.

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dicat/circuit/schedule.hpp"
#include "dicat/core/model.hpp"
#include "dicat/field/free_energy.hpp"
#include "dicat/io/csv.hpp"
#include "dicat/noise/lindblad.hpp"

namespace dicat::io {

enum class RunKind { ground_state, quench, trotter, noisy_trotter, wigner, free_energy, instanton, angular, schedule };

inline const std::vector<std::pair<RunKind, std::string>>& run_kind_names() {
    static const std::vector<std::pair<RunKind, std::string>> names{
        {RunKind::ground_state, "ground_state"}, {RunKind::quench, "quench"},
        {RunKind::trotter, "trotter"},           {RunKind::noisy_trotter, "noisy_trotter"},
        {RunKind::wigner, "wigner"},             {RunKind::free_energy, "free_energy"},
        {RunKind::instanton, "instanton"},       {RunKind::angular, "angular"},
        {RunKind::schedule, "schedule"}};
    return names;
}

inline std::string to_string(RunKind k) {
    for (const auto& [kind, name] : run_kind_names())
        if (kind == k) return name;
    return "?";
}

inline RunKind parse_run_kind(const std::string& s) {
    for (const auto& [kind, name] : run_kind_names())
        if (name == s) return kind;
    throw ConfigError("unknown run kind '" + s + "'");
}

struct Range {
    double lo{-6.0};
    double hi{6.0};
    int points{121};

    [[nodiscard]] RealVector grid() const { return uniform_grid(lo, hi, points); }
    bool operator==(const Range&) const = default;
};

struct NoiseConfig {
    bool enabled{false};
    double kappa_hz{0.0};
    double gamma_phi_hz{0.0};
    double gamma_1_hz{0.0};
    double tau_rabi_s{100e-9};

    [[nodiscard]] NoiseParams params() const {
        return NoiseParams::from_hz(kappa_hz, gamma_phi_hz, gamma_1_hz, tau_rabi_s);
    }
    bool operator==(const NoiseConfig&) const = default;
};

struct RunConfig {
    RunKind kind{RunKind::ground_state};
    std::string preset;                  // empty unless expanded from a preset
    ModelParams model{};
    NoiseConfig noise{};

    // ground state and Wigner output
    int m_max{1};
    double eigen_tol{1e-8};
    bool emit_wigner{true};
    std::string wigner_route{"direct"};  // direct | displaced_parity
    Range x{};
    Range p{};

    // time evolution
    double t_final{5.0};
    int samples{200};
    double evolve_tol{1e-10};
    int trotter_steps{15};
    Architecture architecture{Architecture::star};
    bool decompose_zz{false};
    bool palindromic{true};

    // standalone Wigner input: fock:n | coherent:re,im | cat:re,im | file:path
    std::string state{"fock:0"};

    // free energy, instanton and angular runs
    std::string profile_models{"dicke,dicke_ising"};
    std::vector<double> couplings{};     // multiples of each model's critical coupling; empty uses model.g
    Range u{-4.0, 4.0, 801};
    Range phi{-pi, pi, 181};
    int instanton_samples{401};

    int threads{1};
    double memory_cap_mb{4096.0};

    bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& key, const std::string& v) {
    const double d = parse_double(v);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError(key + " must be an integer");
    return static_cast<int>(d);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + " must be true or false");
}

inline std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(parse_double(trim(item)));
    return out;
}

inline std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

} // namespace detail

using KeyValues = std::map<std::string, std::string>;

inline KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

/// Applies keys on top of `cfg`. Unknown keys and bad units are errors.
inline void apply_keys(RunConfig& cfg, const KeyValues& kv) {
    for (const auto& [key, v] : kv) {
        auto dbl = [&] { return parse_double(v); };
        auto integer = [&] { return detail::parse_int(key, v); };
        auto boolean = [&] { return detail::parse_bool(key, v); };
        auto range = [&](Range& r, const std::string& field) {
            if (field == "min") r.lo = dbl();
            else if (field == "max") r.hi = dbl();
            else if (field == "points") r.points = integer();
            else return false;
            return true;
        };
        if (key == "kind") cfg.kind = parse_run_kind(v);
        else if (key == "preset") cfg.preset = v;
        else if (key == "units.couplings") { if (v != "omega0") throw ConfigError("units.couplings must be omega0"); }
        else if (key == "units.rates") { if (v != "Hz") throw ConfigError("units.rates must be Hz"); }
        else if (key == "units.tau") { if (v != "s") throw ConfigError("units.tau must be s"); }
        else if (key == "model.N") cfg.model.N = integer();
        else if (key == "model.n_max") cfg.model.n_max = integer();
        else if (key == "model.omega0") cfg.model.omega0 = dbl();
        else if (key == "model.omegaz") cfg.model.omegaz = dbl();
        else if (key == "model.J") cfg.model.J = dbl();
        else if (key == "model.g") cfg.model.g = dbl();
        else if (key == "model.spin") cfg.model.spin = dbl();
        else if (key == "model.boundary") {
            if (v == "open") cfg.model.boundary = Boundary::open;
            else if (v == "periodic") cfg.model.boundary = Boundary::periodic;
            else throw ConfigError("model.boundary must be open or periodic");
        }
        else if (key == "noise.enabled") cfg.noise.enabled = boolean();
        else if (key == "noise.kappa") cfg.noise.kappa_hz = dbl();
        else if (key == "noise.gamma_phi") cfg.noise.gamma_phi_hz = dbl();
        else if (key == "noise.gamma_1") cfg.noise.gamma_1_hz = dbl();
        else if (key == "noise.tau_rabi") cfg.noise.tau_rabi_s = dbl();
        else if (key == "eigen.m_max") cfg.m_max = integer();
        else if (key == "eigen.tol") cfg.eigen_tol = dbl();
        else if (key == "wigner.emit") cfg.emit_wigner = boolean();
        else if (key == "wigner.route") {
            if (v != "direct" && v != "displaced_parity") throw ConfigError("wigner.route must be direct or displaced_parity");
            cfg.wigner_route = v;
        }
        else if (key.rfind("wigner.x_", 0) == 0 && range(cfg.x, key.substr(9))) {}
        else if (key.rfind("wigner.p_", 0) == 0 && range(cfg.p, key.substr(9))) {}
        else if (key == "wigner.state") cfg.state = v;
        else if (key == "evolve.t_final") cfg.t_final = dbl();
        else if (key == "evolve.samples") cfg.samples = integer();
        else if (key == "evolve.tol") cfg.evolve_tol = dbl();
        else if (key == "trotter.L") cfg.trotter_steps = integer();
        else if (key == "trotter.architecture") cfg.architecture = parse_architecture(v);
        else if (key == "trotter.decompose_zz") cfg.decompose_zz = boolean();
        else if (key == "trotter.palindromic") cfg.palindromic = boolean();
        else if (key == "profile.models") cfg.profile_models = v;
        else if (key == "profile.couplings") cfg.couplings = detail::parse_list(v);
        else if (key.rfind("profile.u_", 0) == 0 && range(cfg.u, key.substr(10))) {}
        else if (key.rfind("angular.phi_", 0) == 0 && range(cfg.phi, key.substr(12))) {}
        else if (key == "instanton.samples") cfg.instanton_samples = integer();
        else if (key == "run.threads") cfg.threads = integer();
        else if (key == "run.memory_cap_mb") cfg.memory_cap_mb = dbl();
        else throw ConfigError("unknown configuration key '" + key + "'");
    }
}

inline void validate(const RunConfig& c) {
    c.model.validate();
    if (c.noise.enabled) (void)c.noise.params();
    for (const Range* r : {&c.x, &c.p, &c.u, &c.phi})
        if (r->points < 2 || !(r->hi > r->lo)) throw ConfigError("grid ranges need max > min and at least 2 points");
    if (c.m_max < 1) throw ConfigError("eigen.m_max must be at least 1");
    if (!(c.eigen_tol > 0.0) || !(c.evolve_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (!(c.t_final > 0.0) || c.samples < 2) throw ConfigError("evolve.t_final must be positive with at least 2 samples");
    if (c.trotter_steps < 1) throw ConfigError("trotter.L must be at least 1");
    if (c.threads < 1) throw ConfigError("run.threads must be at least 1");
    if (c.instanton_samples < 3) throw ConfigError("instanton.samples must be at least 3");
    if (!(c.memory_cap_mb > 0.0)) throw ConfigError("run.memory_cap_mb must be positive");
}

inline RunConfig parse_config(const std::string& text, RunConfig base = {}) {
    apply_keys(base, parse_key_values(text));
    validate(base);
    return base;
}

/// Fully explicit echo; parse_config(echo(c)) == c.
inline std::string echo(const RunConfig& c) {
    std::ostringstream o;
    auto line = [&o](const std::string& k, const std::string& v) { o << k << " = " << v << '\n'; };
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    auto range = [&](const std::string& prefix, const Range& r) {
        line(prefix + "min", fmt(r.lo));
        line(prefix + "max", fmt(r.hi));
        line(prefix + "points", std::to_string(r.points));
    };
    line("kind", to_string(c.kind));
    if (!c.preset.empty()) line("preset", c.preset);
    line("units.couplings", "omega0");
    line("units.rates", "Hz");
    line("units.tau", "s");
    line("model.N", std::to_string(c.model.N));
    line("model.n_max", std::to_string(c.model.n_max));
    line("model.omega0", fmt(c.model.omega0));
    line("model.omegaz", fmt(c.model.omegaz));
    line("model.J", fmt(c.model.J));
    line("model.g", fmt(c.model.g));
    line("model.spin", fmt(c.model.spin));
    line("model.boundary", to_string(c.model.boundary));
    line("noise.enabled", b(c.noise.enabled));
    line("noise.kappa", fmt(c.noise.kappa_hz));
    line("noise.gamma_phi", fmt(c.noise.gamma_phi_hz));
    line("noise.gamma_1", fmt(c.noise.gamma_1_hz));
    line("noise.tau_rabi", fmt(c.noise.tau_rabi_s));
    line("eigen.m_max", std::to_string(c.m_max));
    line("eigen.tol", fmt(c.eigen_tol));
    line("wigner.emit", b(c.emit_wigner));
    line("wigner.route", c.wigner_route);
    range("wigner.x_", c.x);
    range("wigner.p_", c.p);
    line("wigner.state", c.state);
    line("evolve.t_final", fmt(c.t_final));
    line("evolve.samples", std::to_string(c.samples));
    line("evolve.tol", fmt(c.evolve_tol));
    line("trotter.L", std::to_string(c.trotter_steps));
    line("trotter.architecture", to_string(c.architecture));
    line("trotter.decompose_zz", b(c.decompose_zz));
    line("trotter.palindromic", b(c.palindromic));
    line("profile.models", c.profile_models);
    line("profile.couplings", detail::join(c.couplings));
    range("profile.u_", c.u);
    range("angular.phi_", c.phi);
    line("instanton.samples", std::to_string(c.instanton_samples));
    line("run.threads", std::to_string(c.threads));
    line("run.memory_cap_mb", fmt(c.memory_cap_mb));
    return o.str();
}

/// Rough peak memory of a run in MB, dominated by dense states and density matrices.
inline double estimated_memory_mb(const RunConfig& c) {
    constexpr double bytes = 16.0;
    const double P = c.model.n_max + 1.0;
    const double D = static_cast<double>(c.model.dimension());
    double est = 0.0;
    switch (c.kind) {
    case RunKind::ground_state: est = D * (300.0 + 2.0 * c.m_max + 16.0); break;
    case RunKind::quench: est = D * (300.0 + c.samples + 40.0) + c.samples * P * P; break;
    case RunKind::trotter: est = 8.0 * D + (c.noise.enabled ? 8.0 * D * D : 0.0); break;
    case RunKind::noisy_trotter: est = 8.0 * D * D; break;
    case RunKind::wigner: est = 8.0 * P * P; break;
    case RunKind::schedule:
    case RunKind::free_energy:
    case RunKind::instanton:
    case RunKind::angular: est = 0.0; break;
    }
    est *= bytes;
    const double grids = 8.0 * (c.x.points * static_cast<double>(c.p.points) * 4.0 +
                                c.u.points * static_cast<double>(c.phi.points) * 4.0);
    return (est + grids) / (1024.0 * 1024.0);
}

inline void check_resources(const RunConfig& c) {
    const double mb = estimated_memory_mb(c);
    if (mb > c.memory_cap_mb)
        throw ConfigError("estimated memory " + fmt(mb) + " MB exceeds run.memory_cap_mb = " + fmt(c.memory_cap_mb));
}

} // namespace dicat::io
