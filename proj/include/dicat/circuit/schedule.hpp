// schedule.hpp: Rabi, Dicke and Dicke-Ising gate sequences and the Trotter schedule
//
// Records are stored in application order (first applied first). A Rabi gate
//   S_R = S_JC(theta/2) X_pi(phi+) S_JC(theta) X_pi(phi-) S_JC(theta/2)
// therefore appears as jc(theta/2), x_pi(phi-), jc(theta), x_pi(phi+), jc(theta/2)
// with phi- = omega0 (t_k + dt/4) and phi+ = omega0 (t_k + 3 dt/4).
//
// Star architecture: every qubit couples to the resonator; Rabi gates on qubits
// 0..N-1 in that order. Chain architecture: only qubit slot 0 couples. Before
// the Rabi gate for the j-th qubit a ladder of j nearest-neighbour SWAPs brings
// it to slot 0, which leaves the register reversed after a full step; the
// reversal is undone by swap_restore records that are not part of the hardware
// gate budget. With restoration both architectures give the same unitary.

#pragma once

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dicat/circuit/gates.hpp"

namespace dicat {

enum class Architecture { chain_swap, star };

inline std::string to_string(Architecture a) { return a == Architecture::star ? "star" : "chain_swap"; }

inline Architecture parse_architecture(const std::string& s) {
    if (s == "star") return Architecture::star;
    if (s == "chain_swap" || s == "chain") return Architecture::chain_swap;
    throw ConfigError("unknown architecture: " + s);
}

struct ScheduleOptions {
    bool include_readout{true};     // CNOT ladder that collects the parity on qubit 0
    bool restore_order{true};       // append swap_restore records in the chain architecture
    bool decompose_zz{false};       // emit zz as cnot, z(target), cnot
    bool palindromic{true};         // even steps apply the Z/ZZ layer before S_D
};

/// Free Hamiltonian that defines the interaction picture.
struct Frame {
    double omega0{1.0};
    double t_final{0.0};
    std::string description{"H0 = omega0 a^dagger a - (omega0/2) sum_j sigma^z_j"};
};

struct CircuitSchedule {
    Architecture architecture{Architecture::star};
    int L{1};
    double dt{0.0};
    double t_final{0.0};
    int N{1};
    std::vector<GateRecord> gates;
    Frame frame;
};

struct GateCount {
    long jc{0};
    long cnot{0};
    long swap{0};
    bool operator==(const GateCount&) const = default;
};

inline double rabi_angle(const ModelParams& p, double dt) { return p.g * dt / std::sqrt(static_cast<double>(p.N)); }

inline void append_rabi_gate(std::vector<GateRecord>& out, double t_k, double dt, double theta, double omega0,
                             int qubit, int step) {
    const double phi_minus = omega0 * (t_k + 0.25 * dt);
    const double phi_plus = omega0 * (t_k + 0.75 * dt);
    out.push_back({GateKind::jc, {qubit}, 0.5 * theta, step});
    out.push_back({GateKind::x_pi, {qubit}, phi_minus, step});
    out.push_back({GateKind::jc, {qubit}, theta, step});
    out.push_back({GateKind::x_pi, {qubit}, phi_plus, step});
    out.push_back({GateKind::jc, {qubit}, 0.5 * theta, step});
}

inline std::vector<GateRecord> rabi_gate_records(double t_k, double dt, double theta, double omega0, int qubit,
                                                 int step = 1) {
    std::vector<GateRecord> out;
    append_rabi_gate(out, t_k, dt, theta, omega0, qubit, step);
    return out;
}

inline void append_dicke_gate(std::vector<GateRecord>& out, const ModelParams& p, double t_k, double dt,
                              Architecture arch, int step, bool restore_order = true) {
    const double theta = rabi_angle(p, dt);
    if (arch == Architecture::star) {
        for (int j = 0; j < p.N; ++j) append_rabi_gate(out, t_k, dt, theta, p.omega0, j, step);
        return;
    }
    append_rabi_gate(out, t_k, dt, theta, p.omega0, 0, step);
    for (int j = 1; j < p.N; ++j) {
        for (int k = j; k >= 1; --k) out.push_back({GateKind::swap, {k - 1, k}, 0.0, step});
        append_rabi_gate(out, t_k, dt, theta, p.omega0, 0, step);
    }
    if (restore_order) {
        // Undo the reversal with bubble-sort passes.
        for (int pass = 0; pass + 1 < p.N; ++pass)
            for (int k = 0; k + 1 < p.N - pass; ++k) out.push_back({GateKind::swap_restore, {k, k + 1}, 0.0, step});
    }
}

/// S_DI = (prod ZZ_eta)(prod Z_beta) S_D with eta = J dt, beta = omegaz dt; open chain.
/// With `palindromic` the even steps use the mirrored order S_D (prod Z)(prod ZZ), so
/// each pair of steps is a symmetric splitting and the schedule is second order.
inline void append_dicke_ising_gate(std::vector<GateRecord>& out, const ModelParams& p, double t_k, double dt,
                                    Architecture arch, int step, const ScheduleOptions& opt = {}) {
    std::vector<GateRecord> layer;
    for (int j = 0; j < p.N; ++j) layer.push_back({GateKind::z, {j}, p.omegaz * dt, step});
    for (int j = 0; j + 1 < p.N; ++j) {
        const double eta = p.J * dt;
        if (opt.decompose_zz) {
            layer.push_back({GateKind::cnot, {j, j + 1}, 0.0, step});
            layer.push_back({GateKind::z, {j + 1}, eta, step});
            layer.push_back({GateKind::cnot, {j, j + 1}, 0.0, step});
        } else {
            layer.push_back({GateKind::zz, {j, j + 1}, eta, step});
        }
    }
    if (opt.palindromic && step % 2 == 0) {
        out.insert(out.end(), layer.rbegin(), layer.rend());
        append_dicke_gate(out, p, t_k, dt, arch, step, opt.restore_order);
        return;
    }
    append_dicke_gate(out, p, t_k, dt, arch, step, opt.restore_order);
    out.insert(out.end(), layer.begin(), layer.end());
}

/// CNOT(N-1 -> N-2), ..., CNOT(1 -> 0): qubit 0 ends up holding the total parity.
inline void append_parity_ladder(std::vector<GateRecord>& out, int N) {
    for (int j = N - 1; j >= 1; --j) out.push_back({GateKind::cnot, {j, j - 1}, 0.0, 0});
}

inline CircuitSchedule build_schedule(const ModelParams& p, int L, double t_final, Architecture arch,
                                      const ScheduleOptions& opt = {}) {
    p.require_qubits();
    if (L < 1) throw ConfigError("number of Trotter steps must be at least 1");
    if (p.boundary == Boundary::periodic && p.N >= 3)
        throw ConfigError("the circuit schedule implements the open chain only");
    CircuitSchedule s;
    s.architecture = arch;
    s.L = L;
    s.t_final = t_final;
    s.dt = t_final / L;
    s.N = p.N;
    s.frame = Frame{p.omega0, t_final, Frame{}.description};
    for (int k = 1; k <= L; ++k) append_dicke_ising_gate(s.gates, p, (k - 1) * s.dt, s.dt, arch, k, opt);
    if (opt.include_readout) append_parity_ladder(s.gates, p.N);
    return s;
}

/// Hardware gate budget of L Trotter steps plus the parity readout.
inline GateCount gate_count(int L, int N, Architecture arch) {
    if (L < 1 || N < 1) throw ConfigError("gate_count needs L, N >= 1");
    GateCount c;
    const long steps = L;
    c.jc = 3 * steps * N;
    c.cnot = (2 * steps + 1) * (N - 1);
    c.swap = arch == Architecture::chain_swap ? steps * N * (N - 1) / 2 : 0;
    return c;
}

/// Counts taken from materialized records; a zz gate costs two CNOTs.
inline GateCount count_records(const std::vector<GateRecord>& gates) {
    GateCount c;
    for (const auto& g : gates) {
        switch (g.kind) {
        case GateKind::jc: ++c.jc; break;
        case GateKind::cnot: ++c.cnot; break;
        case GateKind::zz: c.cnot += 2; break;
        case GateKind::swap: ++c.swap; break;
        default: break;
        }
    }
    return c;
}

inline std::string format_real(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

/// One gate per line: `kind targets phase step`, targets comma separated.
inline std::string to_text(const CircuitSchedule& s) {
    std::ostringstream os;
    os << "# architecture " << to_string(s.architecture) << " L " << s.L << " N " << s.N << " dt "
       << format_real(s.dt) << '\n';
    os << "# frame " << s.frame.description << " omega0 " << format_real(s.frame.omega0) << " t_final "
       << format_real(s.frame.t_final) << '\n';
    for (const auto& g : s.gates) {
        os << to_string(g.kind) << ' ';
        for (std::size_t i = 0; i < g.targets.size(); ++i) os << (i ? "," : "") << g.targets[i];
        os << ' ' << format_real(g.phase) << ' ' << g.step << '\n';
    }
    return os.str();
}

} // namespace dicat
