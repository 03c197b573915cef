// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: dicat_acceptance [criterion ...]   (no arguments runs all fifteen)

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dicat/field/angular.hpp"
#include "dicat/field/instanton.hpp"
#include "dicat/io/presets.hpp"
#include "dicat/io/run.hpp"
#include "support.hpp"

using namespace dicat;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... v) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, v...);
    return buf;
}

State ferromagnet(const ModelParams& p) { return special_state(StateSpec::ferromagnet(), HilbertLayout(p)).psi; }

struct Sectors {
    WignerField mix, plus, minus;
};

template <class Input>
Sectors sectors(const Input& in, const io::RunConfig& c) {
    const HilbertLayout L(c.model);
    return {io::detail::wigner_of(reduce_photon_density(in, L), c),
            io::detail::wigner_of(reduce_photon_density(in, L, +1), c),
            io::detail::wigner_of(reduce_photon_density(in, L, -1), c)};
}

// Shared heavy runs, computed on first use.

const QuenchTrace& quench_fig57() {
    static const QuenchTrace q = [] {
        const io::RunConfig c = io::preset_config("fig5_7");
        QuenchOptions o;
        o.t_final = c.t_final;
        o.samples = c.samples;
        o.tol = c.evolve_tol;
        return run_quench(c.model, o);
    }();
    return q;
}

const io::RunConfig& fig48() {
    static const io::RunConfig c = io::preset_config("fig4_8");
    return c;
}

ScheduleOptions schedule_options(const io::RunConfig& c) {
    ScheduleOptions so;
    so.decompose_zz = c.decompose_zz;
    so.palindromic = c.palindromic;
    return so;
}

const TrotterResult& trotter_fig48() {
    static const TrotterResult r = [] {
        const io::RunConfig& c = fig48();
        return trotter_evolve(ferromagnet(c.model), c.model, c.trotter_steps, c.t_final, c.architecture,
                              schedule_options(c));
    }();
    return r;
}

const NoisyTrotterResult& noisy_fig48() {
    static const NoisyTrotterResult r = [] {
        const io::RunConfig& c = fig48();
        return noisy_trotter(DensityMatrix::pure(ferromagnet(c.model)), c.model, c.trotter_steps, c.t_final,
                             c.architecture, c.noise.params(), WindowOptions{}, schedule_options(c));
    }();
    return r;
}

ModelParams field_model(double g, double J = 1.0, double omegaz = 0.0) {
    ModelParams p;
    p.omega0 = 1.0;
    p.omegaz = omegaz;
    p.J = J;
    p.g = g;
    return p;
}

// Criteria.

Outcome overlap() {
    const QuenchTrace& q = quench_fig57();
    const ModelParams p = io::preset_config("fig5_7").model;
    const double c0 = std::norm(overlap_coefficients(q.ground, ferromagnet(p))[0]);
    return {std::abs(c0 - 0.20) <= 0.05, fmt("|c0|^2 = %.6f", c0)};
}

Outcome photon_growth() {
    const QuenchTrace& q = quench_fig57();
    const double n = q.photon_number[q.photon_number.size() - 1];
    const double top = q.top_fock_population.maxCoeff();
    return {std::abs(n - 3.0) <= 0.5 && top <= 1e-3, fmt("<n>(t_f) = %.6f, max Fock-20 population = %.3e", n, top)};
}

Outcome parity() {
    const QuenchTrace& q = quench_fig57();
    const Eigen::Index last = q.times.size() - 1;
    const double p0 = q.parity_plus[0], pp = q.parity_plus[last], pm = q.parity_minus[last];
    const bool in = [](double v) { return v >= 0.35 && v <= 0.65; }(pp) && pm >= 0.35 && pm <= 0.65;
    return {p0 == 1.0 && in, fmt("P+(0) = %.17g, P+(t_f) = %.6f, P-(t_f) = %.6f", p0, pp, pm)};
}

Outcome quench_fidelity() {
    const QuenchTrace& q = quench_fig57();
    const double f = q.fidelity[q.fidelity.size() - 1];
    return {f > 0.5, fmt("F(t_f) = %.6f", f)};
}

Outcome cat_exact() {
    const io::RunConfig c = io::preset_config("fig2");
    const SpectrumSlice s = ground_state(hamiltonian(HamiltonianKind::dicke_ising, c.model), 1, io::detail::eigen_options(c));
    const Sectors w = sectors(s.states[0], c);
    return {w.plus.min_value < 0.0 && w.mix.min_value > w.plus.min_value,
            fmt("min W+ = %.6e at (%.2f, %.2f), min W_mix = %.6e", w.plus.min_value, w.plus.min_x, w.plus.min_p,
                w.mix.min_value)};
}

Outcome cat_trotter() {
    const Sectors w = sectors(trotter_fig48().lab, fig48());
    const double id = (w.mix.values - w.plus.values - w.minus.values).cwiseAbs().maxCoeff();
    return {w.plus.min_value < 0.0 && id <= 1e-12,
            fmt("min W+ = %.6e, max |W_mix - W+ - W-| = %.3e", w.plus.min_value, id)};
}

Outcome cat_noisy() {
    const NoisyTrotterResult& r = noisy_fig48();
    const Sectors w = sectors(r.lab, fig48());
    return {w.plus.min_value < 0.0, fmt("min W+ = %.6e (noisy), min eigenvalue = %.2e", w.plus.min_value,
                                        r.min_eigenvalue)};
}

Outcome gate_counts() {
    ModelParams p = fig48().model;
    p.N = 5;
    bool ok = true;
    std::ostringstream os;
    for (Architecture a : {Architecture::chain_swap, Architecture::star}) {
        const GateCount f = gate_count(15, 5, a);
        const GateCount m = count_records(build_schedule(p, 15, 5.0, a).gates);
        const long swaps = a == Architecture::star ? 0 : 150;
        ok = ok && f == m && f.jc == 225 && f.cnot == 124 && f.swap == swaps;
        os << to_string(a) << ": " << f.jc << " JC, " << f.cnot << " CNOT, " << f.swap << " SWAP (materialized "
           << m.jc << "/" << m.cnot << "/" << m.swap << ")  ";
    }
    return {ok, os.str()};
}

Outcome trotter_order() {
    ModelParams p = io::detail::figure_model(2);
    p.n_max = 6;
    const State psi0 = ferromagnet(p);
    const double t = 2.0;
    const Matrix H = oracle::dicke_ising(2, 6, p.omega0, p.omegaz, p.J, p.g, false);
    const Vector exact = oracle::propagator(H, t) * psi0;
    auto err = [&](int L) { return (trotter_evolve(psi0, p, L, t, Architecture::star).lab - exact).norm(); };
    const double e16 = err(16), e32 = err(32);
    const double state_ratio = e16 / e32;

    ModelParams q = io::detail::figure_model(1);
    q.n_max = 10;
    const HilbertLayout L(q);
    const Matrix HR = Matrix(hamiltonian(HamiltonianKind::rabi, q));
    const RealVector d = free_diagonal(L, q.omega0);
    auto step_err = [&](double dt) {
        const double t0 = 0.4;
        const Matrix S = materialize(rabi_gate_records(t0, dt, rabi_angle(q, dt), q.omega0, 0), L);
        const Vector after = (-I * (t0 + dt) * d.cast<cplx>()).array().exp();
        const Vector before = (I * t0 * d.cast<cplx>()).array().exp();
        return (Matrix(after.asDiagonal() * S * before.asDiagonal()) - oracle::propagator(HR, dt)).norm();
    };
    const double rabi_ratio = step_err(0.2) / step_err(0.1);
    return {state_ratio >= 3.4 && state_ratio <= 4.6 && rabi_ratio >= 6.0 && rabi_ratio <= 10.0,
            fmt("state error %.3e -> %.3e (ratio %.3f), Rabi step ratio %.3f", e16, e32, state_ratio, rabi_ratio)};
}

Outcome free_energy_oracle() {
    double worst = 0.0;
    for (double g : {0.5, 0.9, 1.2})
        for (int i = 0; i <= 300; ++i) {
            const double u = 0.01 * i;
            auto eps = [&](double k) {
                return 2.0 * std::sqrt(std::max(0.0, g * g * u * u + 1.0 - 2.0 * g * u * std::cos(k)));
            };
            const double band =
                -boost::math::quadrature::gauss_kronrod<double, 61>::integrate(eps, 0.0, pi, 20, 1e-15) / (2.0 * pi);
            worst = std::max(worst, std::abs(free_energy_dicke_ising(u, field_model(g)) - 0.25 * u * u - band));
        }
    return {worst <= 1e-10, fmt("max |F_DI - band quadrature| = %.3e", worst)};
}

Outcome critical() {
    double worst = 0.0;
    for (double wz : {0.05, 1.0}) {
        const CriticalCouplings d = critical_couplings(field_model(0.5, 0.0, wz));
        worst = std::max(worst, std::abs(d.g_c_dicke_numeric - std::sqrt(wz / 2.0)));
    }
    const double c0 = critical_couplings(field_model(0.5)).c0;
    return {worst <= 1e-6 && std::abs(c0 - 0.90) <= 0.02,
            fmt("max |g_c numeric - sqrt(omega0 omegaz/2)| = %.3e, c0 = %.6f", worst, c0)};
}

Outcome instanton_crossing() {
    const io::RunConfig c = io::preset_config("instanton_demo");
    const CriticalCouplings cc = critical_couplings(c.model);
    ModelParams p = c.model;
    p.g = c.couplings.front() * cc.g_c_dicke_ising;
    const FreeEnergyProfile prof = free_energy_profile(ProfileModel::dicke_ising, p, c.u.grid());
    const InstantonSolution s = instanton(prof, InstantonOptions{}, p.J / p.g);
    return {s.u0 > p.J / p.g && s.crosses_critical && s.energy_residual <= 1e-6,
            fmt("g = %.4f, u0 = %.6f > J/g = %.6f, residual = %.3e", p.g, s.u0, p.J / p.g, s.energy_residual)};
}

Outcome fluctuation_identity() {
    double worst = 0.0;
    long stable = 0;
    for (double s : {0.5, 1.5, 4.0}) {
        ModelParams p = field_model(0.9, 0.0, 0.4);
        p.spin = s;
        const AngularSurface surf = angular_mean_field(p, uniform_grid(-3, 3, 61), uniform_grid(-pi, pi, 91));
        for (Eigen::Index i = 0; i < surf.u_grid.size(); ++i)
            for (Eigen::Index j = 0; j < surf.phi_grid.size(); ++j) {
                if (!surf.stability_mask(i, j)) continue;
                ++stable;
                worst = std::max(worst, std::abs(surf.fluct_values(i, j) + surf.h_values(i, j) / (2.0 * s)));
            }
    }
    return {stable > 0 && worst <= 1e-12, fmt("max |F_fl + h/2s| = %.3e over %ld stable points", worst, stable)};
}

Outcome tomography() {
    std::mt19937_64 rng(2024);
    const WignerGrid grid = WignerGrid::square(3.0, 13);
    double routes = 0.0, ramsey = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho(oracle::random_density(6, rng));
        const WignerField parity = wigner_displaced_parity(rho, grid);
        routes = std::max(routes, (wigner_direct(rho, grid).values - parity.values).cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < grid.x.size(); i += 3)
            for (Eigen::Index j = 0; j < grid.p.size(); j += 3)
                ramsey = std::max(ramsey, std::abs(ancilla_ramsey(rho, xi_of(grid.x[i], grid.p[j])).wigner_xp -
                                                   parity.values(i, j)));
    }
    Vector v = Vector::Zero(5);
    v[0] = 1.0;
    const WignerGrid wide = WignerGrid::square(5.0, 51);
    const WignerField vac = wigner_direct(DensityMatrix::pure(v), wide);
    double vacuum = 0.0;
    for (Eigen::Index i = 0; i < wide.x.size(); ++i)
        for (Eigen::Index j = 0; j < wide.p.size(); ++j)
            vacuum = std::max(vacuum, std::abs(vac.values(i, j) -
                                               std::exp(-wide.x[i] * wide.x[i] - wide.p[j] * wide.p[j]) / pi));
    return {routes <= 1e-8 && ramsey <= 1e-8 && vacuum <= 1e-12,
            fmt("direct vs parity %.3e, Ramsey vs parity %.3e, vacuum %.3e", routes, ramsey, vacuum)};
}

Outcome master_equation() {
    const io::RunConfig& c = fig48();
    const double drift = noisy_fig48().total_trace_drift;

    const State& u = trotter_fig48().lab;
    const NoisyTrotterResult silent =
        noisy_trotter(DensityMatrix::pure(ferromagnet(c.model)), c.model, c.trotter_steps, c.t_final,
                      c.architecture, NoiseParams{}, WindowOptions{}, schedule_options(c));
    const double f = u.dot(silent.lab.entries * u).real();

    // d<n>/dt = -N kappa <n>: once on the circuit output at the preset rate, once on a
    // coherent state with N kappa tau = 0.35.
    const HilbertLayout L(c.model);
    const NoiseParams kappa_only{c.noise.params().kappa, 0.0, 0.0, c.noise.params().tau_rabi};
    const Matrix n_op = Matrix(photon_number(L));
    const Matrix rho = u * u.adjoint();
    const double n0 = (n_op * rho).trace().real();
    const double n1 = (n_op * lindblad_window(rho, kappa_only.tau_rabi, kappa_only, L)).trace().real();
    double law = std::abs(n1 - n0 * std::exp(-c.model.N * kappa_only.kappa * kappa_only.tau_rabi));

    const HilbertLayout L2(2, 25);
    const double tau = 100e-9;
    const NoiseParams strong{0.35 / (2 * tau), 0.0, 0.0, tau};
    const State psi = special_state(StateSpec::coherent_state(cplx(1.2, 0.5)), L2).psi;
    const Matrix n2 = Matrix(photon_number(L2));
    const Matrix rho2 = psi * psi.adjoint();
    const double m0 = (n2 * rho2).trace().real();
    const double m1 = (n2 * lindblad_window(rho2, tau, strong, L2)).trace().real();
    law = std::max(law, std::abs(m1 - m0 * std::exp(-0.35)));

    return {drift <= 1e-6 && f >= 1.0 - 1e-8 && law <= 1e-6,
            fmt("trace drift %.3e, zero-noise fidelity 1 - %.3e, damping law error %.3e", drift, 1.0 - f, law)};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "overlap number", overlap},
        {2, "photon growth", photon_growth},
        {3, "parity equalization", parity},
        {4, "quench fidelity", quench_fidelity},
        {5, "cat negativity, exact", cat_exact},
        {6, "cat negativity, Trotterized", cat_trotter},
        {7, "noise robustness", cat_noisy},
        {8, "gate counts", gate_counts},
        {9, "Trotter order", trotter_order},
        {10, "free-energy oracle", free_energy_oracle},
        {11, "critical couplings", critical},
        {12, "instanton", instanton_crossing},
        {13, "fluctuation identity", fluctuation_identity},
        {14, "tomography route equivalence", tomography},
        {15, "master-equation sanity", master_equation},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const Criterion& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("%s  %2d  %-30s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d failed\n", failed);
    return failed ? 1 : 0;
}
