// Configuration, presets, CSV emission, manifests and small end-to-end runs.

#include <gtest/gtest.h>

#include <filesystem>
#include <locale>
#include <random>

#include "dicat/io/run.hpp"

using namespace dicat;
using namespace dicat::io;

namespace {

struct CommaDecimal : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
    char do_thousands_sep() const override { return '.'; }
    std::string do_grouping() const override { return "\3"; }
};

class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / ("dicat_test_" + name + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    [[nodiscard]] std::filesystem::path operator/(const std::string& s) const { return path_ / s; }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

RunConfig small(RunKind kind) {
    RunConfig c;
    c.kind = kind;
    c.model.N = 2;
    c.model.n_max = 8;
    c.model.omegaz = 0.05;
    c.model.J = 1.0;
    c.model.g = 0.9;
    c.x = {-3.0, 3.0, 13};
    c.p = {-3.0, 3.0, 13};
    c.t_final = 1.0;
    c.samples = 6;
    c.trotter_steps = 3;
    c.u = {-3.0, 3.0, 61};
    c.phi = {-pi, pi, 19};
    c.instanton_samples = 21;
    return c;
}

std::vector<std::string> csv_header(const std::string& text) { return {text.substr(0, text.find('\n'))}; }

} // namespace

TEST(Csv, SeventeenDigitsRoundTrip) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::ldexp(mant(rng), ex(rng));
        EXPECT_EQ(parse_double(fmt(v)), v);
    }
    EXPECT_EQ(fmt(0.1), "0.10000000000000001");
    EXPECT_EQ(parse_double(" +2.5\r"), 2.5);
    EXPECT_THROW(parse_double("2,5"), ConfigError);
    EXPECT_THROW(parse_double(""), ConfigError);
}

TEST(Csv, OutputIgnoresTheGlobalLocale) {
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
    Csv c({"a", "b"});
    c.row({1234.5, -0.25});
    const RunConfig cfg = small(RunKind::wigner);
    const std::string e = echo(cfg);
    std::locale::global(saved);
    EXPECT_EQ(c.str(), "a,b\n1234.5,-0.25\n");
    EXPECT_EQ(parse_config(e), cfg);
}

TEST(Csv, PayloadHeaders) {
    WignerField w = wigner_direct(DensityMatrix::pure(photon_coherent(0.5, 6)), WignerGrid::square(2.0, 3));
    const std::string text = wigner_csv(w);
    EXPECT_EQ(csv_header(text)[0], "x,p,W");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
    EXPECT_EQ(text.substr(text.find('\n') + 1, 6), "-2,-2,");
}

TEST(Csv, DensityRoundTripIsExact) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    Matrix A(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) A(i, j) = cplx(n(rng), n(rng));
    const DensityMatrix rho(Matrix(A * A.adjoint() / (A * A.adjoint()).trace()));
    const DensityMatrix back = parse_density_csv(density_csv(rho));
    EXPECT_EQ(back.entries, rho.entries);
    EXPECT_THROW(parse_density_csv("a,b\n"), ConfigError);
    EXPECT_THROW(parse_density_csv("n,m,re,im\n0,0,1\n"), ConfigError);
}

TEST(Manifest, Sha256KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, ParsingAndErrors) {
    const KeyValues kv = parse_key_values("# comment\n model.N = 3  # trailing\n\nkind=quench\n");
    EXPECT_EQ(kv.size(), 2u);
    EXPECT_EQ(kv.at("model.N"), "3");
    const RunConfig c = parse_config("kind = quench\nmodel.N = 3\nprofile.couplings = 0.5, 1.5\n");
    EXPECT_EQ(c.kind, RunKind::quench);
    EXPECT_EQ(c.model.N, 3);
    EXPECT_EQ(c.couplings, (std::vector<double>{0.5, 1.5}));
    EXPECT_THROW(parse_config("model.Nq = 3\n"), ConfigError);
    EXPECT_THROW(parse_config("model.N\n"), ConfigError);
    EXPECT_THROW(parse_config("model.N = three\n"), ConfigError);
    EXPECT_THROW(parse_config("units.rates = MHz\n"), ConfigError);
    EXPECT_THROW(parse_config("kind = movie\n"), ConfigError);
    EXPECT_THROW(parse_config("model.N = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("wigner.route = guess\n"), ConfigError);
}

TEST(Config, EchoRoundTripsRandomConfigs) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    std::uniform_int_distribution<int> k(0, static_cast<int>(run_kind_names().size()) - 1);
    for (int trial = 0; trial < 50; ++trial) {
        RunConfig c;
        c.kind = run_kind_names()[static_cast<std::size_t>(k(rng))].first;
        c.model.N = 1 + trial % 6;
        c.model.n_max = 3 + trial % 10;
        c.model.omega0 = u(rng);
        c.model.omegaz = u(rng);
        c.model.J = u(rng);
        c.model.g = u(rng);
        c.noise = {trial % 2 == 0, 1e3 * u(rng), 1e3 * u(rng), 1e3 * u(rng), 1e-7 * u(rng)};
        c.eigen_tol = 1e-9 * u(rng);
        c.x = {-u(rng), u(rng), 11 + trial};
        c.t_final = u(rng);
        c.architecture = trial % 3 ? Architecture::star : Architecture::chain_swap;
        c.palindromic = trial % 4 != 0;
        c.couplings = {u(rng), u(rng)};
        c.state = "coherent:" + fmt(u(rng)) + "," + fmt(-u(rng));
        EXPECT_EQ(parse_config(echo(c)), c) << echo(c);
    }
}

TEST(Presets, ExpandToPinnedParameters) {
    for (const auto& name : preset_names()) {
        const RunConfig c = preset_config(name);
        EXPECT_EQ(c.preset, name);
        EXPECT_EQ(parse_config(echo(c)), c) << name;
        EXPECT_NO_THROW(check_resources(c)) << name;
    }
    const RunConfig f2 = preset_config("fig2");
    EXPECT_EQ(f2.model.N, 7);
    EXPECT_EQ(f2.model.n_max, 20);
    EXPECT_EQ(f2.model.J, 1.0);
    EXPECT_EQ(f2.model.omegaz, 0.05);
    EXPECT_EQ(f2.model.g, 0.9);
    EXPECT_EQ(f2.model.boundary, Boundary::open);
    const RunConfig f48 = preset_config("fig4_8");
    EXPECT_EQ(f48.model.N, 5);
    EXPECT_EQ(f48.trotter_steps, 15);
    EXPECT_EQ(f48.t_final, 5.0);
    EXPECT_EQ(f48.noise.kappa_hz, 1e3);
    EXPECT_EQ(f48.noise.gamma_phi_hz, 5e3);
    EXPECT_EQ(f48.noise.gamma_1_hz, 5e3);
    EXPECT_EQ(f48.noise.tau_rabi_s, 100e-9);
    EXPECT_THROW(preset_config("fig3"), ConfigError);
    // Keys after the preset override it.
    const RunConfig o = load_config("preset = fig4_8\nnoise.enabled = false\ntrotter.L = 4\n");
    EXPECT_FALSE(o.noise.enabled);
    EXPECT_EQ(o.trotter_steps, 4);
    EXPECT_EQ(o.model.N, 5);
}

TEST(Run, ResourceGuard) {
    RunConfig c = small(RunKind::noisy_trotter);
    c.memory_cap_mb = 1e-3;
    TempDir dir("guard");
    EXPECT_THROW(run(c, dir.path()), ConfigError);
    EXPECT_FALSE(std::filesystem::exists(dir / "manifest.json"));
    RunConfig big = preset_config("fig4_8");
    big.model.N = 9;
    EXPECT_THROW(check_resources(big), ConfigError);
}

TEST(Run, GroundStateBundleIsDeterministic) {
    TempDir a("gs_a"), b("gs_b");
    const RunConfig c = small(RunKind::ground_state);
    const ResultBundle ra = run(c, a.path());
    const ResultBundle rb = run(c, b.path());
    ASSERT_EQ(ra.files().size(), rb.files().size());
    for (std::size_t i = 0; i < ra.files().size(); ++i) {
        EXPECT_EQ(ra.files()[i].name, rb.files()[i].name);
        EXPECT_EQ(ra.files()[i].sha256, rb.files()[i].sha256) << ra.files()[i].name;
    }
    for (const char* f : {"config.txt", "spectrum.csv", "dm_mix.csv", "dm_plus.csv", "dm_minus.csv",
                          "wigner_mix.csv", "wigner_plus.csv", "wigner_minus.csv", "manifest.json"})
        EXPECT_TRUE(std::filesystem::exists(a / f)) << f;
    // The echoed config reproduces the run.
    EXPECT_EQ(parse_config(read_file(a / "config.txt")), c);
    const Json m = Json::parse(read_file(a / "manifest.json"));
    EXPECT_EQ(m["kind"], "ground_state");
    EXPECT_EQ(m["files"].size(), ra.files().size());
    EXPECT_EQ(m["files"][1]["sha256"], sha256_hex(read_file(a / "spectrum.csv")));
    EXPECT_LT(m["diagnostics"]["sectors"]["sector_identity_residual"].get<double>(), 1e-12);
    EXPECT_TRUE(m["timings_s"].contains("eigensolver"));
}

TEST(Run, SmallKindsEmitTheirPayloads) {
    const std::vector<std::pair<RunKind, std::vector<std::string>>> cases{
        {RunKind::quench, {"quench_trace.csv", "marginal_w.csv", "final_dm_plus.csv", "final_wigner_plus.csv"}},
        {RunKind::trotter, {"schedule.txt", "dm_plus.csv", "wigner_plus.csv"}},
        {RunKind::noisy_trotter, {"schedule.txt", "noisy_dm_plus.csv", "noisy_wigner_plus.csv"}},
        {RunKind::wigner, {"wigner.csv"}},
        {RunKind::free_energy, {"profile_dicke_0.csv", "profile_dicke_ising_0.csv"}},
        {RunKind::angular, {"angular_surface.csv", "stationary_phi.csv"}},
        {RunKind::schedule, {"schedule.txt"}},
    };
    for (const auto& [kind, files] : cases) {
        TempDir dir(to_string(kind));
        RunConfig c = small(kind);
        if (kind == RunKind::noisy_trotter) c.noise = {true, 1e3, 5e3, 5e3, 100e-9};
        const ResultBundle b = run(c, dir.path());
        for (const auto& f : files) EXPECT_NE(b.find(f), nullptr) << to_string(kind) << " " << f;
    }
    TempDir dir("instanton");
    RunConfig c = small(RunKind::instanton);
    c.couplings = {1.3};
    c.u = {-5.0, 5.0, 201};
    const ResultBundle b = run(c, dir.path());
    EXPECT_NE(b.find("instanton.csv"), nullptr);
    EXPECT_TRUE(b.diagnostics()["crosses_critical"].get<bool>());
    EXPECT_EQ(csv_header(read_file(dir / "instanton.csv"))[0], "tau,u");
}

TEST(Run, WignerStateSpecs) {
    EXPECT_NEAR(io::detail::parse_state("fock:2", 4).entries(2, 2).real(), 1.0, 0.0);
    EXPECT_NEAR(io::detail::parse_state("cat:1.5", 30).trace, 1.0, 1e-14);
    EXPECT_THROW(io::detail::parse_state("fock:9", 4), ConfigError);
    EXPECT_THROW(io::detail::parse_state("squeezed:1", 4), ConfigError);
    TempDir dir("state");
    const DensityMatrix rho = io::detail::parse_state("coherent:0.5,-0.2", 6);
    write_file(dir / "rho.csv", density_csv(rho));
    EXPECT_EQ(io::detail::parse_state("file:" + (dir / "rho.csv").string(), 6).entries, rho.entries);
}
