// dicat: command-line front end
//
//   dicat <kind> [--config PATH] [--preset NAME] [--out DIR] [--threads K] [--tolerance X]
//   dicat run    --config PATH | --preset NAME ...
//
// Exit codes: 0 success, 2 configuration error, 3 convergence failure, 1 other errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dicat/io/run.hpp"

namespace {

struct Flags {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<int> threads;
    std::optional<double> tolerance;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key = value configuration file");
    cmd->add_option("--preset", f.preset, "named figure preset")->check([](const std::string& s) {
        for (const auto& n : dicat::io::preset_names())
            if (n == s) return std::string();
        return "unknown preset '" + s + "'";
    });
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker threads for Wigner grids")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", f.tolerance, "eigensolver and propagator tolerance")->check(CLI::PositiveNumber);
}

dicat::io::RunConfig resolve(const Flags& f, std::optional<dicat::io::RunKind> kind) {
    using namespace dicat::io;
    KeyValues kv;
    if (!f.config.empty()) kv = parse_key_values(read_file(f.config));
    std::string preset = f.preset;
    if (preset.empty())
        if (const auto it = kv.find("preset"); it != kv.end()) preset = it->second;
    kv.erase("preset");
    RunConfig cfg;
    if (!preset.empty()) cfg = preset_config(preset);
    if (kind && !preset.empty() && cfg.kind != *kind &&
        !(cfg.kind == RunKind::trotter && *kind == RunKind::noisy_trotter))
        throw dicat::ConfigError("preset '" + preset + "' is a " + to_string(cfg.kind) + " run");
    if (kind) cfg.kind = *kind;
    apply_keys(cfg, kv);
    if (kind) cfg.kind = *kind;
    if (f.threads) cfg.threads = *f.threads;
    if (f.tolerance) {
        cfg.eigen_tol = *f.tolerance;
        cfg.evolve_tol = *f.tolerance;
    }
    if (!kind && f.config.empty() && preset.empty())
        throw dicat::ConfigError("run needs --config or --preset");
    validate(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dicke-Ising cat-state emulator"};
    app.require_subcommand(1);
    Flags flags;
    std::optional<dicat::io::RunKind> kind;

    CLI::App* run_cmd = app.add_subcommand("run", "run the kind named in the config or preset");
    add_flags(run_cmd, flags);
    run_cmd->callback([&] { kind.reset(); });
    for (const auto& [k, name] : dicat::io::run_kind_names()) {
        CLI::App* cmd = app.add_subcommand(name, "run kind " + name);
        add_flags(cmd, flags);
        cmd->callback([&kind, k = k] { kind = k; });
    }
    app.add_subcommand("presets", "list the figure presets")->callback([] {
        for (const auto& n : dicat::io::preset_names()) std::cout << n << '\n';
        std::exit(0);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const dicat::io::RunConfig cfg = resolve(flags, kind);
        const std::string out =
            flags.out.empty() ? "out/" + (cfg.preset.empty() ? dicat::io::to_string(cfg.kind) : cfg.preset) : flags.out;
        const dicat::io::ResultBundle b = dicat::io::run(cfg, out);
        std::cout << "wrote " << b.files().size() << " files and manifest.json to " << out << '\n';
        return 0;
    } catch (const dicat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const dicat::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
