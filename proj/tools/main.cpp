// gue_lab command-line front end.
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

// SEED is consulted only when neither the flag nor the config file set one.
bool seed_from_env(gue_lab::cli::RunConfig& cfg) {
    const char* env = std::getenv("SEED");
    if (env == nullptr || *env == '\0') return true;
    try {
        std::size_t used = 0;
        const std::string s(env);
        if (s.front() == '-') return false;
        cfg.seed = std::stoull(s, &used, 10);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace gue_lab::cli;
    RunConfig cfg;

    CLI::App app{"Monte Carlo and exact checks for GUE characteristic polynomials", "gue_lab"};
    app.set_version_flag("--version", std::string(GUE_LAB_VERSION));
    app.set_config("--config", "", "Flat key=value file mirroring the flags; flags take precedence");
    app.allow_config_extras(false);
    app.require_subcommand(1);

    std::size_t n = 0;
    std::size_t reps = 0;
    int kmax = 0;
    auto* opt_n = app.add_option("--n", n, "Matrix size N");
    auto* opt_reps = app.add_option("--reps", reps, "Monte Carlo replicates");
    auto* opt_seed = app.add_option("--seed", cfg.seed, "Master seed (default: $SEED, then 7)");
    app.add_option("--alpha", cfg.alpha, "Mesoscopic exponent, d_N = N^alpha")->capture_default_str();
    app.add_option("--eta", cfg.eta, "Regularization eta > 0")->capture_default_str();
    app.add_option("--x0", cfg.x0, "Reference point in (-1, 1)")->capture_default_str();
    auto* opt_kmax = app.add_option("--kmax", kmax, "Highest Chebyshev order");
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app.add_option("--format", cfg.format, "Table format: csv or json")->capture_default_str();
    app.add_flag("--gnuplot", cfg.gnuplot, "Also write a gnuplot script (csv format)");
    bool serial = false;
    app.add_flag("--serial", serial, "Disable OpenMP parallel loops");

    const std::pair<const char*, const char*> subs[] = {
        {"macro", "Chebyshev coefficients of D_N and the a_{n,N} CLT"},
        {"meso", "Mesoscopic increments W_N(tau) against the B_0 covariance"},
        {"whitenoise", "Smeared Fourier coefficients against the white-noise limit"},
        {"oracle", "Exact finite-N moments of Tr T_k against Monte Carlo"},
        {"identities", "Deterministic identity validators"},
        {"verify-all", "Full acceptance suite; writes one JSON summary"},
    };
    for (const auto& [name, desc] : subs) {
        app.add_subcommand(name, desc)->fallthrough()->callback([&cfg, name = std::string(name)] { cfg.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    if (opt_n->count() > 0) cfg.n = n;
    if (opt_reps->count() > 0) cfg.reps = reps;
    if (opt_kmax->count() > 0) cfg.kmax = kmax;
    if (opt_seed->count() == 0 && !seed_from_env(cfg)) {
        std::cerr << "error: SEED must be a non-negative integer\n";
        return kExitBadConfig;
    }
    cfg.parallel = !serial;

    try {
        return run_command(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
}
