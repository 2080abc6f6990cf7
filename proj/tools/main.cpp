/**
 * @file main.cpp
 * @brief Command-line front end: `drinfeld <command> [modp-subcommand] [options]`
 *        printing one JSON report on stdout.
 *
 * Exit codes: 0 on success, 2 on invalid input, 3 when a computed value
 * disagrees with its prediction or an internal invariant is violated.
 * The environment variable DRINFELD_THREADS sets the sweep fan-out.
 */

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

unsigned threads_from_environment() {
    const char* s = std::getenv("DRINFELD_THREADS");
    if (!s) return 1;
    char* end = nullptr;
    long n = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || n < 1 || n > 256) return 1;
    return static_cast<unsigned>(n);
}

}  // namespace

int main(int argc, char** argv) {
    using drinfeld::report::RunConfig;
    RunConfig cfg;
    std::string command, sub;

    CLI::App app{"Exact computations on the Bruhat-Tits tree, integral lattices, residues and mod-p geometry"};
    app.set_config("--config", "", "key=value configuration file");
    app.add_option("command", command, "tree | lattice | local-dims | harmonic | residue | theta | identity-b | modp | sweep")
        ->required()
        ->check(CLI::IsMember(drinfeld::report::commands()));
    app.add_option("subcommand", sub, "for modp: degrees | sections | stable-lines | symgeom-check | b-forms")
        ->check(CLI::IsMember(drinfeld::report::modp_commands()));
    app.add_option("--p", cfg.p, "prime p of Q_p");
    app.add_option("--q", cfg.q, "residue field size q (modp)");
    app.add_option("--k", cfg.k, "symmetric power degree k (weight k+2 residues)");
    app.add_option("--i", cfg.i, "twist index i (modp symgeom-check, stable-lines)");
    app.add_option("--radius", cfg.radius, "truncation radius");
    app.add_option("--seed", cfg.seed, "seed for randomised sweeps");
    app.add_option("--samples", cfg.samples, "samples per sweep suite");
    app.add_flag("--audit", cfg.audit, "recompute residues with alternative transporters");
    app.add_option("--g", cfg.g, "weight-(k+2) section for residue");
    app.add_option("--f", cfg.f, "weight-(-k) section for theta");
    app.add_option("--kmax", cfg.kmax, "largest even k for the operator identity table");
    app.add_flag("--identity-b", cfg.identity_b, "theta: include the operator identity table up to --kmax");
    app.add_option("--vertex", cfg.vertex, "vertex level,offset (lattice; centre for tree)");
    auto* cv = app.add_option("--check-vertex", "theta: vertex level,offset for the integrality certificate");
    app.add_option("--mode", cfg.mode, "harmonic: all | khat | free | lattice");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (cv->count() > 0) cfg.check_vertex = cv->as<std::string>();
    if (command == "modp") cfg.modp_command = sub.empty() ? std::string("degrees") : sub;
    else if (!sub.empty()) {
        std::cerr << "error: a subcommand is only accepted by modp\n";
        return 2;
    }
    cfg.threads = threads_from_environment();

    try {
        auto report = drinfeld::report::run(command, cfg);
        std::cout << report.dump(2) << "\n";
        return report["pass"].get<bool>() ? 0 : 3;
    } catch (const drinfeld::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const drinfeld::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
