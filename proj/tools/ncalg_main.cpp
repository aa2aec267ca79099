// Command-line front end: seeded instance generation, solving, residual
// certification, cross-checks, and CSV/dump emission. Runs are batch and
// fully deterministic; reports are JSON on stdout and optionally on disk.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncalg/cli.hpp"

namespace {

void add_common(CLI::App* cmd, ncalg::JobConfig& cfg, std::string& orders) {
    cmd->add_option("--seed", cfg.seed, "instance seed");
    cmd->add_option("--dim", cfg.dim, "matrix dimension of the coefficient algebra");
    cmd->add_option("--orders", orders, "truncation orders, e.g. 6,6 or 16");
    cmd->add_option("--out", cfg.out_report, "report path (JSON)");
}

void apply_orders(ncalg::JobConfig& cfg, const std::string& orders) {
    if (orders.empty()) return;
    const auto comma = orders.find(',');
    cfg.order1 = std::stoi(orders.substr(0, comma));
    cfg.order2 = comma == std::string::npos ? cfg.order1 : std::stoi(orders.substr(comma + 1));
}

} // namespace

int main(int argc, char** argv) {
    ncalg::JobConfig cfg;

    // a config file provides defaults; explicit flags override it
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream is(argv[i + 1]);
            if (!is) {
                std::cerr << "cannot read config file: " << argv[i + 1] << "\n";
                return 3;
            }
            try {
                nlohmann::ordered_json j;
                is >> j;
                cfg = ncalg::JobConfig::from_json(j, cfg);
            } catch (const std::exception& e) {
                std::cerr << "bad config file: " << e.what() << "\n";
                return 3;
            }
        }
    }

    CLI::App app{"exact solvers and certificates for noncommutative integrable systems"};
    app.require_subcommand(0, 1);
    app.add_option("--config", "JSON config file; flags override its values")
        ->expected(1);

    std::string orders;

    auto* toda = app.add_subcommand("toda-solve", "solve a seeded two-dimensional lattice system "
                                                  "and certify its residuals");
    toda->add_option("--type", cfg.type, "system type A, B, or C");
    toda->add_option("--n", cfg.n, "system length (A) or half-length k (B, C)");
    toda->add_option("--degree", cfg.degree, "polynomial degree of the initial data");
    toda->add_option("--bundle", cfg.out_bundle, "solution bundle path");
    add_common(toda, cfg, orders);

    auto* liou = app.add_subcommand("liouville", "closed-form scalar-case solution and residual");
    liou->add_option("--degree", cfg.degree, "polynomial degree of the data");
    add_common(liou, cfg, orders);

    auto* vieta = app.add_subcommand("vieta", "left-root coefficient identities");
    vieta->add_option("--n", cfg.n, "number of roots");
    add_common(vieta, cfg, orders);

    auto* fact = app.add_subcommand("factorize", "kernel/factorization round trips");
    fact->add_option("--n", cfg.n, "operator order");
    fact->add_option("--degree", cfg.degree, "polynomial degree of the kernel data");
    add_common(fact, cfg, orders);

    auto* kp = app.add_subcommand("kp-check", "operator calculus and hierarchy flow identities");
    kp->add_option("--tail-depth", cfg.tail_depth, "reliable negative orders");
    add_common(kp, cfg, orders);

    auto* kdv = app.add_subcommand("kdv-soliton", "dressing-method solutions and certificates");
    kdv->add_option("--n", cfg.n, "soliton count");
    kdv->add_option("--tail-depth", cfg.tail_depth, "reliable negative orders");
    kdv->add_option("--csv", cfg.out_csv, "sample-grid CSV path");
    kdv->add_option("--radius", cfg.radius, "grid radius");
    kdv->add_option("--grid-steps", cfg.grid_steps, "grid steps per axis (negative: header only)");
    add_common(kdv, cfg, orders);

    auto* tau = app.add_subcommand("tau-check", "commutative determinant form comparison");
    tau->add_option("--n", cfg.n, "largest soliton count");
    add_common(tau, cfg, orders);

    auto* sech = app.add_subcommand("sech-check", "numeric 1-soliton profile comparison");
    sech->add_option("--alpha", cfg.alpha, "phase (rational literal)");
    sech->add_option("--a", cfg.amp, "amplitude (rational literal)");
    sech->add_option("--radius", cfg.radius, "argument radius of the grid");
    sech->add_option("--grid-steps", cfg.grid_steps, "grid steps per axis");
    sech->add_option("--tol", cfg.tol, "pass tolerance");
    add_common(sech, cfg, orders);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : {toda, liou, vieta, fact, kp, kdv, tau, sech})
        if (sub->parsed()) cfg.command = sub->get_name();
    if (cfg.command.empty()) {
        std::cerr << app.help();
        return 3;
    }
    try {
        apply_orders(cfg, orders);
    } catch (const std::exception&) {
        std::cerr << "bad --orders value\n";
        return 3;
    }

    const auto result = ncalg::run_job(cfg);
    std::cout << result.report.text();
    return result.exit_code;
}
