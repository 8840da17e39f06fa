// Command-line front end: protocol sweeps, figure datasets, cooling limits.
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "algocool/errors.hpp"
#include "algocool/protocols.hpp"
#include "algocool/sweep.hpp"

namespace {

int dispatch(const CLI::App& sim, const CLI::App& fig, const CLI::App& lim,
             const algocool::SweepSpec& spec,
             const std::vector<std::string>& metric_names,
             const std::string& figure_id, const std::string& figure_dir,
             const std::string& limit_protocol, int limit_qubits,
             double limit_bath, double tol, int max_rounds) {
    if (sim.parsed()) {
        algocool::SweepSpec resolved = spec;
        for (const std::string& m : metric_names)
            resolved.metrics.push_back(algocool::parse_metric(m));
        if (resolved.beta_omegas.empty())
            resolved.beta_omegas.push_back(1.0);
        for (const std::string& path : algocool::run_sweep(resolved))
            std::cout << path << '\n';
        return 0;
    }
    if (fig.parsed()) {
        for (const std::string& path :
             algocool::write_figure(figure_id, figure_dir))
            std::cout << path << '\n';
        return 0;
    }
    if (lim.parsed()) {
        const algocool::CoolingLimitReport report =
            algocool::cooling_limit_report(
                algocool::parse_protocol(limit_protocol), limit_qubits,
                limit_bath, tol, max_rounds);
        std::cout << algocool::format_cooling_limit(report) << '\n';
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and analysis of algorithmic cooling protocols"};
    app.require_subcommand(1);

    algocool::SweepSpec spec;
    spec.beta_omegas.clear();
    std::vector<std::string> metric_names;
    std::string protocol_name = "ppa";

    CLI::App* sim = app.add_subcommand(
        "simulate", "Run a protocol and write per-round CSV records");
    sim->add_option("--protocol", protocol_name,
                    "ppa|noe2|sr2|xhbac1|single-shot|improved-ppa|"
                    "improved-xhbac")
        ->required();
    sim->add_option("--qubits", spec.qubits,
                    "Register size for ppa, single-shot, improved-ppa");
    sim->add_option("--beta-omega", spec.beta_omegas,
                    "Bath beta*omega (repeatable; default 1)");
    sim->add_option("--rounds", spec.rounds, "Number of cooling rounds")
        ->required();
    sim->add_option("--metric", metric_names,
                    "population|cop|landauer|lr_comp (repeatable)");
    sim->add_option("--out", spec.out_path, "Output CSV path")->required();

    std::string figure_id;
    std::string figure_dir = ".";
    CLI::App* fig =
        app.add_subcommand("figure", "Write the dataset for a named figure");
    fig->add_option("id", figure_id, "fig2|fig4|fig5|fig6|fig7|fig8|fig9")
        ->required();
    fig->add_option("--out", figure_dir, "Output directory (default .)");

    std::string limit_protocol;
    int limit_qubits = 3;
    double limit_bath = 1.0;
    double tol = 1e-12;
    int max_rounds = 10000;
    CLI::App* lim = app.add_subcommand(
        "cooling-limit",
        "Report the asymptotic polarization of a fixed-point protocol");
    lim->add_option("--protocol", limit_protocol,
                    "ppa|noe2|sr2|xhbac1|improved-ppa")
        ->required();
    lim->add_option("--qubits", limit_qubits,
                    "Register size for ppa, improved-ppa");
    lim->add_option("--beta-omega", limit_bath, "Bath beta*omega");
    lim->add_option("--tol", tol, "Fixed-point detection tolerance");
    lim->add_option("--max-rounds", max_rounds,
                    "Round budget before giving up");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed())
            spec.protocol = algocool::parse_protocol(protocol_name);
        return dispatch(*sim, *fig, *lim, spec, metric_names, figure_id,
                        figure_dir, limit_protocol, limit_qubits, limit_bath,
                        tol, max_rounds);
    } catch (const algocool::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
