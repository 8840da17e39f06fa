#pragma once

#include <string>
#include <vector>

#include "algocool/analytics.hpp"
#include "algocool/thermo.hpp"

namespace algocool {

enum class Metric { Population, Cop, Landauer, LrComp };

// Parses "population" | "cop" | "landauer" | "lr_comp".
Metric parse_metric(const std::string& name);

// Parses "ppa" | "noe2" | "sr2" | "xhbac1" | "single-shot" |
// "improved-ppa" | "improved-xhbac".
Protocol parse_protocol(const std::string& name);

struct SweepSpec {
    Protocol protocol = Protocol::PPA;
    int qubits = 3;             // register size where the protocol has one
    int oscillator_levels = 64; // qubit+oscillator protocol only
    std::vector<double> beta_omegas{1.0};
    int rounds = 1;
    std::vector<Metric> metrics;
    std::string out_path;
};

// Shortest round-trip decimal formatting; locale-free.
std::string format_double(double v);

// CSV rows for a trace: header
//   round,p_t,beta_final_omega,work,dE_t,dE_m,dE_b,S_t,W_cum,K,R_L
// plus a trailing r_L_comp column when requested. The round-0 row is the
// initial state; undefined ratios are empty cells, never NaN.
std::string trace_csv(const CoolingTrace& trace, bool with_lr_comp);

// Runs the sweep, writing one CSV per bath temperature. A single
// temperature writes exactly spec.out_path; several insert _bw<value>
// before the extension. Returns the written paths.
std::vector<std::string> run_sweep(const SweepSpec& spec);

// Emits the named figure dataset (fig2, fig4, fig5, fig6, fig7, fig8,
// fig9) as one CSV per curve under out_dir; returns the written paths.
std::vector<std::string> write_figure(const std::string& figure_id,
                                      const std::string& out_dir);

struct CoolingLimitReport {
    Protocol protocol;
    int qubits;
    double beta_omega;
    double alpha;
    double eps_inf;
    double beta_inf_omega; // 2 atanh(eps_inf); +inf at full polarization
    double eps_simulated;  // from the round-iterated fixed point
    double delta;          // |eps_simulated - eps_inf|
};

CoolingLimitReport cooling_limit_report(Protocol kind, int n,
                                        double beta_omega, double tol = 1e-12,
                                        int max_rounds = 10000);

std::string format_cooling_limit(const CoolingLimitReport& r);

} // namespace algocool
