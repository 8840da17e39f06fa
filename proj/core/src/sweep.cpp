#include "algocool/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "algocool/errors.hpp"

namespace algocool {

namespace {

namespace fs = std::filesystem;

ProtocolPlan make_plan(Protocol kind, int qubits, int levels, double bw) {
    switch (kind) {
    case Protocol::PPA:
        return ProtocolPlan::ppa(qubits, bw);
    case Protocol::NOE2:
        return ProtocolPlan::noe2(bw);
    case Protocol::SR2:
        return ProtocolPlan::sr2(bw);
    case Protocol::XHBAC1:
        return ProtocolPlan::xhbac1(bw);
    case Protocol::SingleShot:
        return ProtocolPlan::single_shot(qubits, bw);
    case Protocol::ImprovedPPA:
        return ProtocolPlan::improved_ppa(qubits, bw);
    case Protocol::ImprovedXHBAC:
        return ProtocolPlan::improved_xhbac(bw, levels);
    }
    throw DomainError("unknown protocol");
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open " + p.string());
    f << content;
    f.flush();
    if (!f)
        throw std::runtime_error("write failed for " + p.string());
}

std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// Dimensionless inverse temperature of a qubit at ground population p.
double beta_final(double p) {
    const double clamped = std::min(1.0, std::max(0.0, p));
    return convert_qubit_param(clamped, QubitRepr::GroundPopulation,
                               QubitRepr::BetaOmega);
}

// The compression-step heat-to-entropy ratio of a sorting round, with x
// the target plus computational qubits and y the trailing reset pair.
std::optional<double> round_lr_comp(const ProtocolPlan& plan,
                                    const RoundRecord& r) {
    if (plan.kind() != Protocol::PPA || r.steps.empty())
        return std::nullopt;
    std::vector<int> x;
    for (int k = 0; k + 2 < plan.qubits(); ++k)
        x.push_back(k);
    if (x.empty())
        x.push_back(0);
    for (const StepRecord& s : r.steps)
        if (s.kind == StepKind::Control)
            return landauer_ratio_comp(s, plan.hamiltonian(), plan.beta(), x);
    return std::nullopt;
}

} // namespace

Metric parse_metric(const std::string& name) {
    if (name == "population")
        return Metric::Population;
    if (name == "cop")
        return Metric::Cop;
    if (name == "landauer")
        return Metric::Landauer;
    if (name == "lr_comp")
        return Metric::LrComp;
    throw DomainError("unknown metric: " + name);
}

Protocol parse_protocol(const std::string& name) {
    if (name == "ppa")
        return Protocol::PPA;
    if (name == "noe2")
        return Protocol::NOE2;
    if (name == "sr2")
        return Protocol::SR2;
    if (name == "xhbac1")
        return Protocol::XHBAC1;
    if (name == "single-shot")
        return Protocol::SingleShot;
    if (name == "improved-ppa")
        return Protocol::ImprovedPPA;
    if (name == "improved-xhbac")
        return Protocol::ImprovedXHBAC;
    throw DomainError("unknown protocol: " + name);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trace_csv(const CoolingTrace& trace, bool with_lr_comp) {
    std::string out =
        "round,p_t,beta_final_omega,work,dE_t,dE_m,dE_b,S_t,W_cum,K,R_L";
    if (with_lr_comp)
        out += ",r_L_comp";
    out += '\n';

    out += "0," + format_double(trace.p_target_initial) + ',' +
           format_double(beta_final(trace.p_target_initial)) + ",0,0,0,0," +
           format_double(trace.S_target_initial) + ",0,,";
    if (with_lr_comp)
        out += ',';
    out += '\n';

    const auto reports = efficiency_reports(trace);
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const RoundRecord& r = trace.rounds[i];
        out += std::to_string(r.round) + ',';
        out += format_double(r.p_target) + ',';
        out += format_double(beta_final(r.p_target)) + ',';
        out += format_double(r.work) + ',';
        out += format_double(r.dE_target) + ',';
        out += format_double(r.dE_machine) + ',';
        out += format_double(r.dE_bath) + ',';
        out += format_double(r.S_target) + ',';
        out += format_double(r.W_cum) + ',';
        out += cell(reports[i].K) + ',';
        out += cell(reports[i].R_L);
        if (with_lr_comp)
            out += ',' + cell(round_lr_comp(trace.plan, r));
        out += '\n';
    }
    return out;
}

std::vector<std::string> run_sweep(const SweepSpec& spec) {
    if (spec.rounds < 1)
        throw DomainError("rounds must be at least 1");
    if (spec.beta_omegas.empty())
        throw DomainError("at least one beta*omega value is required");
    if (spec.out_path.empty())
        throw DomainError("an output path is required");

    const bool with_lr =
        std::find(spec.metrics.begin(), spec.metrics.end(), Metric::LrComp) !=
        spec.metrics.end();

    std::vector<std::string> written;
    for (double bw : spec.beta_omegas) {
        ProtocolPlan plan =
            make_plan(spec.protocol, spec.qubits, spec.oscillator_levels, bw);
        CoolingTrace trace = run(plan, spec.rounds, std::nullopt, with_lr);

        fs::path p(spec.out_path);
        if (spec.beta_omegas.size() > 1) {
            const fs::path dir = p.parent_path();
            const std::string name =
                p.stem().string() + "_bw" + format_double(bw) +
                p.extension().string();
            p = dir.empty() ? fs::path(name) : dir / name;
        }
        if (!p.parent_path().empty())
            fs::create_directories(p.parent_path());
        write_file(p, trace_csv(trace, with_lr));
        written.push_back(p.string());
    }
    return written;
}

std::vector<std::string> write_figure(const std::string& figure_id,
                                      const std::string& out_dir) {
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    fs::create_directories(dir);
    std::vector<std::string> written;

    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path p = dir / name;
        write_file(p, content);
        written.push_back(p.string());
    };

    // K or R_L against the running target inverse temperature.
    auto performance_csv = [](const ProtocolPlan& plan, bool landauer) {
        const CoolingTrace t = run(plan, 50, std::nullopt, false);
        const auto reps = efficiency_reports(t);
        std::string csv =
            std::string("beta_final_omega,") + (landauer ? "R_L" : "K") + "\n";
        for (std::size_t i = 0; i < t.rounds.size(); ++i)
            csv += format_double(beta_final(t.rounds[i].p_target)) + ',' +
                   cell(landauer ? reps[i].R_L : reps[i].K) + '\n';
        return csv;
    };

    struct Curve {
        const char* name;
        ProtocolPlan plan;
    };
    auto standard_set = [](double bw) {
        return std::vector<Curve>{{"ppa3", ProtocolPlan::ppa(3, bw)},
                                  {"ppa4", ProtocolPlan::ppa(4, bw)},
                                  {"ppa5", ProtocolPlan::ppa(5, bw)},
                                  {"ppa6", ProtocolPlan::ppa(6, bw)},
                                  {"noe2", ProtocolPlan::noe2(bw)},
                                  {"sr2", ProtocolPlan::sr2(bw)},
                                  {"xhbac1", ProtocolPlan::xhbac1(bw)}};
    };
    const double comparison_baths[] = {0.5, 1.0, 2.0};

    if (figure_id == "fig2") {
        for (int n : {1, 2, 3, 4, 5, 9, 10}) {
            std::string csv = "p,q_max\n";
            for (int i = 0; i <= 50; ++i) {
                const double p = (50.0 + i) / 100.0;
                csv += format_double(p) + ',' + format_double(q_max(n, p)) +
                       '\n';
            }
            emit("fig2_n" + std::to_string(n) + ".csv", csv);
        }
    } else if (figure_id == "fig4") {
        for (int n : {3, 4, 5, 6}) {
            const CoolingTrace t =
                run(ProtocolPlan::ppa(n, 1.0), 50, std::nullopt, false);
            std::string csv = "beta_final_omega,k\n";
            for (const RoundRecord& r : t.rounds)
                csv += format_double(beta_final(r.p_target)) + ',' +
                       cell(cop(r.work, r.dE_target)) + '\n';
            emit("fig4_ppa" + std::to_string(n) + ".csv", csv);
        }
    } else if (figure_id == "fig5" || figure_id == "fig8") {
        const bool landauer = figure_id == "fig8";
        for (double bw : comparison_baths)
            for (const Curve& c : standard_set(bw))
                emit(figure_id + "_bw" + format_double(bw) + "_" + c.name +
                         ".csv",
                     performance_csv(c.plan, landauer));
    } else if (figure_id == "fig6") {
        for (int n : {4, 5, 6}) {
            const ProtocolPlan plan = ProtocolPlan::ppa(n, 1.0);
            const CoolingTrace t = run(plan, 50, std::nullopt, true);
            std::string csv = "round,r_L_comp\n";
            for (const RoundRecord& r : t.rounds)
                csv += std::to_string(r.round) + ',' +
                       cell(round_lr_comp(plan, r)) + '\n';
            emit("fig6_ppa" + std::to_string(n) + ".csv", csv);
        }
    } else if (figure_id == "fig7") {
        for (const Curve& c : standard_set(6.0))
            emit(std::string("fig7_") + c.name + ".csv",
                 performance_csv(c.plan, false));
        emit("fig7_ppa4_asymptote.csv", "beta_final_omega\n24\n");
    } else if (figure_id == "fig9") {
        const std::pair<int, int> pairs[] = {{3, 3}, {4, 5}, {5, 9}};
        for (const auto& [orig, improved] : pairs) {
            emit("fig9_ppa" + std::to_string(orig) + ".csv",
                 performance_csv(ProtocolPlan::ppa(orig, 1.0), false));
            emit("fig9_improved_ppa" + std::to_string(improved) + ".csv",
                 performance_csv(ProtocolPlan::improved_ppa(improved, 1.0),
                                 false));
        }
    } else {
        throw DomainError("unknown figure: " + figure_id);
    }
    return written;
}

CoolingLimitReport cooling_limit_report(Protocol kind, int n,
                                        double beta_omega, double tol,
                                        int max_rounds) {
    switch (kind) {
    case Protocol::PPA:
    case Protocol::NOE2:
    case Protocol::SR2:
    case Protocol::XHBAC1:
    case Protocol::ImprovedPPA:
        break;
    default:
        throw DomainError("no asymptotic report for this protocol");
    }
    const ProtocolPlan plan = make_plan(kind, n, 64, beta_omega);
    const double alpha = protocol_alpha(kind, plan.qubits());
    const double eps_b = std::tanh(0.5 * beta_omega);
    const double eps_inf = unified_limit(eps_b, alpha);

    const DiagonalState s = asymptotic_state(plan, tol, max_rounds);
    const double p_sim = s.probs().head(s.dim() / 2).sum();
    const double eps_sim = 2.0 * p_sim - 1.0;

    return {kind,    plan.qubits(),          beta_omega,
            alpha,   eps_inf,                2.0 * std::atanh(eps_inf),
            eps_sim, std::abs(eps_sim - eps_inf)};
}

std::string format_cooling_limit(const CoolingLimitReport& r) {
    std::string out = std::string("protocol=") + protocol_name(r.protocol);
    if (r.protocol == Protocol::PPA || r.protocol == Protocol::ImprovedPPA)
        out += " n=" + std::to_string(r.qubits);
    out += " beta_omega=" + format_double(r.beta_omega);
    out += " alpha=" + format_double(r.alpha);
    out += " eps_inf=" + format_double(r.eps_inf);
    out += " beta_inf_omega=" + format_double(r.beta_inf_omega);
    out += " simulated_eps=" + format_double(r.eps_simulated);
    out += " delta=" + format_double(r.delta);
    return out;
}

} // namespace algocool
