#pragma once

#include <optional>
#include <vector>

#include "algocool/protocols.hpp"

namespace algocool {

// Coefficient of performance (-dE_target)/work. Positive work gives the
// plain ratio; free cooling (work <= 0, energy still extracted) is +inf;
// anything else has no defined value.
std::optional<double> cop(double work, double dE_target);

// beta*(dE_bath + dE_machine)/(-dS_target); defined only when the target
// entropy strictly decreased.
std::optional<double> landauer_ratio(double beta, double dE_bath,
                                     double dE_machine, double dS_target);

// Same ratio through the performance route
// (-beta*dE_target/(-dS_target)) * (1/K + 1); exact whenever the machine
// returns to its thermal state each round.
std::optional<double> landauer_ratio_from_cop(double beta, double dE_target,
                                              double dS_target,
                                              std::optional<double> K);

// Per-round and cumulative efficiency figures; std::nullopt marks a
// ratio with no defined value this round (never NaN). For protocols
// simulated in absolute coordinates, r_L is also undefined on rounds
// whose entropy drop is below the 1e-12 resolution floor.
struct EfficiencyReport {
    int round;
    std::optional<double> k;   // per-round CoP
    std::optional<double> K;   // cumulative CoP
    std::optional<double> r_L; // per-round heat-to-entropy ratio
    std::optional<double> R_L; // cumulative heat-to-entropy ratio
};

std::vector<EfficiencyReport> efficiency_reports(const CoolingTrace& trace);

// beta * dE_y / (-dS_x) across one recorded step, with x the retained
// block and y its complement. The entropy drop is evaluated
// difference-first so it keeps relative accuracy at any step size.
// nullopt when S(x) did not strictly drop, or (for reconstructed
// records) when the drop is below their 1e-6 quantization floor.
std::optional<double> landauer_ratio_comp(const StepRecord& step,
                                          const DiagonalHamiltonian& h,
                                          double beta,
                                          const std::vector<int>& x_subsystems);

// Energy-entropy balance of an entropy-preserving step applied to a
// product state whose y block is thermal:
//   beta*dE_y = -dS_x + I(x':y') + D(rho_y' || rho_y).
struct DrivenBalance {
    double dE_y;
    double dS_x;
    double mutual_info; // I(x':y') after the step
    double excess;      // D(rho_y' || rho_y)
    double residual;    // beta*dE_y + dS_x - mutual_info - excess
};
DrivenBalance verify_lp_driven(const DiagonalState& pre,
                               const DiagonalState& post,
                               const std::vector<int>& x_subsystems,
                               const DiagonalHamiltonian& h, double beta);

// Unconditional balance of any step against the bath Gibbs state:
//   -beta*dE = -dS + D(pre || gibbs) - D(post || gibbs).
struct ThermalizationBalance {
    double dE;
    double dS;
    double d_pre;
    double d_post;
    double residual; // -beta*dE + dS - d_pre + d_post
};
ThermalizationBalance verify_lp_thermalization(const DiagonalState& pre,
                                               const DiagonalState& post,
                                               const DiagonalHamiltonian& h,
                                               double beta);

// Cooling-cost lower bound across one step from a product pre-state with
// thermal y: when x is cooled by a trace distance eps_x <= 1/(2e),
//   beta*dE_y / (-dS_x) >= 1 + (gamma_y^2 + lambda_xy^2)
//                              / (eps_x * log(d_x / (2 eps_x))).
struct CoolingBoundCheck {
    bool applicable; // eps_x in (0, 1/(2e)] and dS_x < 0
    double lhs;
    double rhs;
    double slack; // lhs - rhs
    double eps_x;
    double gamma_y;
    double lambda_xy;
};
CoolingBoundCheck theorem2_bound(const DiagonalState& pre,
                                 const DiagonalState& post,
                                 const std::vector<int>& x_subsystems,
                                 const DiagonalHamiltonian& h, double beta);

} // namespace algocool
