#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algocool/channels.hpp"

namespace algocool {

enum class Protocol {
    PPA,           // sort compression + reset of the last two qubits
    NOE2,          // complete mixing of qubit 2 + pair relaxation
    SR2,           // flip of qubit 2 + pair relaxation + qubit-2 reset
    XHBAC1,        // target flip + beta-swap
    SingleShot,    // one sort compression, no bath contact
    ImprovedPPA,   // energy-ordered compression + reset of warm qubits
    ImprovedXHBAC, // qubit + oscillator energy-ordered compression
};

const char* protocol_name(Protocol p);

// Iteration ran out of rounds before reaching the requested tolerance;
// carries the most recent state.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, DiagonalState last);
    const DiagonalState& last_state() const { return last_; }

private:
    DiagonalState last_;
};

// Immutable description of a protocol instance. The target subsystem is
// always the first one. Register sizes are capped at 14 qubits worth of
// states unless the ALGOCOOL_MAX_QUBITS environment variable raises it.
class ProtocolPlan {
public:
    static ProtocolPlan ppa(int n, double beta_omega, double omega = 1.0);
    static ProtocolPlan noe2(double beta_omega, double omega = 1.0);
    static ProtocolPlan sr2(double beta_omega, double omega = 1.0);
    static ProtocolPlan xhbac1(double beta_omega, double omega = 1.0);
    static ProtocolPlan single_shot(int n, double beta_omega,
                                    double omega = 1.0);
    static ProtocolPlan improved_ppa(int n, double beta_omega,
                                     double omega = 1.0);
    static ProtocolPlan improved_xhbac(double beta_omega, int levels = 64,
                                       double omega = 1.0);

    Protocol kind() const { return kind_; }
    int qubits() const { return qubits_; }
    int oscillator_levels() const { return levels_; }
    double beta_omega() const { return beta_omega_; }
    double omega() const { return omega_; }
    double beta() const { return beta_omega_ / omega_; }
    const std::vector<int>& dims() const { return dims_; }
    const DiagonalHamiltonian& hamiltonian() const { return hamiltonian_; }
    int target() const { return 0; }

    // All-thermal register at the bath temperature.
    DiagonalState initial_state() const;

private:
    ProtocolPlan(Protocol kind, int qubits, int levels, double beta_omega,
                 double omega, std::vector<int> dims,
                 DiagonalHamiltonian hamiltonian);

    Protocol kind_;
    int qubits_;
    int levels_;
    double beta_omega_;
    double omega_;
    std::vector<int> dims_;
    DiagonalHamiltonian hamiltonian_;
};

struct Step {
    StepKind kind;
    std::string label;
    TransitionMatrix op;
};

// The steps of one round, in order. State-dependent compressions are
// rebuilt from `current`; every thermalization step preserves the bath
// Gibbs state of the plan's Hamiltonian.
std::vector<Step> round_steps(const ProtocolPlan& plan,
                              const DiagonalState& current);

struct StepRecord {
    StepKind kind;
    std::string label;
    DiagonalState pre;
    DiagonalState post;
    double dE_system;  // full-register energy change
    double dE_target;  // target subsystem energy change
    double dE_machine; // non-target subsystems energy change
    double work;       // dE_system on control steps, 0 on thermalization
    double dE_bath;    // -dE_system on thermalization steps, 0 on control
    // True when pre/post were rebuilt as fixed-point + deviation, so their
    // entries carry quantization of order one ulp of the absolute
    // populations; differences below that scale are not resolvable.
    bool reconstructed = false;
};

struct RoundRecord {
    int round; // 1-based
    DiagonalState state;
    double p_target;   // target ground population
    double S_target;   // target entropy, nats
    double work;       // sum of control-step work this round
    double dE_target;
    double dE_machine;
    double dE_bath;    // energy delivered to the bath this round
    double dS_target;  // target entropy change this round, evaluated
                       // in a cancellation-free form
    double W_cum;
    double dE_target_cum;
    double heat_cum;   // cumulative dE_bath
    bool renormalized; // drift exceeded 1e-12 and was renormalized
    double drift;
    std::vector<StepRecord> steps; // empty when record_steps is false
};

struct CoolingTrace {
    ProtocolPlan plan;
    DiagonalState initial;
    double p_target_initial;
    double S_target_initial;
    std::vector<RoundRecord> rounds;
};

// Runs `n_rounds` >= 1 rounds from `initial` (default: all-thermal).
// PPA(3) and NOE2 iterate the deviation from their analytic fixed point
// so per-round work and energy flows keep full relative accuracy
// arbitrarily close to convergence; recorded states are absolute.
CoolingTrace run(const ProtocolPlan& plan, int n_rounds,
                 std::optional<DiagonalState> initial = std::nullopt,
                 bool record_steps = true);

// True when `run` iterates the plan in deviation coordinates, so the
// per-round ledger keeps full relative accuracy at any distance from the
// fixed point (otherwise round deltas bottom out near 1 ulp of the
// absolute populations).
bool deviation_tracked(const ProtocolPlan& plan);

// Iterates rounds until the sup-norm round increment is <= tol.
// Throws ConvergenceError (carrying the last state) past max_rounds.
DiagonalState asymptotic_state(const ProtocolPlan& plan, double tol = 1e-12,
                               int max_rounds = 10000);

// Analytic asymptotic target ground population, where the protocol has
// a closed-form fixed point (PPA, NOE2, SR2, XHBAC1, ImprovedPPA).
double fixed_point_target(const ProtocolPlan& plan);

// 2x2 left-stochastic matrix of the round map restricted to the target,
// extracted by running one round on basis target states with a thermal
// machine.
Eigen::Matrix2d reduced_target_matrix(const ProtocolPlan& plan);

struct SingleShotResult {
    double q;    // target ground population after compression
    double work; // energy injected by the permutation
    DiagonalState post;
};

// Sorts the product of n identical (p, 1-p) qubits; p in [1/2, 1].
SingleShotResult single_shot_compress(int n, double p);

struct ImprovedXhbacResult {
    CoolingTrace trace;
    double work;
    double dE_target;
    double K;         // (-dE_target) / work of the single round
    double tail_mass; // weight discarded by the oscillator truncation
};

// One qubit + Y-level oscillator round (Y >= 4, beta*omega > 0).
ImprovedXhbacResult improved_xhbac_run(double beta_omega, int levels = 64);

} // namespace algocool
