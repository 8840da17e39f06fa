#include "algocool/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "algocool/errors.hpp"

namespace algocool {

namespace {

int max_register_qubits() {
    if (const char* env = std::getenv("ALGOCOOL_MAX_QUBITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 62)
            return static_cast<int>(v);
    }
    return 14;
}

long max_register_dim() { return 1L << max_register_qubits(); }

void check_register_size(int n, int minimum, const char* what) {
    if (n < minimum)
        throw DomainError(std::string(what) + " requires at least " +
                          std::to_string(minimum) + " qubits");
    if (n > 62 || (1L << n) > max_register_dim())
        throw DomainError("register exceeds the qubit cap; set "
                          "ALGOCOOL_MAX_QUBITS to raise it");
}

void check_bath(double beta_omega, double omega) {
    if (std::isnan(beta_omega) || !std::isfinite(beta_omega) || beta_omega < 0.0)
        throw DomainError("beta*omega must be finite and nonnegative");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw DomainError("omega must be finite and positive");
}

double ground_pop(double beta_omega) {
    return 1.0 / (1.0 + std::exp(-beta_omega));
}

// Target-local and machine-local energy of every basis state; keeping the
// two parts separate makes the per-step ledger close exactly.
struct EnergySplit {
    Eigen::VectorXd target;
    Eigen::VectorXd machine;
};

EnergySplit split_energies(const DiagonalHamiltonian& h) {
    const auto& dims = h.dims();
    const auto& locals = h.locals();
    const auto strides = mixed_radix_strides(dims);
    const long n = h.dim();
    EnergySplit es{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    for (long i = 0; i < n; ++i) {
        es.target[i] = locals[0][digit_at(i, 0, strides, dims)];
        double m = 0.0;
        for (std::size_t k = 1; k < dims.size(); ++k)
            m += locals[k][digit_at(i, static_cast<int>(k), strides, dims)];
        es.machine[i] = m;
    }
    return es;
}

void check_preserves_bath(const TransitionMatrix& op,
                          const Eigen::VectorXd& rho_th) {
    double err = (op.apply(rho_th) - rho_th).lpNorm<Eigen::Infinity>();
    if (!(err < 1e-10))
        throw PreconditionError(
            "thermalization step does not preserve the bath state");
}

bool deviation_eligible(const ProtocolPlan& plan) {
    return (plan.kind() == Protocol::PPA && plan.qubits() == 3) ||
           plan.kind() == Protocol::NOE2;
}

// Exact fixed point of the round map, used as the reference state for
// deviation-coordinate iteration.
Eigen::VectorXd analytic_fixed_point(const ProtocolPlan& plan) {
    const double bw = plan.beta_omega();
    const double p2 = 1.0 / (1.0 + std::exp(-2.0 * bw));
    if (plan.kind() == Protocol::PPA) {
        Eigen::VectorXd f =
            product(thermal_qubit(bw), thermal_qubit(bw)).probs();
        Eigen::VectorXd s(8);
        for (int j = 0; j < 4; ++j) {
            s[j] = p2 * f[j];
            s[4 + j] = (1.0 - p2) * f[j];
        }
        return s;
    }
    Eigen::VectorXd s(4);
    s << 0.5 * p2, 0.5 * p2, 0.5 * (1.0 - p2), 0.5 * (1.0 - p2);
    return s;
}

// Partial sums of a normalized vector can overshoot [0, 1] by a few ulp.
double unit_clamp(double x) {
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

struct RoundTally {
    double work = 0.0;
    double dE_target = 0.0;
    double dE_machine = 0.0;
    double dE_bath = 0.0;
    std::vector<StepRecord> steps;
};

CoolingTrace run_absolute(const ProtocolPlan& plan, int n_rounds,
                          const DiagonalState& initial, bool record_steps) {
    const EnergySplit es = split_energies(plan.hamiltonian());
    const Eigen::VectorXd rho_th =
        thermal_state(plan.hamiltonian(), plan.beta()).probs();
    const long half = initial.dim() / 2;

    CoolingTrace trace{plan, initial,
                       unit_clamp(initial.probs().head(half).sum()), 0.0, {}};
    trace.S_target_initial = binary_entropy(trace.p_target_initial);
    trace.rounds.reserve(static_cast<std::size_t>(n_rounds));

    Eigen::VectorXd cur = initial.probs();
    double q_prev = unit_clamp(cur.tail(half).sum());
    double W_cum = 0.0, dEt_cum = 0.0, heat_cum = 0.0;

    for (int r = 1; r <= n_rounds; ++r) {
        auto steps = round_steps(plan, DiagonalState(cur, plan.dims()));
        RoundTally tally;
        for (auto& st : steps) {
            if (st.kind == StepKind::Thermalization)
                check_preserves_bath(st.op, rho_th);
            Eigen::VectorXd post = st.op.apply(cur);
            Eigen::VectorXd diff = post - cur;
            double t = es.target.dot(diff);
            double m = es.machine.dot(diff);
            double sys = t + m;
            double w = st.kind == StepKind::Control ? sys : 0.0;
            double b = st.kind == StepKind::Thermalization ? -sys : 0.0;
            tally.work += w;
            tally.dE_target += t;
            tally.dE_machine += m;
            tally.dE_bath += b;
            if (record_steps)
                tally.steps.push_back({st.kind, st.label,
                                       DiagonalState(cur, plan.dims()),
                                       DiagonalState(post, plan.dims()),
                                       sys, t, m, w, b});
            cur = std::move(post);
        }
        double drift = std::abs(cur.sum() - 1.0);
        bool renorm = drift > 1e-12;
        if (renorm)
            cur /= cur.sum();

        double q_now = unit_clamp(cur.tail(half).sum());
        double dS = binary_entropy_diff(q_prev, q_now - q_prev);
        q_prev = q_now;

        W_cum += tally.work;
        dEt_cum += tally.dE_target;
        heat_cum += tally.dE_bath;

        double p_t = unit_clamp(cur.head(half).sum());
        trace.rounds.push_back({r, DiagonalState(cur, plan.dims()), p_t,
                                binary_entropy(p_t), tally.work,
                                tally.dE_target, tally.dE_machine,
                                tally.dE_bath, dS, W_cum, dEt_cum, heat_cum,
                                renorm, drift, std::move(tally.steps)});
    }
    return trace;
}

// Iterates delta = state - fixed_point. Every step map below is the exact
// action of the corresponding transition matrix on the deviation, so
// per-round work and energy flows retain full relative accuracy even when
// delta is far below the resolution of the absolute populations.
CoolingTrace run_deviation(const ProtocolPlan& plan, int n_rounds,
                           const DiagonalState& initial, bool record_steps) {
    const EnergySplit es = split_energies(plan.hamiltonian());
    const Eigen::VectorXd rho_th =
        thermal_state(plan.hamiltonian(), plan.beta()).probs();
    const Eigen::VectorXd s_inf = analytic_fixed_point(plan);
    const long half = initial.dim() / 2;
    const double bw = plan.beta_omega();
    const double p2 = 1.0 / (1.0 + std::exp(-2.0 * bw));
    const Eigen::VectorXd fresh =
        plan.kind() == Protocol::PPA
            ? product(thermal_qubit(bw), thermal_qubit(bw)).probs()
            : Eigen::VectorXd();

    for (const auto& st : round_steps(plan, DiagonalState(s_inf, plan.dims())))
        if (st.kind == StepKind::Thermalization)
            check_preserves_bath(st.op, rho_th);

    CoolingTrace trace{plan, initial,
                       unit_clamp(initial.probs().head(half).sum()), 0.0, {}};
    trace.S_target_initial = binary_entropy(trace.p_target_initial);
    trace.rounds.reserve(static_cast<std::size_t>(n_rounds));

    Eigen::VectorXd delta = initial.probs() - s_inf;
    // the round map conserves sum(delta), so any rounding-borne offset in
    // it would persist as a noise floor; project it out each round
    const auto drop_sum = [](Eigen::VectorXd& d) {
        d.array() -= d.sum() / static_cast<double>(d.size());
    };
    drop_sum(delta);
    double q_abs_prev = unit_clamp(initial.probs().tail(half).sum());
    double dq_prev = delta.tail(half).sum();
    double W_cum = 0.0, dEt_cum = 0.0, heat_cum = 0.0;

    for (int r = 1; r <= n_rounds; ++r) {
        RoundTally tally;
        auto take_step = [&](StepKind kind, const char* label,
                             Eigen::VectorXd next) {
            Eigen::VectorXd diff = next - delta;
            double t = es.target.dot(diff);
            double m = es.machine.dot(diff);
            double sys = t + m;
            double w = kind == StepKind::Control ? sys : 0.0;
            double b = kind == StepKind::Thermalization ? -sys : 0.0;
            tally.work += w;
            tally.dE_target += t;
            tally.dE_machine += m;
            tally.dE_bath += b;
            if (record_steps)
                tally.steps.push_back(
                    {kind, label, DiagonalState(s_inf + delta, plan.dims()),
                     DiagonalState(s_inf + next, plan.dims()), sys, t, m, w,
                     b, true});
            delta = std::move(next);
        };

        if (plan.kind() == Protocol::PPA) {
            Eigen::VectorXd d1 = delta;
            std::swap(d1[3], d1[4]);
            take_step(StepKind::Control, "compression", std::move(d1));

            double dp0 = delta[0] + delta[1] + delta[2] + delta[3];
            double dp1 = delta[4] + delta[5] + delta[6] + delta[7];
            Eigen::VectorXd d2(8);
            for (int j = 0; j < 4; ++j) {
                d2[j] = dp0 * fresh[j];
                d2[4 + j] = dp1 * fresh[j];
            }
            take_step(StepKind::Thermalization, "reset", std::move(d2));
        } else {
            Eigen::VectorXd d1(4);
            double a = 0.5 * (delta[0] + delta[1]);
            double b = 0.5 * (delta[2] + delta[3]);
            d1 << a, a, b, b;
            take_step(StepKind::Control, "mix", std::move(d1));

            double c = delta[0] + delta[3];
            Eigen::VectorXd d2(4);
            d2 << p2 * c, delta[1], delta[2], (1.0 - p2) * c;
            take_step(StepKind::Thermalization, "relax-pair", std::move(d2));
        }
        drop_sum(delta);

        double dq_now = delta.tail(half).sum();
        double dS = binary_entropy_diff(q_abs_prev, dq_now - dq_prev);
        dq_prev = dq_now;

        Eigen::VectorXd absv = s_inf + delta;
        double p_t = unit_clamp(absv.head(half).sum());
        q_abs_prev = unit_clamp(absv.tail(half).sum());

        W_cum += tally.work;
        dEt_cum += tally.dE_target;
        heat_cum += tally.dE_bath;

        trace.rounds.push_back({r, DiagonalState(absv, plan.dims()), p_t,
                                binary_entropy(p_t), tally.work,
                                tally.dE_target, tally.dE_machine,
                                tally.dE_bath, dS, W_cum, dEt_cum, heat_cum,
                                false, std::abs(delta.sum()),
                                std::move(tally.steps)});
    }
    return trace;
}

} // namespace

const char* protocol_name(Protocol p) {
    switch (p) {
    case Protocol::PPA: return "ppa";
    case Protocol::NOE2: return "noe2";
    case Protocol::SR2: return "sr2";
    case Protocol::XHBAC1: return "xhbac1";
    case Protocol::SingleShot: return "single-shot";
    case Protocol::ImprovedPPA: return "improved-ppa";
    case Protocol::ImprovedXHBAC: return "improved-xhbac";
    }
    return "unknown";
}

ConvergenceError::ConvergenceError(const std::string& what, DiagonalState last)
    : std::runtime_error(what), last_(std::move(last)) {}

ProtocolPlan::ProtocolPlan(Protocol kind, int qubits, int levels,
                           double beta_omega, double omega,
                           std::vector<int> dims,
                           DiagonalHamiltonian hamiltonian)
    : kind_(kind), qubits_(qubits), levels_(levels), beta_omega_(beta_omega),
      omega_(omega), dims_(std::move(dims)),
      hamiltonian_(std::move(hamiltonian)) {}

ProtocolPlan ProtocolPlan::ppa(int n, double beta_omega, double omega) {
    check_bath(beta_omega, omega);
    check_register_size(n, 3, "ppa");
    return ProtocolPlan(Protocol::PPA, n, 0, beta_omega, omega,
                        std::vector<int>(n, 2),
                        DiagonalHamiltonian::uniform_qubits(n, omega));
}

ProtocolPlan ProtocolPlan::noe2(double beta_omega, double omega) {
    check_bath(beta_omega, omega);
    return ProtocolPlan(Protocol::NOE2, 2, 0, beta_omega, omega, {2, 2},
                        DiagonalHamiltonian::uniform_qubits(2, omega));
}

ProtocolPlan ProtocolPlan::sr2(double beta_omega, double omega) {
    check_bath(beta_omega, omega);
    return ProtocolPlan(Protocol::SR2, 2, 0, beta_omega, omega, {2, 2},
                        DiagonalHamiltonian::uniform_qubits(2, omega));
}

ProtocolPlan ProtocolPlan::xhbac1(double beta_omega, double omega) {
    check_bath(beta_omega, omega);
    return ProtocolPlan(Protocol::XHBAC1, 1, 0, beta_omega, omega, {2},
                        DiagonalHamiltonian::uniform_qubits(1, omega));
}

ProtocolPlan ProtocolPlan::single_shot(int n, double beta_omega,
                                       double omega) {
    check_bath(beta_omega, omega);
    check_register_size(n, 1, "single-shot");
    return ProtocolPlan(Protocol::SingleShot, n, 0, beta_omega, omega,
                        std::vector<int>(n, 2),
                        DiagonalHamiltonian::uniform_qubits(n, omega));
}

ProtocolPlan ProtocolPlan::improved_ppa(int n, double beta_omega,
                                        double omega) {
    check_bath(beta_omega, omega);
    check_register_size(n, 2, "improved-ppa");
    return ProtocolPlan(Protocol::ImprovedPPA, n, 0, beta_omega, omega,
                        std::vector<int>(n, 2),
                        DiagonalHamiltonian::uniform_qubits(n, omega));
}

ProtocolPlan ProtocolPlan::improved_xhbac(double beta_omega, int levels,
                                          double omega) {
    check_bath(beta_omega, omega);
    if (!(beta_omega > 0.0))
        throw DomainError("improved-xhbac requires beta*omega > 0");
    if (levels < 4)
        throw DomainError("improved-xhbac requires at least 4 levels");
    if (2L * levels > max_register_dim())
        throw DomainError("register exceeds the qubit cap; set "
                          "ALGOCOOL_MAX_QUBITS to raise it");
    return ProtocolPlan(Protocol::ImprovedXHBAC, 1, levels, beta_omega, omega,
                        {2, levels},
                        DiagonalHamiltonian::qubit_plus_oscillator(levels,
                                                                   omega));
}

DiagonalState ProtocolPlan::initial_state() const {
    if (kind_ == Protocol::ImprovedXHBAC)
        return product(thermal_qubit(beta_omega_),
                       thermal_oscillator(beta_omega_, levels_));
    return thermal_qubit_register(qubits_, beta_omega_);
}

std::vector<Step> round_steps(const ProtocolPlan& plan,
                              const DiagonalState& current) {
    if (current.dims() != plan.dims())
        throw ShapeError("state does not match the protocol register");
    const double bw = plan.beta_omega();

    switch (plan.kind()) {
    case Protocol::PPA: {
        std::vector<Step> steps;
        if (plan.qubits() == 3)
            steps.push_back({StepKind::Control, "compression", u_ppa3()});
        else
            steps.push_back(
                {StepKind::Control, "compression", sort_compression(current)});
        steps.push_back({StepKind::Thermalization, "reset",
                         reset_qubits(plan.dims(),
                                      {plan.qubits() - 2, plan.qubits() - 1},
                                      bw)});
        return steps;
    }
    case Protocol::NOE2:
        return {{StepKind::Control, "mix", cms_on(plan.dims(), 1)},
                {StepKind::Thermalization, "relax-pair", gamma2(bw)}};
    case Protocol::SR2:
        return {{StepKind::Control, "flip", pauli_x_on(plan.dims(), 1)},
                {StepKind::Thermalization, "relax-pair", gamma2(bw)},
                {StepKind::Thermalization, "reset",
                 reset_qubits(plan.dims(), {1}, bw)}};
    case Protocol::XHBAC1:
        return {{StepKind::Control, "flip", pauli_x_on(plan.dims(), 0)},
                {StepKind::Thermalization, "beta-swap", beta_swap(bw)}};
    case Protocol::SingleShot:
        return {{StepKind::Control, "compression", sort_compression(current)}};
    case Protocol::ImprovedPPA: {
        TransitionMatrix comp =
            energy_ordered_compression(current, plan.hamiltonian(), 0);
        DiagonalState mid(comp.apply(current.probs()), plan.dims());
        const double p_b = ground_pop(bw);
        std::vector<int> warm;
        for (int k = 1; k < plan.qubits(); ++k)
            if (marginal(mid, {k})[0] < p_b)
                warm.push_back(k);
        std::vector<Step> steps;
        steps.push_back({StepKind::Control, "compression", std::move(comp)});
        if (!warm.empty())
            steps.push_back({StepKind::Thermalization, "reset",
                             reset_qubits(plan.dims(), warm, bw)});
        return steps;
    }
    case Protocol::ImprovedXHBAC:
        return {{StepKind::Control, "compression",
                 energy_ordered_compression(current, plan.hamiltonian(), 0)},
                {StepKind::Thermalization, "reset",
                 reset_qubits(plan.dims(), {1}, bw)}};
    }
    throw DomainError("unknown protocol");
}

CoolingTrace run(const ProtocolPlan& plan, int n_rounds,
                 std::optional<DiagonalState> initial, bool record_steps) {
    if (n_rounds < 1)
        throw DomainError("round count must be at least 1");
    DiagonalState init = initial ? *std::move(initial) : plan.initial_state();
    if (init.dims() != plan.dims())
        throw ShapeError("initial state does not match the protocol register");
    if (deviation_eligible(plan))
        return run_deviation(plan, n_rounds, init, record_steps);
    return run_absolute(plan, n_rounds, init, record_steps);
}

bool deviation_tracked(const ProtocolPlan& plan) {
    return deviation_eligible(plan);
}

DiagonalState asymptotic_state(const ProtocolPlan& plan, double tol,
                               int max_rounds) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw DomainError("tolerance must be positive");
    if (max_rounds < 1)
        throw DomainError("round budget must be at least 1");

    Eigen::VectorXd cur = plan.initial_state().probs();
    for (int r = 0; r < max_rounds; ++r) {
        Eigen::VectorXd next = cur;
        for (const auto& st : round_steps(plan, DiagonalState(next, plan.dims())))
            next = st.op.apply(next);
        double change = (next - cur).lpNorm<Eigen::Infinity>();
        cur = std::move(next);
        if (change <= tol)
            return DiagonalState(cur, plan.dims());
    }
    throw ConvergenceError("round iteration did not reach the tolerance",
                           DiagonalState(cur, plan.dims()));
}

double fixed_point_target(const ProtocolPlan& plan) {
    const double bw = plan.beta_omega();
    switch (plan.kind()) {
    case Protocol::PPA:
        return 1.0 / (1.0 + std::exp(-std::ldexp(bw, plan.qubits() - 2)));
    case Protocol::NOE2:
        return 1.0 / (1.0 + std::exp(-2.0 * bw));
    case Protocol::SR2:
        return 1.0 / (1.0 + std::exp(-3.0 * bw));
    case Protocol::XHBAC1:
        return 1.0;
    case Protocol::ImprovedPPA:
        return 1.0 / (1.0 + std::exp(-(plan.qubits() - 1) * bw));
    default:
        throw DomainError("protocol has no closed-form fixed point");
    }
}

Eigen::Matrix2d reduced_target_matrix(const ProtocolPlan& plan) {
    Eigen::Matrix2d g;
    for (int tau = 0; tau < 2; ++tau) {
        Eigen::VectorXd tv(2);
        tv << (tau == 0 ? 1.0 : 0.0), (tau == 0 ? 0.0 : 1.0);
        DiagonalState target_basis(tv, std::vector<int>{2});
        DiagonalState init = [&]() -> DiagonalState {
            if (plan.dims().size() == 1)
                return target_basis;
            if (plan.kind() == Protocol::ImprovedXHBAC)
                return product(target_basis,
                               thermal_oscillator(plan.beta_omega(),
                                                  plan.oscillator_levels()));
            return product(target_basis,
                           thermal_qubit_register(
                               static_cast<int>(plan.dims().size()) - 1,
                               plan.beta_omega()));
        }();
        CoolingTrace t = run_absolute(plan, 1, init, false);
        double p = t.rounds.front().p_target;
        g(0, tau) = p;
        g(1, tau) = 1.0 - p;
    }
    return g;
}

SingleShotResult single_shot_compress(int n, double p) {
    check_register_size(n, 1, "single-shot");
    if (std::isnan(p) || p < 0.5 || p > 1.0)
        throw DomainError("ground population must lie in [1/2, 1]");

    DiagonalState pre = qubit_register_from_ground_pop(n, p);
    TransitionMatrix comp = sort_compression(pre);
    Eigen::VectorXd post = comp.apply(pre.probs());
    Eigen::VectorXd diff = post - pre.probs();
    double work =
        DiagonalHamiltonian::uniform_qubits(n, 1.0).energies().dot(diff);
    double q = unit_clamp(post.head(pre.dim() / 2).sum());
    return {q, work, DiagonalState(post, pre.dims())};
}

ImprovedXhbacResult improved_xhbac_run(double beta_omega, int levels) {
    ProtocolPlan plan = ProtocolPlan::improved_xhbac(beta_omega, levels);
    double tail = 0.0;
    thermal_oscillator(beta_omega, levels, &tail);
    CoolingTrace trace = run(plan, 1);
    const RoundRecord& r0 = trace.rounds.front();
    double work = r0.work;
    double dE_target = r0.dE_target;
    double cop = -dE_target / work;
    return {std::move(trace), work, dE_target, cop, tail};
}

} // namespace algocool
