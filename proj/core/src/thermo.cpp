#include "algocool/thermo.hpp"

#include <cmath>
#include <limits>

#include "algocool/errors.hpp"

namespace algocool {

namespace {

std::vector<int> complement(const std::vector<int>& x, int n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int k : x)
        if (k >= 0 && k < n)
            in[static_cast<std::size_t>(k)] = 1;
    std::vector<int> y;
    for (int k = 0; k < n; ++k)
        if (!in[static_cast<std::size_t>(k)])
            y.push_back(k);
    return y;
}

Eigen::VectorXd block_energies(const DiagonalHamiltonian& h,
                               const std::vector<int>& block) {
    const auto& dims = h.dims();
    const auto strides = mixed_radix_strides(dims);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(h.dim());
    for (long i = 0; i < h.dim(); ++i)
        for (int k : block)
            e[i] += h.locals()[k][digit_at(i, k, strides, dims)];
    return e;
}

// Reassembles marg_x (x) marg_y into the full index order.
Eigen::VectorXd assemble_product(const DiagonalState& mx,
                                 const DiagonalState& my,
                                 const std::vector<int>& x,
                                 const std::vector<int>& y,
                                 const std::vector<int>& dims) {
    const auto strides = mixed_radix_strides(dims);
    const long dim = mx.dim() * my.dim();
    Eigen::VectorXd out(dim);
    for (long i = 0; i < dim; ++i) {
        long ix = 0, iy = 0;
        for (std::size_t a = 0; a < x.size(); ++a)
            ix = ix * dims[x[a]] + digit_at(i, x[a], strides, dims);
        for (std::size_t a = 0; a < y.size(); ++a)
            iy = iy * dims[y[a]] + digit_at(i, y[a], strides, dims);
        out[i] = mx[ix] * my[iy];
    }
    return out;
}

// (-t log t) evaluated at p+d minus at p, cancellation-free in d so the
// result keeps relative accuracy however small |d| is.
double entropy_term_diff(double p, double d) {
    if (d == 0.0)
        return 0.0;
    const double t = p + d;
    if (p <= 0.0)
        return t > 0.0 ? -t * std::log(t) : 0.0;
    if (t <= 0.0)
        return p * std::log(p);
    return -(d * std::log(p) + t * std::log1p(d / p));
}

struct SplitContext {
    std::vector<int> y;
    DiagonalState mx;
    DiagonalState rho_y_th;
};

// Validates the shared preconditions: matching shapes and a product
// pre-state whose y block is thermal at the given beta.
SplitContext split_context(const DiagonalState& pre, const DiagonalState& post,
                           const std::vector<int>& x,
                           const DiagonalHamiltonian& h, double beta) {
    if (pre.dims() != h.dims() || post.dims() != h.dims())
        throw ShapeError("states do not match the Hamiltonian register");
    DiagonalState mx = marginal(pre, x); // validates x
    std::vector<int> y = complement(x, pre.subsystems());
    if (y.empty())
        throw DomainError("the retained block must be a proper subset");
    DiagonalState rho_y_th = thermal_state(h.restricted(y), beta);
    Eigen::VectorXd expected =
        assemble_product(mx, rho_y_th, x, y, pre.dims());
    double gap = (pre.probs() - expected).lpNorm<Eigen::Infinity>();
    if (!(gap < 1e-12))
        throw PreconditionError(
            "pre-state is not a product with a thermal complement");
    return {std::move(y), std::move(mx), std::move(rho_y_th)};
}

} // namespace

std::optional<double> cop(double work, double dE_target) {
    const double drop = -dE_target;
    if (work > 0.0)
        return drop / work;
    if (drop > 0.0)
        return std::numeric_limits<double>::infinity();
    return std::nullopt;
}

std::optional<double> landauer_ratio(double beta, double dE_bath,
                                     double dE_machine, double dS_target) {
    if (!(-dS_target > 0.0))
        return std::nullopt;
    return beta * (dE_bath + dE_machine) / (-dS_target);
}

std::optional<double> landauer_ratio_from_cop(double beta, double dE_target,
                                              double dS_target,
                                              std::optional<double> K) {
    if (!K || *K == 0.0 || !(-dS_target > 0.0))
        return std::nullopt;
    const double invK = std::isinf(*K) ? 0.0 : 1.0 / *K;
    return (-beta * dE_target / (-dS_target)) * (invK + 1.0);
}

std::vector<EfficiencyReport> efficiency_reports(const CoolingTrace& trace) {
    const double beta = trace.plan.beta();
    // Absolute-coordinate rounds resolve population changes only down to
    // about 1 ulp of the populations; a per-round entropy drop below this
    // floor is indistinguishable from rounding, so its ratio is undefined.
    const double floor = deviation_tracked(trace.plan) ? 0.0 : 1e-12;
    std::vector<EfficiencyReport> out;
    out.reserve(trace.rounds.size());
    double dS_cum = 0.0, dEm_cum = 0.0;
    for (const RoundRecord& r : trace.rounds) {
        dS_cum += r.dS_target;
        dEm_cum += r.dE_machine;
        std::optional<double> r_L =
            -r.dS_target > floor
                ? landauer_ratio(beta, r.dE_bath, r.dE_machine, r.dS_target)
                : std::nullopt;
        out.push_back({r.round, cop(r.work, r.dE_target),
                       cop(r.W_cum, r.dE_target_cum), r_L,
                       landauer_ratio(beta, r.heat_cum, dEm_cum, dS_cum)});
    }
    return out;
}

std::optional<double> landauer_ratio_comp(const StepRecord& step,
                                          const DiagonalHamiltonian& h,
                                          double beta,
                                          const std::vector<int>& x) {
    if (step.pre.dims() != h.dims() || step.post.dims() != h.dims())
        throw ShapeError("step states do not match the Hamiltonian register");
    const std::vector<int> y = complement(x, step.pre.subsystems());
    if (y.empty())
        throw DomainError("the retained block must be a proper subset");
    const Eigen::VectorXd ey = block_energies(h, y);
    const double dE_y = ey.dot(step.post.probs() - step.pre.probs());

    // Difference-first x marginal: accumulating post-pre per entry keeps
    // step-scale resolution that marginalize-then-subtract would cancel.
    const auto& dims = step.pre.dims();
    const auto strides = mixed_radix_strides(dims);
    long x_dim = 1;
    for (int pos : x)
        x_dim *= dims[static_cast<std::size_t>(pos)];
    Eigen::VectorXd px = Eigen::VectorXd::Zero(x_dim);
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(x_dim);
    for (long i = 0; i < step.pre.dim(); ++i) {
        long k = 0;
        for (int pos : x)
            k = k * dims[static_cast<std::size_t>(pos)] +
                digit_at(i, pos, strides, dims);
        px[k] += step.pre[i];
        dx[k] += step.post[i] - step.pre[i];
    }
    double dS_x = 0.0;
    for (long k = 0; k < x_dim; ++k)
        dS_x += entropy_term_diff(px[k], dx[k]);

    // Reconstructed records quantize the step at about 1 ulp of the
    // populations; entropy drops below this floor carry no signal.
    const double floor = step.reconstructed ? 1e-6 : 0.0;
    if (!(-dS_x > floor))
        return std::nullopt;
    return beta * dE_y / (-dS_x);
}

DrivenBalance verify_lp_driven(const DiagonalState& pre,
                               const DiagonalState& post,
                               const std::vector<int>& x,
                               const DiagonalHamiltonian& h, double beta) {
    SplitContext ctx = split_context(pre, post, x, h, beta);
    const Eigen::VectorXd ey = block_energies(h, ctx.y);
    DrivenBalance b{};
    b.dE_y = ey.dot(post.probs() - pre.probs());
    b.dS_x = entropy(marginal(post, x)) - entropy(ctx.mx);
    b.mutual_info = mutual_information(post, x);
    b.excess = relative_entropy(marginal(post, ctx.y), ctx.rho_y_th);
    // zero flow carries no entropy even in the beta -> inf limit
    const double flow = b.dE_y == 0.0 ? 0.0 : beta * b.dE_y;
    b.residual = flow + b.dS_x - b.mutual_info - b.excess;
    return b;
}

ThermalizationBalance verify_lp_thermalization(const DiagonalState& pre,
                                               const DiagonalState& post,
                                               const DiagonalHamiltonian& h,
                                               double beta) {
    if (pre.dims() != h.dims() || post.dims() != h.dims())
        throw ShapeError("states do not match the Hamiltonian register");
    const DiagonalState gibbs = thermal_state(h, beta);
    ThermalizationBalance b{};
    b.dE = h.energies().dot(post.probs() - pre.probs());
    b.dS = entropy(post) - entropy(pre);
    b.d_pre = relative_entropy(pre, gibbs);
    b.d_post = relative_entropy(post, gibbs);
    const double flow = b.dE == 0.0 ? 0.0 : -beta * b.dE;
    b.residual = flow + b.dS - b.d_pre + b.d_post;
    return b;
}

CoolingBoundCheck theorem2_bound(const DiagonalState& pre,
                                 const DiagonalState& post,
                                 const std::vector<int>& x,
                                 const DiagonalHamiltonian& h, double beta) {
    SplitContext ctx = split_context(pre, post, x, h, beta);
    const Eigen::VectorXd ey = block_energies(h, ctx.y);

    CoolingBoundCheck c{};
    const DiagonalState mx_post = marginal(post, x);
    const DiagonalState my_post = marginal(post, ctx.y);
    c.eps_x = trace_distance(mx_post, ctx.mx);
    c.gamma_y = trace_distance(my_post, ctx.rho_y_th);
    c.lambda_xy = trace_distance(
        post, DiagonalState(assemble_product(mx_post, my_post, x, ctx.y,
                                             post.dims()),
                            post.dims()));
    const double dS_x = entropy(mx_post) - entropy(ctx.mx);
    const double bound_eps = 1.0 / (2.0 * std::exp(1.0));
    c.applicable = c.eps_x > 0.0 && c.eps_x <= bound_eps && dS_x < 0.0;
    if (!c.applicable)
        return c;

    const double dE_y = ey.dot(post.probs() - pre.probs());
    const double d_x = static_cast<double>(ctx.mx.dim());
    c.lhs = beta * dE_y / (-dS_x);
    c.rhs = 1.0 + (c.gamma_y * c.gamma_y + c.lambda_xy * c.lambda_xy) /
                      (c.eps_x * std::log(d_x / (2.0 * c.eps_x)));
    c.slack = c.lhs - c.rhs;
    return c;
}

} // namespace algocool
