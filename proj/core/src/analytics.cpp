#include "algocool/analytics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "algocool/errors.hpp"

namespace algocool {

namespace {

void check_round(int N, int minimum) {
    if (N < minimum)
        throw DomainError("round index must be >= " + std::to_string(minimum));
}

void require_ladder_protocol(Protocol kind) {
    switch (kind) {
    case Protocol::PPA:
    case Protocol::NOE2:
    case Protocol::SR2:
    case Protocol::XHBAC1:
        return;
    default:
        throw DomainError("no closed form for this protocol");
    }
}

// Exact in double for n <= 50.
double binom(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j)
        c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    return std::round(c);
}

} // namespace

BathParams BathParams::from_beta_omega(double beta_omega) {
    if (std::isnan(beta_omega) || !std::isfinite(beta_omega) ||
        beta_omega < 0.0)
        throw DomainError("beta*omega must be finite and nonnegative");
    BathParams b{};
    b.beta_omega = beta_omega;
    b.p = 1.0 / (1.0 + std::exp(-beta_omega));
    b.q = 1.0 - b.p;
    b.eps = std::tanh(0.5 * beta_omega);
    b.p2 = 1.0 / (1.0 + std::exp(-2.0 * beta_omega));
    b.s = std::exp(-beta_omega);
    return b;
}

BathParams BathParams::from_polarization(double eps) {
    if (std::isnan(eps) || eps < 0.0 || eps >= 1.0)
        throw DomainError("polarization must lie in [0, 1)");
    return from_beta_omega(2.0 * std::atanh(eps));
}

BathParams BathParams::from_ground_pop(double p) {
    if (std::isnan(p) || p < 0.5 || p >= 1.0)
        throw DomainError("ground population must lie in [1/2, 1)");
    return from_beta_omega(std::log(p) - std::log1p(-p));
}

double population_closed_form(Protocol kind, const BathParams& b, int N,
                              std::optional<double> p0) {
    require_ladder_protocol(kind);
    check_round(N, 0);
    const double start = p0.value_or(b.p);
    switch (kind) {
    case Protocol::PPA: {
        const double pinf = 1.0 / (1.0 + std::exp(-2.0 * b.beta_omega));
        const double y = 2.0 * b.p * b.q;
        return pinf - std::pow(y, N) * (pinf - start);
    }
    case Protocol::NOE2:
        return b.p2 - std::ldexp(b.p2 - start, -N);
    case Protocol::SR2: {
        const double w = b.p2 * b.p;
        const double v = 1.0 - b.p2 - b.p + w;
        const double u = b.p2 + b.p - 2.0 * w;
        const double pinf = w / (w + v);
        return pinf - std::pow(u, N) * (pinf - start);
    }
    default: // XHBAC1
        return 1.0 - std::pow(b.s, N) * (1.0 - start);
    }
}

double work_closed_form(Protocol kind, const BathParams& b, int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA:
        return (b.p - 0.5) * std::pow(2.0 * b.p * b.q, N);
    case Protocol::NOE2:
        return N == 1 ? b.p - 0.5 : std::ldexp(b.p2 - b.p, 1 - N);
    case Protocol::SR2:
        return 2.0 * b.p - 1.0;
    default: // XHBAC1
        return 1.0 - 2.0 * std::pow(b.s, N - 1) * (1.0 - b.p);
    }
}

double cumulative_work_closed_form(Protocol kind, const BathParams& b,
                                   int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA: {
        const double y = 2.0 * b.p * b.q;
        return (b.p - 0.5) * y * (1.0 - std::pow(y, N)) / (1.0 - y);
    }
    case Protocol::NOE2:
        return (b.p2 - 0.5) - std::ldexp(b.p2 - b.p, 1 - N);
    case Protocol::SR2:
        return N * (2.0 * b.p - 1.0);
    default: { // XHBAC1
        if (b.s == 1.0)
            return 0.0;
        const double sN = std::pow(b.s, N);
        return (N * (1.0 - b.s) - 2.0 * (1.0 - b.p) * (1.0 - sN)) /
               (1.0 - b.s);
    }
    }
}

double target_energy_drop_closed_form(Protocol kind, const BathParams& b,
                                      int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA:
        return (b.p - 0.5) * std::pow(2.0 * b.p * b.q, N);
    case Protocol::NOE2:
        return std::ldexp(b.p2 - b.p, -N);
    case Protocol::SR2: {
        const double u = b.p2 + b.p - 2.0 * b.p2 * b.p;
        return b.p * b.q * (2.0 * b.p2 - 1.0) * std::pow(u, N - 1);
    }
    default: // XHBAC1
        return (1.0 - b.p) * (1.0 - b.s) * std::pow(b.s, N - 1);
    }
}

double cumulative_target_energy_drop_closed_form(Protocol kind,
                                                 const BathParams& b, int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA: {
        const double y = 2.0 * b.p * b.q;
        return (b.p - 0.5) * y * (1.0 - std::pow(y, N)) / (1.0 - y);
    }
    case Protocol::NOE2:
        return (b.p2 - b.p) * (1.0 - std::ldexp(1.0, -N));
    case Protocol::SR2: {
        const double u = b.p2 + b.p - 2.0 * b.p2 * b.p;
        return b.p * b.q * (2.0 * b.p2 - 1.0) * (1.0 - std::pow(u, N)) /
               (1.0 - u);
    }
    default: // XHBAC1
        return (1.0 - b.p) * (1.0 - std::pow(b.s, N));
    }
}

double cop_closed_form(Protocol kind, const BathParams& b, int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA:
        return 1.0;
    case Protocol::NOE2:
        return N == 1 ? (b.p2 - b.p) / (2.0 * b.p - 1.0) : 0.5;
    case Protocol::SR2: {
        const double u = b.p2 + b.p - 2.0 * b.p2 * b.p;
        return b.p * b.q * (2.0 * b.p2 - 1.0) / (2.0 * b.p - 1.0) *
               std::pow(u, N - 1);
    }
    default: { // XHBAC1
        const double t = std::pow(b.s, N - 1);
        return (1.0 - b.p) * (1.0 - b.s) * t /
               (1.0 - 2.0 * t * (1.0 - b.p));
    }
    }
}

double cumulative_cop_closed_form(Protocol kind, const BathParams& b, int N) {
    require_ladder_protocol(kind);
    check_round(N, 1);
    switch (kind) {
    case Protocol::PPA:
        return 1.0;
    case Protocol::NOE2:
        return (b.p2 - b.p) * (1.0 - std::ldexp(1.0, -N)) /
               ((b.p2 - 0.5) - std::ldexp(b.p2 - b.p, 1 - N));
    case Protocol::SR2: {
        const double u = b.p2 + b.p - 2.0 * b.p2 * b.p;
        return b.p * b.q * (2.0 * b.p2 - 1.0) * (1.0 - std::pow(u, N)) /
               ((1.0 - u) * N * (2.0 * b.p - 1.0));
    }
    default: { // XHBAC1
        const double sN = std::pow(b.s, N);
        return (1.0 - b.p) * (1.0 - b.s) * (1.0 - sN) /
               (N * (1.0 - b.s) - 2.0 * (1.0 - b.p) * (1.0 - sN));
    }
    }
}

double protocol_alpha(Protocol kind, int n) {
    switch (kind) {
    case Protocol::SingleShot:
        if (n < 1)
            throw DomainError("register needs at least one qubit");
        return static_cast<double>((n + 1) / 2);
    case Protocol::PPA:
        if (n < 3)
            throw DomainError("ppa needs n >= 3");
        return std::ldexp(1.0, n - 2);
    case Protocol::NOE2:
        return 2.0;
    case Protocol::SR2:
        return std::ldexp(1.0, n) - 1.0;
    case Protocol::XHBAC1:
        return std::numeric_limits<double>::infinity();
    case Protocol::ImprovedPPA:
        if (n < 2)
            throw DomainError("improved-ppa needs n >= 2");
        return static_cast<double>(n - 1);
    default:
        throw DomainError("no amplification factor for this protocol");
    }
}

double compression_alpha(int m, int d) {
    if (m < 1 || d < 1)
        throw DomainError("copies and depth must be positive");
    return static_cast<double>(m) * static_cast<double>(d);
}

double unified_limit(double eps_b, double alpha) {
    if (std::isnan(eps_b) || eps_b < 0.0 || eps_b > 1.0)
        throw DomainError("polarization must lie in [0, 1]");
    if (std::isnan(alpha) || alpha < 1.0)
        throw DomainError("amplification factor must be >= 1");
    if (std::isinf(alpha))
        return eps_b > 0.0 ? 1.0 : 0.0;
    return std::tanh(alpha * std::atanh(eps_b));
}

double unified_rate(Protocol kind, const BathParams& b) {
    switch (kind) {
    case Protocol::PPA: // three-qubit variant
        return 0.5 * (1.0 - b.eps * b.eps);
    case Protocol::NOE2:
        return 0.5;
    case Protocol::SR2:
        return 0.5 * (1.0 - b.eps * b.eps) / (1.0 + b.eps * b.eps);
    case Protocol::XHBAC1:
        return b.s;
    default:
        throw DomainError("no contraction rate for this protocol");
    }
}

double unified_evolution(Protocol kind, const BathParams& b, int N) {
    check_round(N, 0);
    const int n = kind == Protocol::PPA ? 3 : 2;
    const double eps_inf = unified_limit(b.eps, protocol_alpha(kind, n));
    const double r = unified_rate(kind, b);
    return eps_inf - std::pow(r, N) * (eps_inf - b.eps);
}

double q_max(int n, double p) {
    if (n < 1)
        throw DomainError("register needs at least one qubit");
    if (n > 50)
        throw DomainError("binomial range exceeded");
    if (std::isnan(p) || p < 0.5 || p > 1.0)
        throw DomainError("ground population must lie in [1/2, 1]");
    const double q = 1.0 - p;
    std::vector<double> pw(n + 1, 1.0), qw(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        pw[k] = pw[k - 1] * p;
        qw[k] = qw[k - 1] * q;
    }
    double total = 0.0;
    if (n % 2 == 1) {
        for (int i = 0; i <= (n - 1) / 2; ++i)
            total += binom(n, i) * pw[n - i] * qw[i];
    } else {
        for (int i = 0; i <= n / 2; ++i)
            total += binom(n, i) * pw[n - i] * qw[i];
        total -= 0.5 * binom(n, n / 2) * pw[n / 2] * qw[n / 2];
    }
    return total;
}

CltLimit clt_cooling_limit(int n, double eps_b) {
    if (n < 1)
        throw DomainError("register needs at least one qubit");
    if (std::isnan(eps_b) || eps_b < 0.0 || eps_b >= 1.0)
        throw DomainError("polarization must lie in [0, 1)");
    const double mu = n * eps_b /
                      std::sqrt(2.0 * n * (1.0 - eps_b * eps_b));
    const double e = std::erf(mu);
    return {mu, 0.5 * e, e};
}

double low_temperature_ratio(int n) {
    if (n < 3 || n % 2 == 0)
        throw DomainError("the low-temperature ratio needs odd n >= 3");
    return 2.0 / (n + 1);
}

double polarization_entropy_drop(double eps_from, double eps_to) {
    if (std::isnan(eps_from) || std::isnan(eps_to) || eps_from < 0.0 ||
        eps_to < 0.0 || eps_from > 1.0 || eps_to > 1.0)
        throw DomainError("polarizations must lie in [0, 1]");
    const double a2 = eps_from * eps_from;
    const double b2 = eps_to * eps_to;
    double ta = a2, tb = b2, total = 0.0;
    for (long j = 1; j <= 1000000; ++j) {
        const double term = (tb - ta) / (j * (2.0 * j - 1.0));
        total += term;
        if (std::abs(term) < 1e-16 * std::abs(total) || (ta == 0 && tb == 0))
            return 0.5 * total;
        ta *= a2;
        tb *= b2;
    }
    // Slowly converging tail (polarizations near 1): evaluate directly.
    return binary_entropy(0.5 * (1.0 + eps_from)) -
           binary_entropy(0.5 * (1.0 + eps_to));
}

double ppa3_landauer_closed_form(double eps_b, int N) {
    if (std::isnan(eps_b) || eps_b <= 0.0 || eps_b >= 1.0)
        throw DomainError("polarization must lie in (0, 1)");
    check_round(N, 1);
    const double a = std::atanh(eps_b);
    const double eps_inf = std::tanh(2.0 * a);
    const double r = 0.5 * (1.0 - eps_b * eps_b);
    const double rN = std::pow(r, N);
    const double eps_N = eps_inf - rN * (eps_inf - eps_b);
    const double drop = polarization_entropy_drop(eps_b, eps_N);
    return 2.0 * a * (eps_inf - eps_b) * (1.0 - rN) / drop;
}

ImprovedXhbacClosedForm improved_xhbac_closed_form(double beta_omega) {
    if (std::isnan(beta_omega) || !(beta_omega > 0.0) ||
        !std::isfinite(beta_omega))
        throw DomainError("beta*omega must be positive and finite");
    const double e1 = std::exp(beta_omega);
    const double e2 = std::exp(2.0 * beta_omega);
    ImprovedXhbacClosedForm f{};
    f.E_initial = 2.0 * e1 / (e2 - 1.0);
    f.E_final = (1.0 + 3.0 * e1) / (e2 - 1.0);
    f.work = 1.0 / (e1 - 1.0);
    f.target_energy_drop = 1.0 / (1.0 + e1);
    f.cop = std::tanh(0.5 * beta_omega);
    return f;
}

} // namespace algocool
