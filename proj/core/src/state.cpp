#include "algocool/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace algocool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_ground_population(double value, QubitRepr from) {
    if (std::isnan(value)) throw DomainError("qubit parameter is NaN");
    switch (from) {
    case QubitRepr::GroundPopulation:
        if (value < 0.0 || value > 1.0)
            throw DomainError("ground population outside [0, 1]");
        return value;
    case QubitRepr::Polarization:
        if (value < -1.0 || value > 1.0)
            throw DomainError("polarization outside [-1, 1]");
        return 0.5 * (1.0 + value);
    case QubitRepr::BetaOmega:
        return 1.0 / (1.0 + std::exp(-value));
    }
    throw DomainError("unknown qubit representation");
}

} // namespace

double convert_qubit_param(double value, QubitRepr from, QubitRepr to) {
    if (std::isnan(value)) throw DomainError("qubit parameter is NaN");
    if (from == to) {
        to_ground_population(value, from); // validate only
        return value;
    }
    // Direct paths keep full precision near the boundaries.
    if (from == QubitRepr::BetaOmega && to == QubitRepr::Polarization)
        return std::tanh(0.5 * value);
    if (from == QubitRepr::Polarization && to == QubitRepr::BetaOmega) {
        if (value < -1.0 || value > 1.0)
            throw DomainError("polarization outside [-1, 1]");
        return 2.0 * std::atanh(value);
    }
    if (from == QubitRepr::GroundPopulation && to == QubitRepr::BetaOmega) {
        if (value < 0.0 || value > 1.0)
            throw DomainError("ground population outside [0, 1]");
        if (value == 0.0) return -kInf;
        if (value == 1.0) return kInf;
        return std::log(value) - std::log1p(-value);
    }
    const double p = to_ground_population(value, from);
    switch (to) {
    case QubitRepr::GroundPopulation:
        return p;
    case QubitRepr::Polarization:
        return 2.0 * p - 1.0;
    case QubitRepr::BetaOmega:
        break; // unreachable: handled by the direct paths above
    }
    throw DomainError("unknown qubit representation");
}

std::vector<long> mixed_radix_strides(const std::vector<int>& dims) {
    std::vector<long> strides(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        strides[k] = strides[k + 1] * dims[k + 1];
    return strides;
}

int digit_at(long index, int pos, const std::vector<long>& strides,
             const std::vector<int>& dims) {
    return static_cast<int>((index / strides[pos]) % dims[pos]);
}

DiagonalState::DiagonalState(Eigen::VectorXd probs, std::vector<int> dims)
    : probs_(std::move(probs)), dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeError("state needs at least one subsystem");
    long expected = 1;
    for (int d : dims_) {
        if (d < 2) throw ShapeError("subsystem dimension must be >= 2");
        expected *= d;
    }
    if (expected != probs_.size())
        throw ShapeError("probability vector size does not match dims");
    double sum = 0.0;
    for (long i = 0; i < probs_.size(); ++i) {
        double& p = probs_[i];
        if (std::isnan(p)) throw DomainError("probability entry is NaN");
        if (p < 0.0) {
            if (p < -kEntryTol)
                throw DomainError("probability entry below -1e-12");
            p = 0.0;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) >= kNormRejectTol)
        throw DomainError("probabilities do not sum to 1 within 1e-9");
    if (sum != 1.0) probs_ /= sum;
}

DiagonalState::DiagonalState(Eigen::VectorXd probs)
    : DiagonalState(std::move(probs),
                    std::vector<int>{static_cast<int>(probs.size())}) {}

DiagonalHamiltonian::DiagonalHamiltonian(std::vector<Eigen::VectorXd> local_terms)
    : locals_(std::move(local_terms)) {
    if (locals_.empty())
        throw ShapeError("Hamiltonian needs at least one local term");
    long dim = 1;
    for (const auto& t : locals_) {
        if (t.size() < 2)
            throw ShapeError("local term must cover at least two levels");
        dims_.push_back(static_cast<int>(t.size()));
        dim *= t.size();
    }
    energies_.resize(dim);
    const auto strides = mixed_radix_strides(dims_);
    for (long i = 0; i < dim; ++i) {
        double e = 0.0;
        for (size_t k = 0; k < dims_.size(); ++k)
            e += locals_[k][digit_at(i, static_cast<int>(k), strides, dims_)];
        energies_[i] = e;
    }
}

DiagonalHamiltonian DiagonalHamiltonian::uniform_qubits(int n, double omega) {
    if (n < 1) throw DomainError("qubit count must be >= 1");
    std::vector<Eigen::VectorXd> locals(n, Eigen::Vector2d(0.0, omega));
    return DiagonalHamiltonian(std::move(locals));
}

DiagonalHamiltonian DiagonalHamiltonian::oscillator(int levels, double omega) {
    if (levels < 2) throw DomainError("oscillator needs at least two levels");
    Eigen::VectorXd ladder(levels);
    for (int i = 0; i < levels; ++i) ladder[i] = i * omega;
    return DiagonalHamiltonian({std::move(ladder)});
}

DiagonalHamiltonian DiagonalHamiltonian::qubit_plus_oscillator(int levels,
                                                               double omega) {
    if (levels < 2) throw DomainError("oscillator needs at least two levels");
    Eigen::VectorXd ladder(levels);
    for (int i = 0; i < levels; ++i) ladder[i] = i * omega;
    return DiagonalHamiltonian({Eigen::Vector2d(0.0, omega), std::move(ladder)});
}

DiagonalHamiltonian
DiagonalHamiltonian::restricted(const std::vector<int>& keep) const {
    if (keep.empty()) throw DomainError("restriction needs subsystems");
    std::vector<Eigen::VectorXd> locals;
    int last = -1;
    for (int k : keep) {
        if (k <= last || k >= static_cast<int>(dims_.size()))
            throw DomainError("restriction indices must be ascending and in range");
        locals.push_back(locals_[k]);
        last = k;
    }
    return DiagonalHamiltonian(std::move(locals));
}

DiagonalState thermal_qubit(double beta_omega) {
    if (std::isnan(beta_omega)) throw DomainError("beta*omega is NaN");
    const double p = 1.0 / (1.0 + std::exp(-beta_omega));
    return DiagonalState(Eigen::Vector2d(p, 1.0 - p), {2});
}

DiagonalState thermal_oscillator(double beta_omega, int levels,
                                 double* tail_mass) {
    if (levels < 2) throw DomainError("oscillator needs at least two levels");
    if (!(beta_omega > 0.0))
        throw DomainError("oscillator temperature requires beta*omega > 0");
    Eigen::VectorXd probs(levels);
    for (int i = 0; i < levels; ++i) probs[i] = std::exp(-i * beta_omega);
    probs /= probs.sum();
    if (tail_mass) *tail_mass = std::exp(-levels * beta_omega);
    return DiagonalState(std::move(probs), {levels});
}

DiagonalState thermal_state(const DiagonalHamiltonian& h, double beta) {
    if (std::isnan(beta)) throw DomainError("beta is NaN");
    const Eigen::VectorXd& e = h.energies();
    Eigen::VectorXd probs(e.size());
    if (std::isinf(beta)) {
        // Uniform over the extremal-energy subspace.
        const double target = beta > 0 ? e.minCoeff() : e.maxCoeff();
        for (long i = 0; i < e.size(); ++i)
            probs[i] = (e[i] == target) ? 1.0 : 0.0;
    } else {
        const double shift = beta >= 0 ? e.minCoeff() : e.maxCoeff();
        for (long i = 0; i < e.size(); ++i)
            probs[i] = std::exp(-beta * (e[i] - shift));
    }
    probs /= probs.sum();
    return DiagonalState(std::move(probs), h.dims());
}

DiagonalState qubit_register_from_ground_pop(int n, double p) {
    if (n < 1) throw DomainError("qubit count must be >= 1");
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw DomainError("ground population must lie in [0, 1]");
    const double q = 1.0 - p;
    std::vector<double> pw(n + 1, 1.0), qw(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        pw[k] = pw[k - 1] * p;
        qw[k] = qw[k - 1] * q;
    }
    const long dim = 1L << n;
    Eigen::VectorXd probs(dim);
    for (long i = 0; i < dim; ++i) {
        const int w = std::popcount(static_cast<unsigned long>(i));
        probs[i] = pw[n - w] * qw[w];
    }
    return DiagonalState(std::move(probs), std::vector<int>(n, 2));
}

DiagonalState thermal_qubit_register(int n, double beta_omega) {
    if (std::isnan(beta_omega)) throw DomainError("beta*omega is NaN");
    return qubit_register_from_ground_pop(
        n, 1.0 / (1.0 + std::exp(-beta_omega)));
}

DiagonalState product(const std::vector<DiagonalState>& factors) {
    if (factors.empty()) throw DomainError("product needs at least one factor");
    Eigen::VectorXd probs = factors[0].probs();
    std::vector<int> dims = factors[0].dims();
    for (size_t f = 1; f < factors.size(); ++f) {
        const Eigen::VectorXd& q = factors[f].probs();
        Eigen::VectorXd out(probs.size() * q.size());
        for (long i = 0; i < probs.size(); ++i)
            for (long j = 0; j < q.size(); ++j)
                out[i * q.size() + j] = probs[i] * q[j];
        probs = std::move(out);
        dims.insert(dims.end(), factors[f].dims().begin(),
                    factors[f].dims().end());
    }
    return DiagonalState(std::move(probs), std::move(dims));
}

DiagonalState product(const DiagonalState& a, const DiagonalState& b) {
    return product(std::vector<DiagonalState>{a, b});
}

DiagonalState marginal(const DiagonalState& state,
                       const std::vector<int>& keep) {
    if (keep.empty()) throw DomainError("marginal needs a nonempty keep set");
    const auto& dims = state.dims();
    int last = -1;
    std::vector<int> out_dims;
    for (int k : keep) {
        if (k <= last || k >= static_cast<int>(dims.size()))
            throw DomainError("keep indices must be ascending and in range");
        out_dims.push_back(dims[k]);
        last = k;
    }
    const auto strides = mixed_radix_strides(dims);
    const auto out_strides = mixed_radix_strides(out_dims);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(
        out_strides[0] * out_dims[0]);
    for (long i = 0; i < state.dim(); ++i) {
        long j = 0;
        for (size_t k = 0; k < keep.size(); ++k)
            j += out_strides[k] *
                 digit_at(i, keep[k], strides, dims);
        out[j] += state[i];
    }
    return DiagonalState(std::move(out), std::move(out_dims));
}

double energy(const DiagonalState& state, const DiagonalHamiltonian& h) {
    if (state.dims() != h.dims())
        throw ShapeError("state and Hamiltonian dimensions disagree");
    return h.energies().dot(state.probs());
}

double entropy(const DiagonalState& state) {
    double s = 0.0;
    for (long i = 0; i < state.dim(); ++i) {
        const double p = state[i];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double binary_entropy(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw DomainError("binary entropy argument outside [0, 1]");
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
    return s;
}

double binary_entropy_diff(double a, double e) {
    if (e == 0.0) return 0.0;
    const double b = a + e;
    if (std::isnan(a) || std::isnan(e) || a < 0.0 || a > 1.0 || b < -1e-15 ||
        b > 1.0 + 1e-15)
        throw DomainError("binary entropy difference arguments outside [0, 1]");
    if (a <= 0.0 || a >= 1.0 || b <= 0.0 || b >= 1.0)
        return binary_entropy(std::clamp(b, 0.0, 1.0)) - binary_entropy(a);
    // h(a+e) - h(a) rewritten without cancellation:
    //   e log((1-a)/a) - (a+e) log1p(e/a) - (1-a-e) log1p(-e/(1-a))
    const double qa = 1.0 - a;
    return e * (std::log(qa) - std::log(a)) - b * std::log1p(e / a) -
           (qa - e) * std::log1p(-e / qa);
}

double relative_entropy(const DiagonalState& a, const DiagonalState& b) {
    if (a.dims() != b.dims())
        throw ShapeError("relative entropy operands have different shapes");
    double d = 0.0;
    for (long i = 0; i < a.dim(); ++i) {
        if (a[i] == 0.0) continue;
        if (b[i] == 0.0) return kInf;
        d += a[i] * std::log(a[i] / b[i]);
    }
    return d;
}

double mutual_information(const DiagonalState& joint,
                          const std::vector<int>& x_subsystems) {
    const int n = joint.subsystems();
    if (x_subsystems.empty() ||
        static_cast<int>(x_subsystems.size()) >= n)
        throw DomainError("partition must be a proper nonempty subset");
    std::vector<bool> in_x(n, false);
    int last = -1;
    for (int k : x_subsystems) {
        if (k <= last || k >= n)
            throw DomainError("partition indices must be ascending and in range");
        in_x[k] = true;
        last = k;
    }
    std::vector<int> y;
    for (int k = 0; k < n; ++k)
        if (!in_x[k]) y.push_back(k);
    return entropy(marginal(joint, x_subsystems)) +
           entropy(marginal(joint, y)) - entropy(joint);
}

double trace_distance(const DiagonalState& a, const DiagonalState& b) {
    if (a.dims() != b.dims())
        throw ShapeError("trace distance operands have different shapes");
    return 0.5 * (a.probs() - b.probs()).cwiseAbs().sum();
}

} // namespace algocool
