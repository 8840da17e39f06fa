#include "algocool/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace algocool {

namespace {

long dims_product(const std::vector<int>& dims) {
    long n = 1;
    for (int d : dims) {
        if (d < 2) throw ShapeError("subsystem dimension must be >= 2");
        n *= d;
    }
    return n;
}

void check_positions(const std::vector<int>& positions,
                     const std::vector<int>& dims) {
    if (positions.empty())
        throw DomainError("position set must be nonempty");
    int last = -1;
    for (int p : positions) {
        if (p <= last || p >= static_cast<int>(dims.size()))
            throw DomainError("positions must be ascending and in range");
        last = p;
    }
}

} // namespace

TransitionMatrix TransitionMatrix::from_dense(Eigen::MatrixXd columns,
                                              StepKind kind,
                                              std::vector<int> dims) {
    if (columns.rows() != columns.cols())
        throw ShapeError("transition matrix must be square");
    if (dims_product(dims) != columns.rows())
        throw ShapeError("transition matrix size does not match dims");
    for (long j = 0; j < columns.cols(); ++j) {
        double sum = 0.0;
        for (long i = 0; i < columns.rows(); ++i) {
            double& g = columns(i, j);
            if (std::isnan(g)) throw DomainError("transition entry is NaN");
            if (g < 0.0) {
                if (g < -kStochasticTol)
                    throw DomainError("transition entry below -1e-12");
                g = 0.0;
            }
            sum += g;
        }
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw DomainError("column of transition matrix does not sum to 1");
    }
    TransitionMatrix t;
    t.form_ = Form::Dense;
    t.kind_ = kind;
    t.dim_ = static_cast<int>(columns.rows());
    t.dims_ = std::move(dims);
    t.matrix_ = std::move(columns);
    return t;
}

TransitionMatrix TransitionMatrix::from_permutation(std::vector<long> source_of,
                                                    StepKind kind,
                                                    std::vector<int> dims) {
    const long n = static_cast<long>(source_of.size());
    if (dims_product(dims) != n)
        throw ShapeError("permutation size does not match dims");
    std::vector<bool> seen(n, false);
    for (long s : source_of) {
        if (s < 0 || s >= n || seen[s])
            throw DomainError("source map is not a permutation");
        seen[s] = true;
    }
    TransitionMatrix t;
    t.form_ = Form::Permutation;
    t.kind_ = kind;
    t.dim_ = static_cast<int>(n);
    t.dims_ = std::move(dims);
    t.source_of_ = std::move(source_of);
    return t;
}

TransitionMatrix TransitionMatrix::reset(std::vector<int> dims,
                                         std::vector<int> positions,
                                         std::vector<Eigen::VectorXd> fresh) {
    check_positions(positions, dims);
    if (fresh.size() != positions.size())
        throw ShapeError("one fresh factor is required per reset position");
    for (size_t k = 0; k < positions.size(); ++k) {
        if (fresh[k].size() != dims[positions[k]])
            throw ShapeError("fresh factor does not match subsystem dimension");
        double sum = 0.0;
        for (long i = 0; i < fresh[k].size(); ++i) {
            if (fresh[k][i] < 0.0)
                throw DomainError("fresh factor entry is negative");
            sum += fresh[k][i];
        }
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw DomainError("fresh factor does not sum to 1");
    }
    TransitionMatrix t;
    t.form_ = Form::Reset;
    t.kind_ = StepKind::Thermalization;
    t.dim_ = static_cast<int>(dims_product(dims));
    t.positions_ = std::move(positions);
    t.fresh_ = std::move(fresh);
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
        if (!std::binary_search(t.positions_.begin(), t.positions_.end(), k))
            t.kept_.push_back(k);
    t.dims_ = std::move(dims);
    return t;
}

Eigen::VectorXd TransitionMatrix::apply(const Eigen::VectorXd& in) const {
    if (in.size() != dim_)
        throw ShapeError("vector size does not match transition matrix");
    switch (form_) {
    case Form::Dense:
        return matrix_ * in;
    case Form::Permutation: {
        Eigen::VectorXd out(dim_);
        for (long k = 0; k < dim_; ++k) out[k] = in[source_of_[k]];
        return out;
    }
    case Form::Reset: {
        const auto strides = mixed_radix_strides(dims_);
        // Marginal over the kept subsystems.
        long kept_dim = 1;
        for (int k : kept_) kept_dim *= dims_[k];
        Eigen::VectorXd marg = Eigen::VectorXd::Ones(1);
        if (!kept_.empty()) {
            marg = Eigen::VectorXd::Zero(kept_dim);
            for (long i = 0; i < dim_; ++i) {
                long j = 0;
                for (int k : kept_)
                    j = j * dims_[k] + digit_at(i, k, strides, dims_);
                marg[j] += in[i];
            }
        }
        Eigen::VectorXd out(dim_);
        for (long i = 0; i < dim_; ++i) {
            long j = 0;
            for (int k : kept_)
                j = j * dims_[k] + digit_at(i, k, strides, dims_);
            double v = marg[j];
            for (size_t k = 0; k < positions_.size(); ++k)
                v *= fresh_[k][digit_at(i, positions_[k], strides, dims_)];
            out[i] = v;
        }
        return out;
    }
    }
    throw DomainError("unknown transition matrix form");
}

DiagonalState TransitionMatrix::apply(const DiagonalState& in) const {
    if (in.dims() != dims_)
        throw ShapeError("state register does not match transition matrix");
    return DiagonalState(apply(in.probs()), dims_);
}

Eigen::MatrixXd TransitionMatrix::dense() const {
    if (dim_ > kDenseLimit)
        throw ShapeError("dense form limited to 4096 states");
    switch (form_) {
    case Form::Dense:
        return matrix_;
    case Form::Permutation: {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
        for (long k = 0; k < dim_; ++k) m(k, source_of_[k]) = 1.0;
        return m;
    }
    case Form::Reset: {
        Eigen::MatrixXd m(dim_, dim_);
        for (long j = 0; j < dim_; ++j) {
            Eigen::VectorXd col = Eigen::VectorXd::Zero(dim_);
            col[j] = 1.0;
            m.col(j) = apply(col);
        }
        return m;
    }
    }
    throw DomainError("unknown transition matrix form");
}

const std::vector<long>& TransitionMatrix::permutation() const {
    if (form_ != Form::Permutation)
        throw DomainError("transition matrix is not a permutation");
    return source_of_;
}

TransitionMatrix gamma1(double beta_omega) {
    const DiagonalState th = thermal_qubit(beta_omega);
    Eigen::MatrixXd g(2, 2);
    g << th[0], th[0], th[1], th[1];
    return TransitionMatrix::from_dense(std::move(g),
                                        StepKind::Thermalization, {2});
}

TransitionMatrix gamma2(double beta_omega) {
    if (std::isnan(beta_omega)) throw DomainError("beta*omega is NaN");
    const double p2 = 1.0 / (1.0 + std::exp(-2.0 * beta_omega));
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
    g(0, 0) = p2;
    g(3, 0) = 1.0 - p2;
    g(1, 1) = 1.0;
    g(2, 2) = 1.0;
    g(0, 3) = p2;
    g(3, 3) = 1.0 - p2;
    return TransitionMatrix::from_dense(std::move(g),
                                        StepKind::Thermalization, {2, 2});
}

TransitionMatrix cms_on(const std::vector<int>& dims, int pos) {
    check_positions({pos}, dims);
    if (dims[pos] != 2)
        throw DomainError("complete mixing is defined for a qubit");
    Eigen::MatrixXd g(2, 2);
    g << 0.5, 0.5, 0.5, 0.5;
    return lift(TransitionMatrix::from_dense(std::move(g), StepKind::Control,
                                             {2}),
                dims, {pos});
}

TransitionMatrix pauli_x_on(const std::vector<int>& dims, int pos) {
    check_positions({pos}, dims);
    if (dims[pos] != 2) throw DomainError("bit flip is defined for a qubit");
    std::vector<long> flip = {1, 0};
    return lift(TransitionMatrix::from_permutation(std::move(flip),
                                                   StepKind::Control, {2}),
                dims, {pos});
}

TransitionMatrix beta_swap(double beta_omega) {
    if (std::isnan(beta_omega) || beta_omega < 0.0)
        throw DomainError("beta-swap requires beta*omega >= 0");
    const double s = std::exp(-beta_omega);
    Eigen::MatrixXd g(2, 2);
    g << 1.0 - s, 1.0, s, 0.0;
    return TransitionMatrix::from_dense(std::move(g),
                                        StepKind::Thermalization, {2});
}

TransitionMatrix u_ppa3() {
    std::vector<long> src(8);
    std::iota(src.begin(), src.end(), 0);
    std::swap(src[3], src[4]);
    return TransitionMatrix::from_permutation(std::move(src),
                                              StepKind::Control, {2, 2, 2});
}

TransitionMatrix sort_compression(const DiagonalState& state) {
    std::vector<long> idx(state.dim());
    std::iota(idx.begin(), idx.end(), 0);
    const Eigen::VectorXd& v = state.probs();
    std::stable_sort(idx.begin(), idx.end(),
                     [&v](long a, long b) { return v[a] > v[b]; });
    return TransitionMatrix::from_permutation(std::move(idx),
                                              StepKind::Control, state.dims());
}

TransitionMatrix energy_ordered_compression(const DiagonalState& state,
                                            const DiagonalHamiltonian& h,
                                            int target_position) {
    if (state.dims() != h.dims())
        throw ShapeError("state and Hamiltonian dimensions disagree");
    const auto& dims = state.dims();
    check_positions({target_position}, dims);
    if (dims[target_position] != 2)
        throw DomainError("compression target must be a qubit");
    const auto strides = mixed_radix_strides(dims);

    // Machine basis ordered by (energy ascending, index ascending).
    std::vector<int> machine;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
        if (k != target_position) machine.push_back(k);
    long machine_dim = 1;
    for (int k : machine) machine_dim *= dims[k];
    std::vector<long> machine_order(machine_dim);
    std::iota(machine_order.begin(), machine_order.end(), 0);
    std::vector<double> machine_energy(machine_dim);
    const auto machine_strides = mixed_radix_strides([&] {
        std::vector<int> md;
        for (int k : machine) md.push_back(dims[k]);
        return md;
    }());
    std::vector<int> machine_dims;
    for (int k : machine) machine_dims.push_back(dims[k]);
    for (long m = 0; m < machine_dim; ++m) {
        double e = 0.0;
        for (size_t k = 0; k < machine.size(); ++k)
            e += h.locals()[machine[k]]
                          [digit_at(m, static_cast<int>(k), machine_strides,
                                    machine_dims)];
        machine_energy[m] = e;
    }
    std::stable_sort(machine_order.begin(), machine_order.end(),
                     [&](long a, long b) {
                         return machine_energy[a] < machine_energy[b];
                     });

    // Basis sequence: target ground block first, machine energy ascending.
    std::vector<long> basis(state.dim());
    long r = 0;
    for (int tau = 0; tau < 2; ++tau) {
        for (long m = 0; m < machine_dim; ++m) {
            long full = tau * strides[target_position];
            for (size_t k = 0; k < machine.size(); ++k)
                full += strides[machine[k]] *
                        digit_at(machine_order[m], static_cast<int>(k),
                                 machine_strides, machine_dims);
            basis[r++] = full;
        }
    }

    // Stable descending sort of populations along that sequence.
    const Eigen::VectorXd& v = state.probs();
    std::vector<long> rank(state.dim());
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](long a, long b) {
        return v[basis[a]] > v[basis[b]];
    });
    std::vector<long> src(state.dim());
    for (long k = 0; k < state.dim(); ++k) src[basis[k]] = basis[rank[k]];
    return TransitionMatrix::from_permutation(std::move(src),
                                              StepKind::Control, dims);
}

TransitionMatrix reset_qubits(const std::vector<int>& dims,
                              const std::vector<int>& positions,
                              double beta_omega) {
    check_positions(positions, dims);
    std::vector<Eigen::VectorXd> fresh;
    for (int p : positions) {
        if (dims[p] == 2)
            fresh.push_back(thermal_qubit(beta_omega).probs());
        else
            fresh.push_back(thermal_oscillator(beta_omega, dims[p]).probs());
    }
    return TransitionMatrix::reset(dims, positions, std::move(fresh));
}

TransitionMatrix lift(const TransitionMatrix& local,
                      const std::vector<int>& dims,
                      const std::vector<int>& positions) {
    check_positions(positions, dims);
    if (static_cast<size_t>(positions.size()) != local.dims().size())
        throw ShapeError("lift positions do not match local operator arity");
    for (size_t k = 0; k < positions.size(); ++k)
        if (dims[positions[k]] != local.dims()[k])
            throw ShapeError("lift positions do not match local dimensions");
    const long full_dim = dims_product(dims);
    const auto strides = mixed_radix_strides(dims);
    const auto local_strides = mixed_radix_strides(local.dims());

    // Sub-index of the local register inside a full index.
    auto local_index = [&](long i) {
        long l = 0;
        for (size_t k = 0; k < positions.size(); ++k)
            l += local_strides[k] * digit_at(i, positions[k], strides, dims);
        return l;
    };
    // Full index with the local digits replaced.
    auto replace = [&](long i, long l) {
        long out = i;
        for (size_t k = 0; k < positions.size(); ++k) {
            const int old_digit = digit_at(i, positions[k], strides, dims);
            const int new_digit = digit_at(l, static_cast<int>(k),
                                           local_strides, local.dims());
            out += (new_digit - old_digit) * strides[positions[k]];
        }
        return out;
    };

    switch (local.form()) {
    case TransitionMatrix::Form::Permutation: {
        std::vector<long> src(full_dim);
        for (long i = 0; i < full_dim; ++i)
            src[i] = replace(i, local.permutation()[local_index(i)]);
        return TransitionMatrix::from_permutation(std::move(src), local.kind(),
                                                  dims);
    }
    case TransitionMatrix::Form::Dense: {
        if (full_dim > TransitionMatrix::kDenseLimit)
            throw ShapeError("dense lift limited to 4096 states");
        const Eigen::MatrixXd g = local.dense();
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(full_dim, full_dim);
        for (long j = 0; j < full_dim; ++j) {
            const long lj = local_index(j);
            for (long li = 0; li < g.rows(); ++li)
                out(replace(j, li), j) = g(li, lj);
        }
        return TransitionMatrix::from_dense(std::move(out), local.kind(), dims);
    }
    case TransitionMatrix::Form::Reset:
        throw DomainError("lifting a reset map is not supported");
    }
    throw DomainError("unknown transition matrix form");
}

bool is_gibbs_stochastic(const TransitionMatrix& g,
                         const DiagonalHamiltonian& h, double beta) {
    if (h.dim() != g.dim())
        throw ShapeError("Hamiltonian does not match transition matrix");
    const Eigen::VectorXd th = thermal_state(h, beta).probs();
    return (g.apply(th) - th).lpNorm<Eigen::Infinity>() < 1e-10;
}

} // namespace algocool
