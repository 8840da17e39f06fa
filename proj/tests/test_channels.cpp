#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "algocool/channels.hpp"
#include "algocool/errors.hpp"
#include "algocool/state.hpp"

using namespace algocool;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<long>(v.size()));
    long i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

bool columns_sum_to_one(const TransitionMatrix& g, double tol = 1e-12) {
    const Eigen::MatrixXd m = g.dense();
    for (long j = 0; j < m.cols(); ++j) {
        if (std::abs(m.col(j).sum() - 1.0) > tol) return false;
        for (long i = 0; i < m.rows(); ++i)
            if (m(i, j) < -tol) return false;
    }
    return true;
}

DiagonalState random_state(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = u(rng);
    v /= v.sum();
    std::vector<int> dims;
    for (int d = dim; d > 1; d /= 2) dims.push_back(2);
    return DiagonalState(v, dims);
}

} // namespace

TEST_CASE("dense constructor validates stochasticity") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.9, 0.5, 0.2, 0.5;
    CHECK_THROWS_AS(
        TransitionMatrix::from_dense(bad, StepKind::Control, {2}),
        DomainError);

    Eigen::MatrixXd neg(2, 2);
    neg << 1.1, 0.0, -0.1, 1.0;
    CHECK_THROWS_AS(
        TransitionMatrix::from_dense(neg, StepKind::Control, {2}),
        DomainError);

    Eigen::MatrixXd ok(2, 2);
    ok << 0.9, 0.4, 0.1, 0.6;
    const TransitionMatrix g =
        TransitionMatrix::from_dense(ok, StepKind::Control, {2});
    const Eigen::VectorXd out = g.apply(vec({0.5, 0.5}));
    CHECK(out[0] == doctest::Approx(0.65).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(0.35).epsilon(1e-15));
}

TEST_CASE("permutation constructor requires a bijection") {
    CHECK_THROWS_AS(TransitionMatrix::from_permutation({0, 0}, StepKind::Control,
                                                       {2}),
                    DomainError);
    const TransitionMatrix g =
        TransitionMatrix::from_permutation({1, 0}, StepKind::Control, {2});
    const Eigen::VectorXd out = g.apply(vec({0.3, 0.7}));
    CHECK(out[0] == 0.7);
    CHECK(out[1] == 0.3);
    CHECK(columns_sum_to_one(g));
}

TEST_CASE("reset form keeps the retained marginal") {
    const DiagonalState joint(vec({0.1, 0.2, 0.3, 0.4}), {2, 2});
    const Eigen::VectorXd fresh = vec({0.6, 0.4});
    const TransitionMatrix g =
        TransitionMatrix::reset({2, 2}, {1}, {fresh});
    const DiagonalState out = g.apply(joint);
    // retained qubit marginal is unchanged, reset factor is replaced
    CHECK(out[0] == doctest::Approx(0.3 * 0.6).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(0.3 * 0.4).epsilon(1e-14));
    CHECK(out[2] == doctest::Approx(0.7 * 0.6).epsilon(1e-14));
    CHECK(out[3] == doctest::Approx(0.7 * 0.4).epsilon(1e-14));
    CHECK(columns_sum_to_one(g));

    CHECK_THROWS_AS(TransitionMatrix::reset({2, 2}, {1}, {vec({0.6, 0.3})}),
                    DomainError);
    CHECK_THROWS_AS(TransitionMatrix::reset({2, 2}, {1}, {vec({0.5, 0.3, 0.2})}),
                    ShapeError);
}

TEST_CASE("single-qubit relaxation resets to thermal") {
    const double bw = 0.9;
    const TransitionMatrix g = gamma1(bw);
    const DiagonalState th = thermal_qubit(bw);
    const Eigen::VectorXd out = g.apply(vec({0.1, 0.9}));
    CHECK(out[0] == doctest::Approx(th[0]).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(th[1]).epsilon(1e-15));
    CHECK(is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(1), bw));
}

TEST_CASE("pair relaxation mixes only the double-gap pair") {
    const double bw = 1.0;
    const TransitionMatrix g = gamma2(bw);
    const double p2 = 1.0 / (1.0 + std::exp(-2.0 * bw));

    const Eigen::VectorXd from_top = g.apply(vec({1.0, 0.0, 0.0, 0.0}));
    CHECK(from_top[0] == doctest::Approx(p2).epsilon(1e-15));
    CHECK(from_top[3] == doctest::Approx(1.0 - p2).epsilon(1e-15));
    CHECK(from_top[1] == 0.0);
    CHECK(from_top[2] == 0.0);

    // single-excitation populations are untouched
    const Eigen::VectorXd mid = g.apply(vec({0.0, 0.4, 0.6, 0.0}));
    CHECK(mid[1] == 0.4);
    CHECK(mid[2] == 0.6);

    CHECK(is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(2), bw));
    CHECK(columns_sum_to_one(g));
}

TEST_CASE("beta-swap pumps all excited weight down") {
    const double bw = 0.7;
    const double s = std::exp(-bw);
    const TransitionMatrix g = beta_swap(bw);
    const Eigen::MatrixXd m = g.dense();
    CHECK(m(0, 0) == doctest::Approx(1.0 - s).epsilon(1e-15));
    CHECK(m(1, 0) == doctest::Approx(s).epsilon(1e-15));
    CHECK(m(0, 1) == 1.0);
    CHECK(m(1, 1) == 0.0);
    CHECK(is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(1), bw));
    CHECK_THROWS_AS(beta_swap(-0.1), DomainError);

    // ground population iterates p -> 1 - s p
    const DiagonalState th = thermal_qubit(bw);
    Eigen::VectorXd v = g.apply(g.apply(th.probs()));
    CHECK(v[0] ==
          doctest::Approx(1.0 - s * (1.0 - s * th[0])).epsilon(1e-13));
}

TEST_CASE("complete mixing and bit flip") {
    const TransitionMatrix mix = cms_on({2, 2}, 1);
    const Eigen::VectorXd out = mix.apply(vec({0.1, 0.2, 0.3, 0.4}));
    CHECK(out[0] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(out[3] == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(mix.kind() == StepKind::Control);

    const TransitionMatrix flip = pauli_x_on({2, 2}, 0);
    const Eigen::VectorXd f = flip.apply(vec({0.1, 0.2, 0.3, 0.4}));
    CHECK(f[0] == 0.3);
    CHECK(f[1] == 0.4);
    CHECK(f[2] == 0.1);
    CHECK(f[3] == 0.2);

    CHECK_THROWS_AS(cms_on({2, 3}, 1), DomainError);
    CHECK_THROWS_AS(pauli_x_on({2, 2}, 2), DomainError);
}

TEST_CASE("three-qubit compression swaps the middle pair") {
    const TransitionMatrix u = u_ppa3();
    const auto& src = u.permutation();
    CHECK(src[3] == 4);
    CHECK(src[4] == 3);
    for (long k : {0L, 1L, 2L, 5L, 6L, 7L}) CHECK(src[k] == k);

    // on a thermal register it agrees with a full descending sort
    const DiagonalState th = thermal_qubit_register(3, 1.2);
    const TransitionMatrix s = sort_compression(th);
    const Eigen::VectorXd a = u.apply(th.probs());
    const Eigen::VectorXd b = s.apply(th.probs());
    for (long i = 0; i < 8; ++i) CHECK(a[i] == b[i]); // exact, ties stable
}

TEST_CASE("sort compression orders populations descending") {
    const DiagonalState st = random_state(8, 42u);
    const Eigen::VectorXd out = sort_compression(st).apply(st.probs());
    for (long i = 0; i + 1 < out.size(); ++i) CHECK(out[i] >= out[i + 1]);

    // sorting an already sorted state is the identity permutation
    const DiagonalState sorted(out, st.dims());
    const TransitionMatrix resort = sort_compression(sorted);
    const auto& src = resort.permutation();
    for (long k = 0; k < sorted.dim(); ++k) CHECK(src[k] == k);
}

TEST_CASE("energy-ordered compression fills the cold block greedily") {
    // register: qubit + 3-level ladder
    const DiagonalState st(vec({0.05, 0.30, 0.20, 0.25, 0.15, 0.05}), {2, 3});
    const DiagonalHamiltonian h = DiagonalHamiltonian::qubit_plus_oscillator(3);
    const TransitionMatrix g = energy_ordered_compression(st, h, 0);
    const Eigen::VectorXd out = g.apply(st.probs());
    // target-ground block must hold the three largest populations,
    // placed at ascending machine energy
    CHECK(out[0] == 0.30);
    CHECK(out[1] == 0.25);
    CHECK(out[2] == 0.20);
    CHECK(out.head(3).sum() == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_THROWS_AS(energy_ordered_compression(
                        st, DiagonalHamiltonian::uniform_qubits(2), 0),
                    ShapeError);
}

TEST_CASE("thermal reset channel and lift") {
    const double bw = 1.1;
    const TransitionMatrix g = reset_qubits({2, 2, 2}, {1, 2}, bw);
    const DiagonalState st = random_state(8, 7u);
    const DiagonalState out = g.apply(st);
    const DiagonalState target = marginal(st, {0});
    const DiagonalState expect =
        product(target, thermal_qubit_register(2, bw));
    for (long i = 0; i < 8; ++i)
        CHECK(out[i] == doctest::Approx(expect[i]).epsilon(1e-13));
    CHECK(is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(3), bw));

    // lift agrees with the dense tensor embedding
    const TransitionMatrix local = gamma1(bw);
    const TransitionMatrix lifted = lift(local, {2, 2}, {1});
    const Eigen::MatrixXd dm = lifted.dense();
    const Eigen::MatrixXd lm = local.dense();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    const double expect_entry =
                        (a == c ? 1.0 : 0.0) * lm(b, d);
                    CHECK(dm(2 * a + b, 2 * c + d) ==
                          doctest::Approx(expect_entry).epsilon(1e-15));
                }
    CHECK_THROWS_AS(lift(local, {2, 3}, {1}), ShapeError);
}

TEST_CASE("gibbs check detects non-thermal fixed points") {
    const TransitionMatrix g = gamma1(1.0);
    CHECK(is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(1), 1.0));
    CHECK_FALSE(
        is_gibbs_stochastic(g, DiagonalHamiltonian::uniform_qubits(1), 0.5));

    // permutations conserve energy only if they fix the Gibbs state
    const TransitionMatrix swap01 =
        TransitionMatrix::from_permutation({1, 0}, StepKind::Thermalization,
                                           {2});
    CHECK_FALSE(
        is_gibbs_stochastic(swap01, DiagonalHamiltonian::uniform_qubits(1),
                            1.0));
    CHECK(is_gibbs_stochastic(swap01, DiagonalHamiltonian::uniform_qubits(1),
                              0.0));
}
