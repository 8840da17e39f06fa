#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "algocool/analytics.hpp"
#include "algocool/errors.hpp"

using namespace algocool;

namespace {
constexpr double kBw = 1.0;
// frozen scalars for beta*omega = 1
constexpr double kP = 0.7310585786300049;
constexpr double kP2 = 0.8807970779778823;
constexpr double kEps = 0.46211715726000974;
constexpr double kS = 0.36787944117144233;
} // namespace

TEST_CASE("bath parameter bundles") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    CHECK(b.p == doctest::Approx(kP).epsilon(1e-15));
    CHECK(b.q == doctest::Approx(1.0 - kP).epsilon(1e-14));
    CHECK(b.eps == doctest::Approx(kEps).epsilon(1e-15));
    CHECK(b.p2 == doctest::Approx(kP2).epsilon(1e-15));
    CHECK(b.s == doctest::Approx(kS).epsilon(1e-15));

    const BathParams be = BathParams::from_polarization(kEps);
    CHECK(be.beta_omega == doctest::Approx(kBw).epsilon(1e-13));
    const BathParams bp = BathParams::from_ground_pop(kP);
    CHECK(bp.beta_omega == doctest::Approx(kBw).epsilon(1e-13));

    CHECK_THROWS_AS(BathParams::from_ground_pop(1.5), DomainError);
    CHECK_THROWS_AS(BathParams::from_polarization(-1.2), DomainError);
}

TEST_CASE("three-qubit sorting closed forms") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    CHECK(population_closed_form(Protocol::PPA, b, 0) ==
          doctest::Approx(kP).epsilon(1e-15));
    CHECK(population_closed_form(Protocol::PPA, b, 3) ==
          doctest::Approx(0.8716926412101033).epsilon(1e-14));
    CHECK(work_closed_form(Protocol::PPA, b, 3) ==
          doctest::Approx(0.014048880067259798).epsilon(1e-14));
    CHECK(cumulative_work_closed_form(Protocol::PPA, b, 3) ==
          doctest::Approx(0.14063406258009847).epsilon(1e-14));
    // every round moves as much target energy as it costs
    for (int N = 1; N <= 6; ++N) {
        CHECK(cop_closed_form(Protocol::PPA, b, N) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(cumulative_cop_closed_form(Protocol::PPA, b, N) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(target_energy_drop_closed_form(Protocol::PPA, b, N) ==
              doctest::Approx(work_closed_form(Protocol::PPA, b, N))
                  .epsilon(1e-13));
    }
    CHECK_THROWS_AS(work_closed_form(Protocol::PPA, b, 0), DomainError);
    CHECK_THROWS_AS(population_closed_form(Protocol::SingleShot, b, 1),
                    DomainError);
}

TEST_CASE("mixing protocol closed forms") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    CHECK(population_closed_form(Protocol::NOE2, b, 3) ==
          doctest::Approx(0.8620797655593977).epsilon(1e-14));
    CHECK(work_closed_form(Protocol::NOE2, b, 1) ==
          doctest::Approx(0.2310585786300049).epsilon(1e-14));
    CHECK(work_closed_form(Protocol::NOE2, b, 3) ==
          doctest::Approx(0.037434624836969355).epsilon(1e-14));
    CHECK(cop_closed_form(Protocol::NOE2, b, 1) ==
          doctest::Approx(0.32402713683194234).epsilon(1e-13));
    CHECK(cop_closed_form(Protocol::NOE2, b, 2) ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK(cumulative_cop_closed_form(Protocol::NOE2, b, 3) ==
          doctest::Approx(0.3815827436310364).epsilon(1e-13));
    // population override: starting from p0 = p2 nothing changes
    CHECK(population_closed_form(Protocol::NOE2, b, 5, b.p2) ==
          doctest::Approx(b.p2).epsilon(1e-14));
}

TEST_CASE("two-qubit swap protocol closed forms") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    const double w3 = 1.0 / (1.0 + std::exp(-3.0));
    CHECK(population_closed_form(Protocol::SR2, b, 3) ==
          doctest::Approx(0.9450379971145614).epsilon(1e-14));
    // constant work per round
    for (int N = 1; N <= 4; ++N)
        CHECK(work_closed_form(Protocol::SR2, b, N) ==
              doctest::Approx(2.0 * b.p - 1.0).epsilon(1e-14));
    CHECK(target_energy_drop_closed_form(Protocol::SR2, b, 3) ==
          doctest::Approx(0.015721581919474283).epsilon(1e-13));
    CHECK(cop_closed_form(Protocol::SR2, b, 3) ==
          doctest::Approx(0.03402077086401826).epsilon(1e-13));
    CHECK(cumulative_cop_closed_form(Protocol::SR2, b, 3) ==
          doctest::Approx(0.15434716436648907).epsilon(1e-13));
    // asymptotic population is the tripled-gap thermal value
    CHECK(population_closed_form(Protocol::SR2, b, 200) ==
          doctest::Approx(w3).epsilon(1e-13));
}

TEST_CASE("flip-pump protocol closed forms") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    CHECK(population_closed_form(Protocol::XHBAC1, b, 3) ==
          doctest::Approx(0.9866101950673015).epsilon(1e-14));
    CHECK(work_closed_form(Protocol::XHBAC1, b, 3) ==
          doctest::Approx(0.927205473129669).epsilon(1e-14));
    CHECK(cumulative_work_closed_form(Protocol::XHBAC1, b, 3) ==
          doctest::Approx(2.1914465907867844).epsilon(1e-13));
    // the pump ends at a pure target: population tends to one
    CHECK(population_closed_form(Protocol::XHBAC1, b, 120) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("amplification factors") {
    CHECK(protocol_alpha(Protocol::PPA, 3) == 2.0);
    CHECK(protocol_alpha(Protocol::PPA, 4) == 4.0);
    CHECK(protocol_alpha(Protocol::PPA, 5) == 8.0);
    CHECK(protocol_alpha(Protocol::NOE2, 2) == 2.0);
    CHECK(protocol_alpha(Protocol::SR2, 2) == 3.0);
    CHECK(std::isinf(protocol_alpha(Protocol::XHBAC1, 1)));
    CHECK(protocol_alpha(Protocol::ImprovedPPA, 5) == 4.0);
    CHECK(protocol_alpha(Protocol::SingleShot, 5) == 3.0);
    CHECK(protocol_alpha(Protocol::SingleShot, 6) == 3.0);
    CHECK(compression_alpha(3, 2) == 6.0);
}

TEST_CASE("unified asymptotics") {
    const BathParams b = BathParams::from_beta_omega(kBw);
    CHECK(unified_limit(b.eps, 2.0) ==
          doctest::Approx(0.7615941559557649).epsilon(1e-15));
    CHECK(unified_limit(b.eps, std::numeric_limits<double>::infinity()) ==
          1.0);
    CHECK(unified_rate(Protocol::PPA, b) ==
          doctest::Approx(0.3932238664829637).epsilon(1e-14));
    CHECK(unified_rate(Protocol::NOE2, b) == 0.5);
    CHECK(unified_rate(Protocol::XHBAC1, b) ==
          doctest::Approx(kS).epsilon(1e-15));
    CHECK(unified_rate(Protocol::SR2, b) ==
          doctest::Approx(0.5 * (1.0 - b.eps * b.eps) /
                          (1.0 + b.eps * b.eps))
              .epsilon(1e-14));

    // N = 0 gives the bath, N -> inf the limit
    CHECK(unified_evolution(Protocol::PPA, b, 0) ==
          doctest::Approx(b.eps).epsilon(1e-15));
    CHECK(unified_evolution(Protocol::PPA, b, 400) ==
          doctest::Approx(unified_limit(b.eps, 2.0)).epsilon(1e-14));
    // geometric approach
    const double e1 = unified_evolution(Protocol::PPA, b, 1);
    const double einf = unified_limit(b.eps, 2.0);
    CHECK((einf - e1) / (einf - b.eps) ==
          doctest::Approx(unified_rate(Protocol::PPA, b)).epsilon(1e-13));
}

TEST_CASE("one-shot sorting bound") {
    CHECK(q_max(3, 0.6) == doctest::Approx(0.648).epsilon(1e-15));
    CHECK(q_max(4, 0.6) == doctest::Approx(0.648).epsilon(1e-15));
    CHECK(q_max(5, 0.7) == doctest::Approx(0.83692).epsilon(1e-14));
    CHECK(q_max(1, 0.75) == 0.75);
    CHECK(q_max(2, 0.8) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(q_max(3, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_max(3, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(q_max(0, 0.6), DomainError);
    CHECK_THROWS_AS(q_max(3, 0.4), DomainError);

    // odd-to-even plateau: adding one qubit to odd n gains nothing
    for (double p : {0.55, 0.65, 0.85})
        CHECK(q_max(3, p) == doctest::Approx(q_max(4, p)).epsilon(1e-14));
}

TEST_CASE("gaussian estimate of the sorting limit") {
    const CltLimit c = clt_cooling_limit(100, 0.1);
    CHECK(c.mu == doctest::Approx(0.7106690545187014).epsilon(1e-14));
    CHECK(c.eps_full == doctest::Approx(0.6851213586635801).epsilon(1e-13));
    CHECK(c.eps_half == doctest::Approx(0.5 * c.eps_full).epsilon(1e-15));

    // the full reading tracks the exact bound for moderate registers
    const double exact = 2.0 * q_max(25, 0.55) - 1.0;
    const CltLimit c25 = clt_cooling_limit(25, 0.1);
    CHECK(std::abs(c25.eps_full - exact) < 0.05);
    CHECK(std::abs(c25.eps_half - exact) > 0.15); // halved reading does not
}

TEST_CASE("entropy drop series matches the direct difference") {
    for (double ef : {0.1, 0.4621171572600097})
        for (double et : {0.3, 0.76, 0.999}) {
            const double direct =
                binary_entropy(0.5 * (1.0 + ef)) -
                binary_entropy(0.5 * (1.0 + et));
            CHECK(polarization_entropy_drop(ef, et) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    // near-degenerate drops stay fully resolved
    const double tiny = polarization_entropy_drop(0.5, 0.5 + 1e-9);
    CHECK(tiny == doctest::Approx(1e-9 * std::atanh(0.5) * 2.0 * 0.5)
                      .epsilon(1e-4));
    CHECK(tiny > 0.0);
}

TEST_CASE("cumulative heat-to-entropy ratio of the sorting protocol") {
    CHECK(ppa3_landauer_closed_form(1e-4, 60) ==
          doctest::Approx(1.3333333355555554).epsilon(1e-12));
    // monotone decrease towards the floor as the bath dilutes
    CHECK(ppa3_landauer_closed_form(1e-2, 60) >
          ppa3_landauer_closed_form(1e-3, 60));
    CHECK(ppa3_landauer_closed_form(1e-6, 200) ==
          doctest::Approx(kPpa3LandauerFloor).epsilon(1e-8));
    // warm bath, one round
    CHECK(ppa3_landauer_closed_form(0.4621171572600097, 1) > 1.0);
}

TEST_CASE("qubit plus ladder closed forms") {
    const ImprovedXhbacClosedForm f = improved_xhbac_closed_form(1.0);
    CHECK(f.E_initial == doctest::Approx(0.8509181282393216).epsilon(1e-14));
    CHECK(f.E_final == doctest::Approx(1.4328948351086481).epsilon(1e-14));
    CHECK(f.work == doctest::Approx(0.5819767068693265).epsilon(1e-14));
    CHECK(f.target_energy_drop ==
          doctest::Approx(0.2689414213699951).epsilon(1e-14));
    CHECK(f.cop == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
    // energy conservation: all injected work lands in the system
    CHECK(f.E_final - f.E_initial ==
          doctest::Approx(f.work).epsilon(1e-13));
    CHECK_THROWS_AS(improved_xhbac_closed_form(0.0), DomainError);
}

TEST_CASE("low temperature one-shot ratio") {
    // T'/T = 1/alpha for odd registers in the dilute limit
    CHECK(low_temperature_ratio(3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(low_temperature_ratio(5) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}
