#pragma once

#include <optional>

#include "algocool/protocols.hpp"

namespace algocool {

// Bath-derived scalars, all for a qubit of gap omega at inverse
// temperature beta (dimensionless product beta*omega, in nats).
struct BathParams {
    double beta_omega; // beta * omega
    double p;          // thermal ground population 1/(1+exp(-beta*omega))
    double q;          // 1 - p
    double eps;        // polarization 2p - 1 = tanh(beta*omega/2)
    double p2;         // ground population at doubled beta*omega
    double s;          // Boltzmann factor exp(-beta*omega)

    static BathParams from_beta_omega(double beta_omega);
    static BathParams from_polarization(double eps);
    static BathParams from_ground_pop(double p);
};

// ---- Closed forms for the four two-qubit-or-less ladder protocols ----
// Protocol::PPA means its three-qubit variant here. All energies are in
// units of omega; rounds N are 1-based. The work and efficiency forms
// assume an all-thermal start.

// Target ground population after N >= 0 rounds; p0 overrides the
// thermal initial population.
double population_closed_form(Protocol kind, const BathParams& b, int N,
                              std::optional<double> p0 = std::nullopt);

// Work injected by round N, and its running total.
double work_closed_form(Protocol kind, const BathParams& b, int N);
double cumulative_work_closed_form(Protocol kind, const BathParams& b, int N);

// Target energy removed by round N (positive when cooling), and total.
double target_energy_drop_closed_form(Protocol kind, const BathParams& b,
                                      int N);
double cumulative_target_energy_drop_closed_form(Protocol kind,
                                                 const BathParams& b, int N);

// Per-round and cumulative coefficient of performance.
double cop_closed_form(Protocol kind, const BathParams& b, int N);
double cumulative_cop_closed_form(Protocol kind, const BathParams& b, int N);

// ---- Asymptotic cooling limits ----

// Polarization amplification factor of the asymptotic map.
double protocol_alpha(Protocol kind, int n);

// alpha of a generic compression round: m copies of the target map, each
// doubling-depth d.
double compression_alpha(int m, int d);

// eps_inf = tanh(alpha * atanh(eps_b)); +inf alpha saturates at 1.
double unified_limit(double eps_b, double alpha);

// Per-round contraction factor towards eps_inf.
double unified_rate(Protocol kind, const BathParams& b);

// eps after N rounds: eps_inf - r^N (eps_inf - eps_b).
double unified_evolution(Protocol kind, const BathParams& b, int N);

// ---- One-shot sorting bound ----

// Maximal target ground population reachable by one permutation on n
// identical (p, 1-p) qubits.
double q_max(int n, double p);

// Gaussian estimate of the one-shot polarization limit for large n.
// Both normalizations of the error-function reading are exposed; the
// full one tracks q_max.
struct CltLimit {
    double mu;          // n eps / sqrt(2 n (1 - eps^2))
    double eps_half;    // erf(mu) / 2
    double eps_full;    // erf(mu)
};
CltLimit clt_cooling_limit(int n, double eps_b);

// Low-temperature one-shot temperature ratio T'/T_b for odd n.
double low_temperature_ratio(int n);

// ---- Entropy series and heat-to-entropy ratio ----

// S(eps_from) - S(eps_to) for qubit polarizations, evaluated as
// 1/2 sum_{j>=1} (eps_to^{2j} - eps_from^{2j}) / (j(2j-1)).
double polarization_entropy_drop(double eps_from, double eps_to);

// Cumulative bath-heat over target-entropy ratio of the three-qubit
// sorting protocol after N rounds; tends to 4/3 for a cold dilute bath.
double ppa3_landauer_closed_form(double eps_b, int N);

inline constexpr double kPpa3LandauerFloor = 4.0 / 3.0;

// ---- Qubit + infinite-ladder single round (omega = 1) ----
struct ImprovedXhbacClosedForm {
    double E_initial;
    double E_final;
    double work;
    double target_energy_drop;
    double cop; // tanh(beta*omega / 2)
};
ImprovedXhbacClosedForm improved_xhbac_closed_form(double beta_omega);

} // namespace algocool
