#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "algocool/errors.hpp"

namespace algocool {

// Register convention: subsystem 0 is the most significant digit of the
// composite basis index; basis states are enumerated in ascending
// lexicographic order of their digit strings.

// Parametrizations of a two-level diagonal state with energy gap omega.
enum class QubitRepr {
    GroundPopulation, // p in [0, 1]
    Polarization,     // eps = 2p - 1 in [-1, 1]
    BetaOmega,        // beta*omega in [-inf, +inf]; p in {0,1} maps to +-inf
};

// Converts between the three equivalent qubit parametrizations.
// Out-of-range input raises DomainError.
double convert_qubit_param(double value, QubitRepr from, QubitRepr to);

// Row-stride of each digit position for a mixed-radix index.
std::vector<long> mixed_radix_strides(const std::vector<int>& dims);

// Digit of `index` at subsystem position `pos`.
int digit_at(long index, int pos, const std::vector<long>& strides,
             const std::vector<int>& dims);

// A classical probability vector over the product basis of a register.
// Construction clamps entries in [-1e-12, 0) to zero, rejects entries
// below -1e-12, renormalizes when |sum - 1| < 1e-9 and rejects otherwise.
class DiagonalState {
public:
    DiagonalState(Eigen::VectorXd probs, std::vector<int> dims);
    explicit DiagonalState(Eigen::VectorXd probs);

    const Eigen::VectorXd& probs() const { return probs_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim() const { return static_cast<int>(probs_.size()); }
    int subsystems() const { return static_cast<int>(dims_.size()); }
    double operator[](long i) const { return probs_[i]; }

    static constexpr double kEntryTol = 1e-12;
    static constexpr double kNormRejectTol = 1e-9;

private:
    Eigen::VectorXd probs_;
    std::vector<int> dims_;
};

// Diagonal Hamiltonian that is a sum of local terms, one per subsystem.
// The full spectrum is E(i) = sum_k local_k[digit_k(i)].
class DiagonalHamiltonian {
public:
    explicit DiagonalHamiltonian(std::vector<Eigen::VectorXd> local_terms);

    // n qubits, each with gap omega: local term (0, omega).
    static DiagonalHamiltonian uniform_qubits(int n, double omega = 1.0);
    // Truncated harmonic ladder: levels 0..levels-1 with spacing omega.
    static DiagonalHamiltonian oscillator(int levels, double omega = 1.0);
    // Qubit (gap omega) followed by a resonant truncated ladder.
    static DiagonalHamiltonian qubit_plus_oscillator(int levels,
                                                     double omega = 1.0);

    const Eigen::VectorXd& energies() const { return energies_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<Eigen::VectorXd>& locals() const { return locals_; }
    int dim() const { return static_cast<int>(energies_.size()); }

    // Hamiltonian of the sub-register formed by `keep` (ascending).
    DiagonalHamiltonian restricted(const std::vector<int>& keep) const;

private:
    std::vector<Eigen::VectorXd> locals_;
    std::vector<int> dims_;
    Eigen::VectorXd energies_;
};

// Thermal qubit (p, 1-p) with p = 1/(1 + exp(-beta*omega)).
DiagonalState thermal_qubit(double beta_omega);

// Truncated thermal ladder over `levels` >= 2 states, beta*omega > 0.
// p_i proportional to exp(-i*beta*omega), renormalized over the kept levels.
// If tail_mass is non-null it receives the discarded weight
// s^levels (s = exp(-beta*omega)) of the untruncated ladder.
DiagonalState thermal_oscillator(double beta_omega, int levels,
                                 double* tail_mass = nullptr);

// Gibbs state exp(-beta*E)/Z of a diagonal Hamiltonian. beta = +inf
// selects the uniform distribution over the ground space.
DiagonalState thermal_state(const DiagonalHamiltonian& h, double beta);

// Product of n identical (p, 1-p) qubits. Entries are computed from a
// power table indexed by excitation weight, so populations of
// equal-weight basis states are bitwise identical and stable sorts
// see them as exact ties.
DiagonalState qubit_register_from_ground_pop(int n, double p);

// Product of n identical thermal qubits, same tie guarantee.
DiagonalState thermal_qubit_register(int n, double beta_omega);

// Tensor product of register states; dims are concatenated.
DiagonalState product(const std::vector<DiagonalState>& factors);
DiagonalState product(const DiagonalState& a, const DiagonalState& b);

// Marginal over the subsystems in `keep` (ascending, nonempty, unique).
DiagonalState marginal(const DiagonalState& state,
                       const std::vector<int>& keep);

// <E> = sum_i E(i) p(i); ShapeError when dimensions disagree.
double energy(const DiagonalState& state, const DiagonalHamiltonian& h);

// Shannon entropy in nats; 0*log(0) = 0.
double entropy(const DiagonalState& state);

// h(p) = -p log p - (1-p) log(1-p) in nats, p in [0, 1].
double binary_entropy(double p);

// h(a+e) - h(a), evaluated in a cancellation-free form so the result
// keeps full relative accuracy even when |e| is far below ulp(a).
double binary_entropy_diff(double a, double e);

// D(a||b) in nats; +inf when supp(a) is not contained in supp(b).
double relative_entropy(const DiagonalState& a, const DiagonalState& b);

// I(x:y) = S(x) + S(y) - S(xy) for the bipartition (x_subsystems, rest).
// The partition must be a proper nonempty subset of the register.
double mutual_information(const DiagonalState& joint,
                          const std::vector<int>& x_subsystems);

// T(a,b) = (1/2) sum_i |a_i - b_i|.
double trace_distance(const DiagonalState& a, const DiagonalState& b);

} // namespace algocool
