#pragma once

#include <Eigen/Dense>

#include <vector>

#include "algocool/state.hpp"

namespace algocool {

// Work accounting: Control steps carry the work done on the register;
// Thermalization steps exchange energy with the bath and carry no work.
enum class StepKind { Control, Thermalization };

// A left-stochastic map acting on register probability vectors
// (column sums are 1; columns index the input basis state).
// Stored in one of three forms so large registers never materialize a
// dense matrix: a dense block, a basis permutation, or a reset that
// replaces chosen subsystems with fresh factor states.
class TransitionMatrix {
public:
    enum class Form { Dense, Permutation, Reset };

    static constexpr double kStochasticTol = 1e-12;
    static constexpr long kDenseLimit = 4096;

    static TransitionMatrix from_dense(Eigen::MatrixXd columns, StepKind kind,
                                       std::vector<int> dims);
    // out[k] = in[source_of[k]]; source_of must be a bijection.
    static TransitionMatrix from_permutation(std::vector<long> source_of,
                                             StepKind kind,
                                             std::vector<int> dims);
    // Replaces each subsystem in `positions` with the matching `fresh`
    // factor while keeping the marginal on the remaining subsystems.
    static TransitionMatrix reset(std::vector<int> dims,
                                  std::vector<int> positions,
                                  std::vector<Eigen::VectorXd> fresh);

    Form form() const { return form_; }
    StepKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<int>& dims() const { return dims_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& in) const;
    DiagonalState apply(const DiagonalState& in) const;

    // Materializes the matrix; ShapeError above kDenseLimit.
    Eigen::MatrixXd dense() const;

    // Form::Permutation only.
    const std::vector<long>& permutation() const;
    // Form::Reset only.
    const std::vector<int>& reset_positions() const { return positions_; }

private:
    TransitionMatrix() = default;

    Form form_ = Form::Dense;
    StepKind kind_ = StepKind::Control;
    int dim_ = 0;
    std::vector<int> dims_;
    Eigen::MatrixXd matrix_;        // Dense
    std::vector<long> source_of_;   // Permutation
    std::vector<int> positions_;    // Reset
    std::vector<Eigen::VectorXd> fresh_; // Reset
    std::vector<int> kept_;         // Reset: complement of positions_
};

// Full thermalization of one qubit: both columns relax to
// (p_b, 1-p_b) with p_b = 1/(1+exp(-beta*omega)).
TransitionMatrix gamma1(double beta_omega);

// Two-qubit relaxation that rethermalizes the {|00>, |11>} pair with
// weight p_b2 = 1/(1+exp(-2 beta*omega)) and fixes |01>, |10>.
TransitionMatrix gamma2(double beta_omega);

// Replaces the qubit at `pos` with the maximally mixed state.
// Doubly stochastic; classified as a control step because it is
// implemented by averaged unitaries and carries work.
TransitionMatrix cms_on(const std::vector<int>& dims, int pos);

// Bit flip of the qubit at `pos`.
TransitionMatrix pauli_x_on(const std::vector<int>& dims, int pos);

// Single-qubit beta-swap: columns (1-s, s) and (1, 0), s = exp(-beta*omega).
// Requires beta_omega >= 0.
TransitionMatrix beta_swap(double beta_omega);

// Three-qubit compression permutation exchanging basis states 3 (011)
// and 4 (100); identity elsewhere.
TransitionMatrix u_ppa3();

// Permutation that stably sorts the state's populations in descending
// order (ties keep ascending basis index).
TransitionMatrix sort_compression(const DiagonalState& state);

// Permutation that rearranges populations in descending order along the
// basis sequence ordered by (target level ascending, machine energy
// ascending, machine index ascending). The target subsystem must be a
// qubit. Ties keep their relative order.
TransitionMatrix energy_ordered_compression(const DiagonalState& state,
                                            const DiagonalHamiltonian& h,
                                            int target_position);

// Resets the subsystems in `positions` to thermal factors at beta*omega:
// qubits get (p_b, 1-p_b), larger subsystems a truncated thermal ladder.
TransitionMatrix reset_qubits(const std::vector<int>& dims,
                              const std::vector<int>& positions,
                              double beta_omega);

// Embeds `local`, acting on the subsystems `positions` of a register
// with dimensions `dims`, into the full register.
TransitionMatrix lift(const TransitionMatrix& local,
                      const std::vector<int>& dims,
                      const std::vector<int>& positions);

// True when g preserves the Gibbs state of h at inverse temperature
// beta: max_i |(g rho_th - rho_th)_i| < 1e-10.
bool is_gibbs_stochastic(const TransitionMatrix& g,
                         const DiagonalHamiltonian& h, double beta);

} // namespace algocool
