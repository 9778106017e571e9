#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tsq/numeric.hpp"

namespace tsq {

// Dense amplitude vector over n qubits.
//
// Index convention (used consistently by the whole library):
//   - little-endian: qubit k is bit k of the amplitude index;
//   - tensor(a, b) is the plain Kronecker product, so the left operand
//     occupies the high bits and a written ket |x y⟩ reads left-to-right
//     from the highest qubit down;
//   - wherever an ordered target list appears, targets[0] is the most
//     significant bit of the local pattern, matching the textbook reading
//     of a k-qubit matrix in the basis |t0 t1 ... t(k-1)⟩.
class StateVector {
 public:
  // Zero-qubit state: a single amplitude 1. Identity for tensor().
  StateVector();
  StateVector(int num_qubits, std::vector<Complex> amplitudes);
  static StateVector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const;
  double norm_squared() const;
  Complex inner_product(const StateVector& other) const;  // ⟨this|other⟩
  Eigen::VectorXcd as_eigen() const;
  static StateVector from_eigen(int num_qubits, const Eigen::VectorXcd& v);

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
// Builds ⊗ of single-qubit states where element i of the list is qubit i.
StateVector from_qubit_states(const std::vector<StateVector>& states);

// |⟨a|b⟩|²; global-phase invariant.
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

// Applies a 2^k x 2^k unitary to the listed target qubits. Validates
// unitarity within kExactTol and that targets are distinct and in range.
StateVector apply_unitary(const StateVector& state, const Eigen::MatrixXcd& matrix,
                          const std::vector<QubitId>& targets);

// Reduced density matrix of the listed qubits (local index per the target
// convention above).
Eigen::MatrixXcd reduced_density(const StateVector& state, const std::vector<QubitId>& qubits);

// True when the listed qubits are in a pure product factor with the rest.
bool is_product(const StateVector& state, const std::vector<QubitId>& qubits,
                double tol = kExactTol);

// Extracts the pure factor on the listed qubits; throws ValidationError if
// they are entangled with the remainder.
StateVector factor_state(const StateVector& state, const std::vector<QubitId>& qubits);

// Drops a product factor, returning the state of the remaining qubits
// (reindexed densely, preserving relative order).
StateVector remove_qubits(const StateVector& state, const std::vector<QubitId>& qubits);

// Replaces the product factor on the listed qubits with the given local
// state; throws ValidationError if they are entangled with the remainder.
StateVector replace_factor(const StateVector& state, const std::vector<QubitId>& qubits,
                           const StateVector& factor);

// Embeds a local operator on the listed targets into the full space.
Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd& op, const std::vector<QubitId>& targets,
                                int num_qubits);

}  // namespace tsq
