#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tsq/scenario.hpp"
#include "tsq/two_state_vector.hpp"

namespace tsq::tsv {

// One term of a generalized two-state vector: a coefficient times a product
// of per-site bras and kets (bras stored as post-selection target kets).
struct GtsvTerm {
  Complex coefficient;
  std::vector<StateVector> bra_factors;  // one per site
  std::vector<StateVector> ket_factors;  // one per site
};

// Superposition of products of per-site bras and kets; not always
// factorable into a single ⟨Φ| |Ψ⟩ pair.
class GeneralizedTwoStateVector {
 public:
  explicit GeneralizedTwoStateVector(std::vector<GtsvTerm> terms);

  const std::vector<GtsvTerm>& terms() const { return terms_; }
  int num_sites() const { return static_cast<int>(site_qubits_.size()); }
  int site_qubits(int site) const { return site_qubits_.at(static_cast<std::size_t>(site)); }
  int total_qubits() const { return total_qubits_; }

  // Global factors with site 0 on the lowest qubits.
  StateVector global_bra(int term) const;
  StateVector global_ket(int term) const;

  // The represented object as an operator Σ_t c_t |K_t⟩⟨B_t| from the
  // bra side to the ket side.
  Eigen::MatrixXcd as_operator() const;

 private:
  std::vector<GtsvTerm> terms_;
  std::vector<int> site_qubits_;
  int total_qubits_ = 0;
};

// Unique rank-1 factorization when the coefficient operator has numerical
// rank 1 (second singular value below 1e-9 relative to the first); otherwise
// std::nullopt (not reducible).
std::optional<TwoStateVector> reduce_generalized(const GeneralizedTwoStateVector& gtsv);

// Generalized ABL evaluation by direct amplitude summation:
// P(k) ∝ |Σ_t c_t ⟨B_t|P_k|K_t⟩|².
std::vector<double> generalized_abl(const GeneralizedTwoStateVector& gtsv,
                                    const std::vector<Eigen::MatrixXcd>& projectors);

struct GtsvScenario {
  Scenario scenario;
  int system_qubits = 0;   // qubits [0, system_qubits) carry the system
  int ancilla_qubits = 0;  // qubits above carry the term index
};

// Pre-selects a joint system+ancilla entangled state and post-selects a
// joint projector such that the intermediate system is described by exactly
// this gtsv; the ancilla register encodes the term index and is protected
// between the two joint measurements. Single-term inputs need no ancilla.
GtsvScenario scenario_for_gtsv(const GeneralizedTwoStateVector& gtsv);

}  // namespace tsq::tsv
