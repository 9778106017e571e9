#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "tsq/state_vector.hpp"

namespace tsq::protocols {

enum class Direction { Forward, Backward };

// Nonlocal variable given by an orthonormal eigenbasis with eigenvalues, a
// site partition of the system qubits, and a time-direction tag per site.
// Backward-tagged factors are stored as the kets onto which the future
// post-selection projects.
struct NonlocalObservable {
  std::vector<StateVector> eigenstates;
  std::vector<double> eigenvalues;
  std::map<QubitId, SiteId> site_partition;
  std::map<SiteId, Direction> direction_tags;

  int num_qubits() const;
  bool all_forward() const;
  std::vector<QubitId> backward_qubits() const;
  void validate() const;
};

// U with U·e_k = basis_state(n, k): rows are the conjugated eigenstates.
Eigen::MatrixXcd eigenbasis_unitary(const NonlocalObservable& observable);

// Time-direction reversal image of a stored mixed-direction state: XZ on
// every backward qubit. Deterministic reversal maps the stored backward
// component ⟨φ| = α⟨↑|+β⟨↓| to the forward ket −β*|↑⟩+α*|↓⟩, which in the
// stored-ket representation is exactly XZ.
StateVector forward_image(const StateVector& stored, const std::vector<QubitId>& backward);

// The observable with every eigenstate mapped through forward_image and all
// sites retagged Forward; eigenvalues and index order are preserved.
NonlocalObservable forward_image_observable(const NonlocalObservable& observable);

}  // namespace tsq::protocols
