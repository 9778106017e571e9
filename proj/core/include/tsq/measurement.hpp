#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsq/pauli.hpp"
#include "tsq/random.hpp"
#include "tsq/state_vector.hpp"

namespace tsq {

struct ProjectiveResult {
  int outcome;
  StateVector state;
  double probability;  // Born weight before renormalization
};

// Von Neumann measurement with an explicit projector list on the targets.
// Validates completeness (Σ P = I) and pairwise orthogonality within
// kExactTol; throws NumericalError if every outcome weight is below
// kProbFloor.
ProjectiveResult measure_projective(const StateVector& state,
                                    const std::vector<Eigen::MatrixXcd>& projectors,
                                    const std::vector<QubitId>& targets, RandomSource& rng);

// Born weight of one projector without sampling.
double outcome_probability(const StateVector& state, const Eigen::MatrixXcd& projector,
                           const std::vector<QubitId>& targets);

// Collapses onto one projector; returns (weight, renormalized state). A
// weight below kProbFloor returns the input state unchanged with weight 0;
// branch enumeration prunes those.
std::pair<double, StateVector> project_collapse(const StateVector& state,
                                                const Eigen::MatrixXcd& projector,
                                                const std::vector<QubitId>& targets);

struct BellResult {
  BellOutcome outcome;
  StateVector state;
  double probability;
};

// Bell-basis measurement of a qubit pair; the pair collapses to the outcome
// Bell state.
BellResult bell_measure(const StateVector& state, std::pair<QubitId, QubitId> pair,
                        RandomSource& rng);

std::vector<Eigen::MatrixXcd> bell_projectors();

// The 2-qubit singlet (|↑↓⟩ − |↓↑⟩)/√2.
StateVector singlet_state();

// Writes the singlet onto the pair. The pair must be in a product factor
// with the remainder (fresh ancillas, or any previous factor, which is
// overwritten); an entangled pair throws ValidationError.
StateVector prepare_singlet(const StateVector& state, std::pair<QubitId, QubitId> pair);

// Applies one Pauli byproduct element per target qubit.
StateVector apply_byproduct(const StateVector& state, const PauliByproduct& byproduct,
                            const std::vector<QubitId>& targets);

}  // namespace tsq
