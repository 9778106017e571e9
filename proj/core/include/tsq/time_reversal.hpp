#pragma once

#include <limits>
#include <string>
#include <utility>

#include "tsq/random.hpp"
#include "tsq/scenario.hpp"
#include "tsq/state_vector.hpp"

namespace tsq::protocols {

// The deterministic reversal map on a stored backward state: the ancilla's
// forward state conditioned on post-selection ⟨φ| is XZ|φ⟩ up to phase.
StateVector reversed_state(const StateVector& backward_stored);

// Inserts a singlet preparation on (particle, ancilla) at time t. Thereafter
// the ancilla's forward state, conditioned on the particle's post-selection,
// is the time reverse of the backward state, on every accepted run.
//
// Preconditions checked syntactically on the timeline: the ancilla is fresh
// at t (untouched before), the particle is post-selected after t (directly
// or through later steps), and nothing touches the particle inside the
// protected window (t, protected_until); the window defaults to the whole
// future, and callers whose post-selection machinery starts earlier (a
// future measurement coupling) pass that boundary instead.
tsv::Scenario time_reverse_backward(tsv::Scenario scenario, QubitId particle, QubitId ancilla,
                                    double t,
                                    double protected_until = std::numeric_limits<double>::infinity(),
                                    SiteId site = 0);

struct ReverseForwardResult {
  bool success = false;
  BellOutcome outcome = BellOutcome::PhiPlus;
  StateVector state;
};

// Attempt to reverse a forward-evolving state: Bell measurement on (qubit,
// ancilla), success iff the outcome is the singlet. No retroactive
// correction is possible, so failure carries the outcome and stands. The
// ancilla must be prepared as half of a discarded PhiPlus pair (maximally
// mixed), which makes the 1/4 success probability input-independent.
ReverseForwardResult attempt_reverse_forward(const StateVector& state, QubitId qubit,
                                             QubitId ancilla, RandomSource& rng);

struct MoveResult {
  tsv::Scenario scenario;
  QubitId receiver;  // channel half now carrying the reversed state forward
};

// Moves a backward-evolving state to the far end of a pre-shared singlet
// channel in one step, reversing its time direction on the way: if the
// channel half at the particle's site is not itself the post-selected
// particle, a local swap is inserted. Consumes exactly one channel and
// sends no classical information.
MoveResult move_backward_state(tsv::Scenario scenario, QubitId particle,
                               std::pair<QubitId, QubitId> channel_qubits /* (far, near) */,
                               const std::string& channel_id, double t, SiteId site);

}  // namespace tsq::protocols
