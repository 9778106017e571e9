#pragma once

#include <optional>

#include "tsq/observable.hpp"
#include "tsq/scenario.hpp"

namespace tsq::protocols {

// Scenario qubit layout of the crossed-measurement construction:
//   0 = A (forward), 1 = B (backward), 2 = D (B's discarded partner),
//   3..5 = mod-8 pointer for o1, 6..7 = mod-4 pointer for o2.
struct CrossedScenario {
  tsv::Scenario scenario;
  QubitId qubit_a = 0;
  QubitId qubit_b = 1;
  double description_time = 3.0;  // t, between the A-side and B-side couplings
  double b_future_begin = 4.0;    // B's first post-t coupling; reversal window ends here
  int eigen_index = 0;            // row of the mixed-direction eigenbasis below
};

// Two crossed nonlocal (space and time) measurements:
//   o1 = z(A, t1) − z(B, t2)  with pointer values {2, 0, −2 ≡ 6 mod 8},
//   o2 = (x(A, t1−ε) − x(B, t2+ε)) mod 4, values {0, 2}.
// Each is measured nondemolitionally by a shared pointer coupled at both
// times; the pointer readouts are the post-selection. Valid value pairs are
// (2, ·), (−2, ·), (0, 0) and (0, 2); the description at t is the matching
// mixed-direction eigenstate (A forward, B backward).
CrossedScenario crossed_measurement_scenario(int o1_value, std::optional<int> o2_value);

// Stored mixed-direction eigenstates at t (A = qubit 0 forward, B = qubit 1
// backward), ordered (2,·), (−2,·), (0,0), (0,2).
StateVector crossed_eigenstate_stored(int index);
// Their images after direction reversal at B: |↑↑⟩, |↓↓⟩, singlet, triplet.
StateVector crossed_eigenstate_image(int index);

// The mixed-direction variable with the four crossed eigenstates, site 0
// (A) forward and site 1 (B) backward.
NonlocalObservable crossed_observable();
// Its all-forward image, measurable by the demolition protocol.
NonlocalObservable crossed_image_observable();

// The forward nonlocal variable whose eigenstates are the reversal images
// (two product states and the two odd/even entangled ones); not measurable
// nondemolitionally, but measurable by the demolition protocol.
NonlocalObservable product_form_observable();

// The Bell operator on two sites (one qubit each), all-forward.
NonlocalObservable bell_observable();

}  // namespace tsq::protocols
