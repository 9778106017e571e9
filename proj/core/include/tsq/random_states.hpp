#pragma once

#include "tsq/random.hpp"
#include "tsq/state_vector.hpp"

namespace tsq {

// Haar-random pure state (independent Gaussian amplitudes, normalized).
StateVector random_state(RandomSource& rng, int num_qubits);

// Standard normal via Box-Muller on the in-house uniform.
double gaussian(RandomSource& rng);

}  // namespace tsq
