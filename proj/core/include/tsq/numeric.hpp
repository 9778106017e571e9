#pragma once

#include <complex>
#include <cstdint>

namespace tsq {

using Complex = std::complex<double>;
using QubitId = int;
using SiteId = int;

// Tolerance for exact-math checks (norms, unitarity, orthogonality).
inline constexpr double kExactTol = 1e-9;
// Floor below which probabilities are treated as numerically vanished.
inline constexpr double kProbFloor = 1e-12;
// Dense vectors only; a few MB at most.
inline constexpr int kMaxQubits = 16;

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace tsq
