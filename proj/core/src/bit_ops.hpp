#pragma once

// Internal index gymnastics shared by the state-vector kernels. Not installed.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tsq/errors.hpp"
#include "tsq/numeric.hpp"

namespace tsq::detail {

inline void check_targets(const std::vector<QubitId>& targets, int num_qubits) {
  std::set<QubitId> seen;
  for (QubitId t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw DomainError("target qubit " + std::to_string(t) + " out of range");
    }
    if (!seen.insert(t).second) {
      throw DomainError("duplicate target qubit " + std::to_string(t));
    }
  }
}

// Global address bits for a local pattern on `targets`; targets[0] carries
// the most significant local bit.
inline std::uint64_t scatter(std::uint64_t local, const std::vector<QubitId>& targets) {
  const int k = static_cast<int>(targets.size());
  std::uint64_t addr = 0;
  for (int j = 0; j < k; ++j) {
    const std::uint64_t bit = (local >> (k - 1 - j)) & 1ULL;
    addr |= bit << targets[j];
  }
  return addr;
}

// All global indices with zeros on the target bits.
inline std::vector<std::uint64_t> rest_indices(int num_qubits,
                                               const std::vector<QubitId>& targets) {
  std::uint64_t target_mask = 0;
  for (QubitId t : targets) {
    target_mask |= 1ULL << t;
  }
  const std::uint64_t dim = 1ULL << num_qubits;
  std::vector<std::uint64_t> out;
  out.reserve(dim >> targets.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & target_mask) == 0) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace tsq::detail
