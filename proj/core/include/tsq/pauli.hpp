#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsq/numeric.hpp"

namespace tsq {

// Single-qubit teleportation byproduct X^x Z^z. The matrix convention is
// fixed as Z first, then X; composition tracks exponents mod 2 and drops
// the global phase.
struct PauliOp {
  bool x = false;
  bool z = false;

  bool is_identity() const { return !x && !z; }
  friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

inline PauliOp compose(PauliOp a, PauliOp b) { return PauliOp{a.x != b.x, a.z != b.z}; }

Eigen::Matrix2cd pauli_op_matrix(PauliOp op);
std::string to_string(PauliOp op);

// Per-qubit byproduct list; a group under composition up to global phase.
class PauliByproduct {
 public:
  PauliByproduct() = default;
  explicit PauliByproduct(std::vector<PauliOp> ops) : ops_(std::move(ops)) {}
  static PauliByproduct identity(int n) { return PauliByproduct(std::vector<PauliOp>(n)); }

  int size() const { return static_cast<int>(ops_.size()); }
  const PauliOp& op(int i) const { return ops_.at(i); }
  const std::vector<PauliOp>& ops() const { return ops_; }
  bool is_identity() const;
  PauliByproduct composed_with(const PauliByproduct& other) const;
  // Bit i set iff op(i) flips qubit i in the z basis.
  std::uint64_t x_mask() const;

 private:
  std::vector<PauliOp> ops_;
};

enum class BellOutcome { PhiPlus = 0, PsiPlus = 1, PhiMinus = 2, PsiMinus = 3 };

enum class ChannelKind { PhiPlus, Singlet };

const char* to_string(BellOutcome outcome);

// Bell kets in the |first second⟩ local basis (first = high bit):
//   Φ± = (|↑↑⟩ ± |↓↓⟩)/√2,  Ψ± = (|↑↓⟩ ± |↓↑⟩)/√2.
Eigen::Vector4cd bell_ket(BellOutcome outcome);

// Byproduct left on the remote half after a Bell measurement with this
// outcome, equal to its own correction up to phase. Valid for a PhiPlus
// channel; for a singlet channel the fixed singlet-to-PhiPlus rotation XZ
// is composed in.
PauliOp correction_for(BellOutcome outcome, ChannelKind kind);

}  // namespace tsq
