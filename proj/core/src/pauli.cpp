#include "tsq/pauli.hpp"

#include "tsq/errors.hpp"

namespace tsq {

Eigen::Matrix2cd pauli_op_matrix(PauliOp op) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (op.z) {
    m(1, 1) = -1.0;
  }
  if (op.x) {
    Eigen::Matrix2cd x;
    x << 0.0, 1.0, 1.0, 0.0;
    m = x * m;
  }
  return m;
}

std::string to_string(PauliOp op) {
  if (op.x && op.z) {
    return "XZ";
  }
  if (op.x) {
    return "X";
  }
  if (op.z) {
    return "Z";
  }
  return "I";
}

bool PauliByproduct::is_identity() const {
  for (const PauliOp& op : ops_) {
    if (!op.is_identity()) {
      return false;
    }
  }
  return true;
}

PauliByproduct PauliByproduct::composed_with(const PauliByproduct& other) const {
  if (size() != other.size()) {
    throw DomainError("byproduct length mismatch in composition");
  }
  std::vector<PauliOp> out(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    out[i] = compose(ops_[i], other.ops_[i]);
  }
  return PauliByproduct(std::move(out));
}

std::uint64_t PauliByproduct::x_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].x) {
      mask |= 1ULL << i;
    }
  }
  return mask;
}

const char* to_string(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PhiPlus:
      return "PhiPlus";
    case BellOutcome::PsiPlus:
      return "PsiPlus";
    case BellOutcome::PhiMinus:
      return "PhiMinus";
    case BellOutcome::PsiMinus:
      return "PsiMinus";
  }
  return "?";
}

Eigen::Vector4cd bell_ket(BellOutcome outcome) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (outcome) {
    case BellOutcome::PhiPlus:
      v(0) = kInvSqrt2;
      v(3) = kInvSqrt2;
      break;
    case BellOutcome::PsiPlus:
      v(1) = kInvSqrt2;
      v(2) = kInvSqrt2;
      break;
    case BellOutcome::PhiMinus:
      v(0) = kInvSqrt2;
      v(3) = -kInvSqrt2;
      break;
    case BellOutcome::PsiMinus:
      v(1) = kInvSqrt2;
      v(2) = -kInvSqrt2;
      break;
  }
  return v;
}

PauliOp correction_for(BellOutcome outcome, ChannelKind kind) {
  PauliOp op;
  switch (outcome) {
    case BellOutcome::PhiPlus:
      op = PauliOp{false, false};
      break;
    case BellOutcome::PsiPlus:
      op = PauliOp{true, false};
      break;
    case BellOutcome::PhiMinus:
      op = PauliOp{false, true};
      break;
    case BellOutcome::PsiMinus:
      op = PauliOp{true, true};
      break;
  }
  if (kind == ChannelKind::Singlet) {
    op = compose(op, PauliOp{true, true});
  }
  return op;
}

}  // namespace tsq
