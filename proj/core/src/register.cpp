#include "tsq/register.hpp"

#include <algorithm>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"

namespace tsq::protocols {

Register::Register(StateVector initial) : state_(std::move(initial)) {
  phys_.resize(static_cast<std::size_t>(state_.num_qubits()));
  for (int i = 0; i < state_.num_qubits(); ++i) {
    phys_[static_cast<std::size_t>(i)] = i;
  }
}

int Register::num_live() const { return state_.num_qubits(); }

bool Register::live(int logical) const {
  return logical >= 0 && logical < static_cast<int>(phys_.size()) &&
         phys_[static_cast<std::size_t>(logical)] >= 0;
}

QubitId Register::physical(int logical) const {
  if (!live(logical)) {
    throw StateError("logical qubit " + std::to_string(logical) + " is not live");
  }
  return phys_[static_cast<std::size_t>(logical)];
}

std::vector<QubitId> Register::physicals(const std::vector<int>& logicals) const {
  std::vector<QubitId> out;
  out.reserve(logicals.size());
  for (int l : logicals) {
    out.push_back(physical(l));
  }
  return out;
}

int Register::append(const StateVector& factor) {
  const int first = static_cast<int>(phys_.size());
  const int base = state_.num_qubits();
  state_ = tensor(factor, state_);  // left operand lands on the high bits
  for (int i = 0; i < factor.num_qubits(); ++i) {
    phys_.push_back(base + i);
  }
  return first;
}

void Register::drop(const std::vector<int>& logicals) {
  const std::vector<QubitId> gone = physicals(logicals);
  state_ = remove_qubits(state_, gone);
  for (auto& p : phys_) {
    if (p < 0) {
      continue;
    }
    if (std::find(gone.begin(), gone.end(), p) != gone.end()) {
      p = -1;
      continue;
    }
    int shift = 0;
    for (QubitId g : gone) {
      if (g < p) {
        ++shift;
      }
    }
    p -= shift;
  }
}

void Register::apply_bit_ordered(const Eigen::MatrixXcd& matrix,
                                 const std::vector<int>& logicals_bit_order) {
  std::vector<int> msb_first(logicals_bit_order.rbegin(), logicals_bit_order.rend());
  apply_msb_first(matrix, msb_first);
}

void Register::apply_msb_first(const Eigen::MatrixXcd& matrix,
                               const std::vector<int>& logicals_msb_first) {
  state_ = apply_unitary(state_, matrix, physicals(logicals_msb_first));
}

BellOutcome Register::bell_measure_pair(int first, int second, RandomSource& rng) {
  BellResult r = bell_measure(state_, {physical(first), physical(second)}, rng);
  state_ = std::move(r.state);
  return r.outcome;
}

int Register::measure_z(int logical, RandomSource& rng) {
  ProjectiveResult r =
      measure_projective(state_, gates::axis_projectors('z'), {physical(logical)}, rng);
  state_ = std::move(r.state);
  return r.outcome;
}

void Register::set_state(StateVector s) {
  if (s.num_qubits() != state_.num_qubits()) {
    throw StateError("set_state must preserve the register size");
  }
  state_ = std::move(s);
}

double Register::marginal_fidelity(const std::vector<int>& logicals_bit_order,
                                   const StateVector& target) const {
  std::vector<QubitId> targets;
  targets.reserve(logicals_bit_order.size());
  for (auto it = logicals_bit_order.rbegin(); it != logicals_bit_order.rend(); ++it) {
    targets.push_back(physical(*it));
  }
  return outcome_probability(state_, gates::projector(target.as_eigen()), targets);
}

}  // namespace tsq::protocols
