#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tsq/measurement.hpp"
#include "tsq/random.hpp"
#include "tsq/state_vector.hpp"

namespace tsq::protocols {

// Dynamic register with stable logical handles. Protocols allocate channel
// halves on demand and drop qubits once measured out, keeping the dense
// vector small; logical ids survive the reindexing.
class Register {
 public:
  explicit Register(StateVector initial);

  int num_live() const;
  const StateVector& state() const { return state_; }
  bool live(int logical) const;
  QubitId physical(int logical) const;
  std::vector<QubitId> physicals(const std::vector<int>& logicals) const;

  // Appends a fresh product factor; returns the first new logical id (the
  // factor's qubit i becomes logical id first+i).
  int append(const StateVector& factor);
  // Removes qubits that form a product factor (measured-out pairs, read
  // pointers). Their logical ids become dead.
  void drop(const std::vector<int>& logicals);

  // Applies a matrix whose bit j acts on logicals_bit_order[j].
  void apply_bit_ordered(const Eigen::MatrixXcd& matrix, const std::vector<int>& logicals_bit_order);
  // Applies a matrix with the embed convention (first target = high bit).
  void apply_msb_first(const Eigen::MatrixXcd& matrix, const std::vector<int>& logicals_msb_first);

  BellOutcome bell_measure_pair(int first, int second, RandomSource& rng);
  int measure_z(int logical, RandomSource& rng);
  // Replaces the state without touching the logical map (qubit count must
  // match); for collapses computed outside the register.
  void set_state(StateVector s);
  // Born weight of projecting the listed logicals (bit order) onto `target`.
  double marginal_fidelity(const std::vector<int>& logicals_bit_order,
                           const StateVector& target) const;

 private:
  StateVector state_;
  std::vector<QubitId> phys_;  // logical → physical, -1 once dropped
};

}  // namespace tsq::protocols
