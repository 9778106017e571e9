#include "tsq/observable.hpp"

#include <cmath>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"
#include "tsq/pauli.hpp"

namespace tsq::protocols {

int NonlocalObservable::num_qubits() const {
  return eigenstates.empty() ? 0 : eigenstates.front().num_qubits();
}

bool NonlocalObservable::all_forward() const {
  for (const auto& [site, dir] : direction_tags) {
    if (dir == Direction::Backward) {
      return false;
    }
  }
  return true;
}

std::vector<QubitId> NonlocalObservable::backward_qubits() const {
  std::vector<QubitId> out;
  for (const auto& [qubit, site] : site_partition) {
    const auto it = direction_tags.find(site);
    if (it != direction_tags.end() && it->second == Direction::Backward) {
      out.push_back(qubit);
    }
  }
  return out;
}

void NonlocalObservable::validate() const {
  if (eigenstates.empty()) {
    throw ValidationError("observable has no eigenstates");
  }
  const int n = num_qubits();
  if (eigenstates.size() != (1ULL << n)) {
    throw ValidationError("eigenstates do not span the space");
  }
  if (eigenvalues.size() != eigenstates.size()) {
    throw ValidationError("eigenvalue list length does not match eigenstates");
  }
  for (std::size_t i = 0; i < eigenstates.size(); ++i) {
    if (eigenstates[i].num_qubits() != n) {
      throw ValidationError("eigenstates disagree on qubit count");
    }
    for (std::size_t j = i + 1; j < eigenstates.size(); ++j) {
      if (std::abs(eigenstates[i].inner_product(eigenstates[j])) > kExactTol) {
        throw ValidationError("eigenstates are not orthonormal");
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    const auto it = site_partition.find(q);
    if (it == site_partition.end()) {
      throw ValidationError("qubit missing from site partition");
    }
    if (direction_tags.find(it->second) == direction_tags.end()) {
      throw ValidationError("site missing a direction tag");
    }
  }
}

Eigen::MatrixXcd eigenbasis_unitary(const NonlocalObservable& observable) {
  observable.validate();
  const Eigen::Index dim = static_cast<Eigen::Index>(observable.eigenstates.size());
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    u.row(k) = observable.eigenstates[static_cast<std::size_t>(k)].as_eigen().adjoint();
  }
  if (!gates::is_unitary(u)) {
    throw ValidationError("eigenbasis does not form a unitary");
  }
  return u;
}

StateVector forward_image(const StateVector& stored, const std::vector<QubitId>& backward) {
  StateVector out = stored;
  const Eigen::Matrix2cd xz = pauli_op_matrix(PauliOp{true, true});
  for (QubitId q : backward) {
    out = apply_unitary(out, xz, {q});
  }
  return out;
}

NonlocalObservable forward_image_observable(const NonlocalObservable& observable) {
  observable.validate();
  NonlocalObservable image = observable;
  const std::vector<QubitId> backward = observable.backward_qubits();
  for (auto& e : image.eigenstates) {
    e = forward_image(e, backward);
  }
  for (auto& [site, dir] : image.direction_tags) {
    dir = Direction::Forward;
  }
  return image;
}

}  // namespace tsq::protocols
