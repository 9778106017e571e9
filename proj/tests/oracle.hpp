#pragma once

// Test-side oracles, written independently of the library kernels: the
// expected values frozen in the suites come from these straight-line
// computations, not from the code under test.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tsq/state_vector.hpp"

namespace oracle {

using tsq::Complex;
using tsq::StateVector;

// Kronecker product by explicit index arithmetic.
inline std::vector<Complex> kron(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

// Full-space matrix of an operator on `targets` (targets[0] = most
// significant local bit), built row by row from basis-state images.
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, const std::vector<int>& targets,
                              int num_qubits) {
  const Eigen::Index dim = 1LL << num_qubits;
  const int k = static_cast<int>(targets.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    // Local pattern of this basis state.
    int local = 0;
    for (int j = 0; j < k; ++j) {
      if (col & (1LL << targets[static_cast<std::size_t>(j)])) {
        local |= 1 << (k - 1 - j);
      }
    }
    for (int lrow = 0; lrow < (1 << k); ++lrow) {
      Eigen::Index row = col;
      for (int j = 0; j < k; ++j) {
        const Eigen::Index bit = 1LL << targets[static_cast<std::size_t>(j)];
        if (lrow & (1 << (k - 1 - j))) {
          row |= bit;
        } else {
          row &= ~bit;
        }
      }
      out(row, col) += op(lrow, local);
    }
  }
  return out;
}

// Matrix-vector application through the embedded full matrix.
inline StateVector apply(const StateVector& s, const Eigen::MatrixXcd& op,
                         const std::vector<int>& targets) {
  const Eigen::VectorXcd v = embed(op, targets, s.num_qubits()) * s.as_eigen();
  return StateVector::from_eigen(s.num_qubits(), v);
}

inline double born(const StateVector& state, const StateVector& ket) {
  return std::norm(ket.inner_product(state));
}

}  // namespace oracle
