#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tsq/numeric.hpp"

namespace tsq::gates {

Eigen::Matrix2cd identity2();
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd hadamard();

// |control target⟩ basis, control = high bit.
Eigen::Matrix4cd cnot();
Eigen::Matrix4cd swap_gate();

Eigen::MatrixXcd projector(const Eigen::VectorXcd& ket);
// Rank-1 projectors onto every computational basis state of k qubits.
std::vector<Eigen::MatrixXcd> computational_projectors(int num_qubits);
// Single-qubit {P+, P-} for the named axis ("z", "x" or "y").
std::vector<Eigen::MatrixXcd> axis_projectors(char axis);

bool is_unitary(const Eigen::MatrixXcd& m, double tol = kExactTol);

}  // namespace tsq::gates
