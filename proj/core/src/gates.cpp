#include "tsq/gates.hpp"

#include "tsq/errors.hpp"

namespace tsq::gates {

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return m;
}

Eigen::Matrix4cd cnot() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Eigen::Matrix4cd swap_gate() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Eigen::MatrixXcd projector(const Eigen::VectorXcd& ket) { return ket * ket.adjoint(); }

std::vector<Eigen::MatrixXcd> computational_projectors(int num_qubits) {
  const Eigen::Index dim = 1LL << num_qubits;
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    p(i, i) = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> axis_projectors(char axis) {
  Eigen::Vector2cd plus, minus;
  switch (axis) {
    case 'z':
      plus << 1, 0;
      minus << 0, 1;
      break;
    case 'x':
      plus << kInvSqrt2, kInvSqrt2;
      minus << kInvSqrt2, -kInvSqrt2;
      break;
    case 'y':
      plus << Complex(kInvSqrt2, 0), Complex(0, kInvSqrt2);
      minus << Complex(kInvSqrt2, 0), Complex(0, -kInvSqrt2);
      break;
    default:
      throw DomainError("unknown measurement axis");
  }
  return {projector(plus), projector(minus)};
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  const Eigen::MatrixXcd defect =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace tsq::gates
