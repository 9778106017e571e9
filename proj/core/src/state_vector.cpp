#include "tsq/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bit_ops.hpp"
#include "tsq/errors.hpp"

namespace tsq {
namespace {

using detail::check_targets;
using detail::rest_indices;
using detail::scatter;

void check_qubit_count(int num_qubits) {
  if (num_qubits < 0) {
    throw DomainError("negative qubit count");
  }
  if (num_qubits > kMaxQubits) {
    throw CapacityError("register cap of " + std::to_string(kMaxQubits) +
                        " qubits exceeded (asked for " + std::to_string(num_qubits) + ")");
  }
}

}  // namespace

StateVector::StateVector() : num_qubits_(0), amplitudes_{Complex{1.0, 0.0}} {}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amplitudes_.size() != (1ULL << num_qubits)) {
    throw ValidationError("amplitude vector length must be 2^num_qubits");
  }
  double n2 = 0.0;
  for (const Complex& a : amplitudes_) {
    n2 += std::norm(a);
  }
  if (std::abs(n2 - 1.0) > 1e-6) {
    throw ValidationError("state vector not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& a : amplitudes_) {
    a *= inv;
  }
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  check_qubit_count(num_qubits);
  const std::uint64_t dim = 1ULL << num_qubits;
  if (index >= dim) {
    throw DomainError("basis state index " + std::to_string(index) + " out of range");
  }
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[index] = Complex{1.0, 0.0};
  StateVector s;
  s.num_qubits_ = num_qubits;
  s.amplitudes_ = std::move(amps);
  return s;
}

Complex StateVector::amplitude(std::uint64_t index) const {
  if (index >= amplitudes_.size()) {
    throw DomainError("amplitude index out of range");
  }
  return amplitudes_[index];
}

double StateVector::norm_squared() const {
  double n2 = 0.0;
  for (const Complex& a : amplitudes_) {
    n2 += std::norm(a);
  }
  return n2;
}

Complex StateVector::inner_product(const StateVector& other) const {
  if (num_qubits_ != other.num_qubits_) {
    throw DomainError("inner product dimension mismatch");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

Eigen::VectorXcd StateVector::as_eigen() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
  for (std::uint64_t i = 0; i < dim(); ++i) {
    v(static_cast<Eigen::Index>(i)) = amplitudes_[i];
  }
  return v;
}

StateVector StateVector::from_eigen(int num_qubits, const Eigen::VectorXcd& v) {
  std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    amps[static_cast<std::size_t>(i)] = v(i);
  }
  return StateVector(num_qubits, std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  check_qubit_count(a.num_qubits() + b.num_qubits());
  const std::uint64_t db = b.dim();
  std::vector<Complex> amps(a.dim() * db);
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    for (std::uint64_t j = 0; j < db; ++j) {
      amps[i * db + j] = a.amplitudes()[i] * b.amplitudes()[j];
    }
  }
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

StateVector from_qubit_states(const std::vector<StateVector>& states) {
  StateVector out;
  // Qubit i of the result is list element i, so the fold goes high-to-low.
  for (auto it = states.rbegin(); it != states.rend(); ++it) {
    if (it->num_qubits() != 1) {
      throw DomainError("from_qubit_states expects single-qubit states");
    }
    out = tensor(out, *it);
  }
  return out;
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner_product(b));
}

StateVector apply_unitary(const StateVector& state, const Eigen::MatrixXcd& matrix,
                          const std::vector<QubitId>& targets) {
  check_targets(targets, state.num_qubits());
  const int k = static_cast<int>(targets.size());
  const Eigen::Index d = 1LL << k;
  if (matrix.rows() != d || matrix.cols() != d) {
    throw DomainError("matrix dimension does not match target count");
  }
  const Eigen::MatrixXcd defect =
      matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(d, d);
  if (defect.cwiseAbs().maxCoeff() > kExactTol) {
    throw ValidationError("matrix is not unitary within tolerance");
  }

  std::vector<Complex> amps = state.amplitudes();
  std::vector<std::uint64_t> addr(static_cast<std::size_t>(d));
  Eigen::VectorXcd in(d), out(d);
  for (std::uint64_t base : rest_indices(state.num_qubits(), targets)) {
    for (Eigen::Index l = 0; l < d; ++l) {
      addr[static_cast<std::size_t>(l)] = base | scatter(static_cast<std::uint64_t>(l), targets);
      in(l) = amps[addr[static_cast<std::size_t>(l)]];
    }
    out.noalias() = matrix * in;
    for (Eigen::Index l = 0; l < d; ++l) {
      amps[addr[static_cast<std::size_t>(l)]] = out(l);
    }
  }
  return StateVector(state.num_qubits(), std::move(amps));
}

Eigen::MatrixXcd reduced_density(const StateVector& state, const std::vector<QubitId>& qubits) {
  check_targets(qubits, state.num_qubits());
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index d = 1LL << k;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  const auto& amps = state.amplitudes();
  std::vector<Complex> block(static_cast<std::size_t>(d));
  for (std::uint64_t base : rest_indices(state.num_qubits(), qubits)) {
    for (Eigen::Index l = 0; l < d; ++l) {
      block[static_cast<std::size_t>(l)] =
          amps[base | scatter(static_cast<std::uint64_t>(l), qubits)];
    }
    for (Eigen::Index l = 0; l < d; ++l) {
      if (block[static_cast<std::size_t>(l)] == Complex{0.0, 0.0}) {
        continue;
      }
      for (Eigen::Index m = 0; m < d; ++m) {
        rho(l, m) += block[static_cast<std::size_t>(l)] *
                     std::conj(block[static_cast<std::size_t>(m)]);
      }
    }
  }
  return rho;
}

bool is_product(const StateVector& state, const std::vector<QubitId>& qubits, double tol) {
  if (qubits.size() == static_cast<std::size_t>(state.num_qubits())) {
    return true;
  }
  const Eigen::MatrixXcd rho = reduced_density(state, qubits);
  // Pure factor iff tr(rho^2) == 1.
  const double purity = (rho * rho).trace().real();
  return std::abs(purity - 1.0) <= tol;
}

StateVector factor_state(const StateVector& state, const std::vector<QubitId>& qubits) {
  if (qubits.size() == static_cast<std::size_t>(state.num_qubits())) {
    std::vector<Complex> amps(state.dim());
    for (std::uint64_t l = 0; l < state.dim(); ++l) {
      amps[l] = state.amplitudes()[scatter(l, qubits)];
    }
    return StateVector(state.num_qubits(), std::move(amps));
  }
  const Eigen::MatrixXcd rho = reduced_density(state, qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::Index top = rho.rows() - 1;  // eigenvalues ascending
  if (std::abs(es.eigenvalues()(top) - 1.0) > 1e-6) {
    throw ValidationError("qubits are entangled with the remainder; no pure factor");
  }
  return StateVector::from_eigen(static_cast<int>(qubits.size()), es.eigenvectors().col(top));
}

StateVector remove_qubits(const StateVector& state, const std::vector<QubitId>& qubits) {
  if (qubits.empty()) {
    return state;
  }
  const StateVector factor = factor_state(state, qubits);
  const int k = static_cast<int>(qubits.size());
  const int rest_n = state.num_qubits() - k;
  std::uint64_t target_mask = 0;
  for (QubitId q : qubits) {
    target_mask |= 1ULL << q;
  }
  // Contract the factor out: rest[r] = ⟨factor | state(·, r)⟩.
  std::vector<Complex> rest(1ULL << rest_n, Complex{0.0, 0.0});
  const auto& amps = state.amplitudes();
  const std::uint64_t d = 1ULL << k;
  for (std::uint64_t base : rest_indices(state.num_qubits(), qubits)) {
    Complex acc{0.0, 0.0};
    for (std::uint64_t l = 0; l < d; ++l) {
      acc += std::conj(factor.amplitudes()[l]) * amps[base | scatter(l, qubits)];
    }
    std::uint64_t compressed = 0;
    int out_bit = 0;
    for (int q = 0; q < state.num_qubits(); ++q) {
      if (target_mask & (1ULL << q)) {
        continue;
      }
      compressed |= ((base >> q) & 1ULL) << out_bit;
      ++out_bit;
    }
    rest[compressed] = acc;
  }
  return StateVector(rest_n, std::move(rest));
}

StateVector replace_factor(const StateVector& state, const std::vector<QubitId>& qubits,
                           const StateVector& factor) {
  if (factor.num_qubits() != static_cast<int>(qubits.size())) {
    throw DomainError("replacement factor size does not match qubit list");
  }
  if (!is_product(state, qubits)) {
    throw ValidationError("qubits are entangled with the remainder; cannot replace factor");
  }
  if (qubits.size() == static_cast<std::size_t>(state.num_qubits())) {
    std::vector<Complex> amps(state.dim());
    for (std::uint64_t l = 0; l < state.dim(); ++l) {
      amps[scatter(l, qubits)] = factor.amplitudes()[l];
    }
    return StateVector(state.num_qubits(), std::move(amps));
  }
  const StateVector rest = remove_qubits(state, qubits);
  std::vector<Complex> amps(state.dim(), Complex{0.0, 0.0});
  std::uint64_t target_mask = 0;
  for (QubitId q : qubits) {
    target_mask |= 1ULL << q;
  }
  const std::uint64_t d = 1ULL << qubits.size();
  for (std::uint64_t base : rest_indices(state.num_qubits(), qubits)) {
    std::uint64_t compressed = 0;
    int out_bit = 0;
    for (int q = 0; q < state.num_qubits(); ++q) {
      if (target_mask & (1ULL << q)) {
        continue;
      }
      compressed |= ((base >> q) & 1ULL) << out_bit;
      ++out_bit;
    }
    for (std::uint64_t l = 0; l < d; ++l) {
      amps[base | scatter(l, qubits)] = rest.amplitudes()[compressed] * factor.amplitudes()[l];
    }
  }
  return StateVector(state.num_qubits(), std::move(amps));
}

Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd& op, const std::vector<QubitId>& targets,
                                int num_qubits) {
  check_targets(targets, num_qubits);
  const Eigen::Index local = 1LL << targets.size();
  if (op.rows() != local || op.cols() != local) {
    throw DomainError("operator dimension does not match target count");
  }
  const Eigen::Index dim = 1LL << num_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t base : rest_indices(num_qubits, targets)) {
    for (Eigen::Index l = 0; l < local; ++l) {
      for (Eigen::Index m = 0; m < local; ++m) {
        out(static_cast<Eigen::Index>(base | scatter(static_cast<std::uint64_t>(l), targets)),
            static_cast<Eigen::Index>(base | scatter(static_cast<std::uint64_t>(m), targets))) =
            op(l, m);
      }
    }
  }
  return out;
}

}  // namespace tsq
