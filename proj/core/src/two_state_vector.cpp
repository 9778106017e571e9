#include "tsq/two_state_vector.hpp"

#include <cmath>

#include "tsq/errors.hpp"

namespace tsq::tsv {
namespace {

void check_family(const std::vector<Eigen::MatrixXcd>& projectors, Eigen::Index dim) {
  if (projectors.empty()) {
    throw ValidationError("empty projector list");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw DomainError("projector dimension mismatch");
    }
    sum += p;
  }
  if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > kExactTol) {
    throw ValidationError("projectors do not sum to identity");
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((projectors[i] * projectors[j]).cwiseAbs().maxCoeff() > kExactTol) {
        throw ValidationError("projectors are not mutually orthogonal");
      }
    }
  }
}

}  // namespace

void validate(const TwoStateVector& tsv) {
  if (tsv.bra.num_qubits() != tsv.ket.num_qubits()) {
    throw DomainError("two-state vector bra/ket qubit counts differ");
  }
  // StateVector enforces normalization on construction.
  for (const auto& [qubit, site] : tsv.site_partition) {
    if (qubit < 0 || qubit >= tsv.ket.num_qubits()) {
      throw DomainError("site partition references unknown qubit");
    }
    (void)site;
  }
}

std::vector<double> abl_probability(const TwoStateVector& tsv,
                                    const std::vector<Eigen::MatrixXcd>& projectors) {
  validate(tsv);
  const Eigen::Index dim = static_cast<Eigen::Index>(tsv.ket.dim());
  check_family(projectors, dim);

  const Eigen::VectorXcd phi = tsv.bra.as_eigen();
  const Eigen::VectorXcd psi = tsv.ket.as_eigen();
  std::vector<double> weights(projectors.size());
  double denom = 0.0;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const Complex amp = phi.dot(projectors[k] * psi);  // ⟨Φ|P_k|Ψ⟩
    weights[k] = std::norm(amp);
    denom += weights[k];
  }
  if (denom < kProbFloor) {
    throw DomainError("ABL denominator vanishes: post-selection unreachable through this measurement");
  }
  for (double& w : weights) {
    w /= denom;
  }
  return weights;
}

}  // namespace tsq::tsv
