#include "tsq/generalized.hpp"

#include <cmath>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"

namespace tsq::tsv {
namespace {

StateVector tensor_sites(const std::vector<StateVector>& factors) {
  StateVector out;
  // Site 0 occupies the lowest qubits, so fold from the highest site down.
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    out = tensor(out, *it);
  }
  return out;
}

}  // namespace

GeneralizedTwoStateVector::GeneralizedTwoStateVector(std::vector<GtsvTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw ValidationError("generalized two-state vector needs at least one term");
  }
  const std::size_t sites = terms_.front().bra_factors.size();
  if (sites == 0) {
    throw ValidationError("generalized two-state vector needs at least one site");
  }
  double coeff_norm2 = 0.0;
  for (const GtsvTerm& t : terms_) {
    if (t.bra_factors.size() != sites || t.ket_factors.size() != sites) {
      throw ValidationError("all terms must cover the same sites");
    }
    coeff_norm2 += std::norm(t.coefficient);
  }
  if (!std::isfinite(coeff_norm2) || coeff_norm2 < kProbFloor) {
    throw ValidationError("coefficient vector must be finite and nonzero");
  }
  site_qubits_.resize(sites);
  for (std::size_t s = 0; s < sites; ++s) {
    const int nb = terms_.front().bra_factors[s].num_qubits();
    const int nk = terms_.front().ket_factors[s].num_qubits();
    if (nb != nk) {
      throw ValidationError("bra and ket factors must agree per site");
    }
    for (const GtsvTerm& t : terms_) {
      if (t.bra_factors[s].num_qubits() != nb || t.ket_factors[s].num_qubits() != nb) {
        throw ValidationError("terms disagree on per-site qubit counts");
      }
    }
    site_qubits_[s] = nb;
    total_qubits_ += nb;
  }
}

StateVector GeneralizedTwoStateVector::global_bra(int term) const {
  return tensor_sites(terms_.at(static_cast<std::size_t>(term)).bra_factors);
}

StateVector GeneralizedTwoStateVector::global_ket(int term) const {
  return tensor_sites(terms_.at(static_cast<std::size_t>(term)).ket_factors);
}

Eigen::MatrixXcd GeneralizedTwoStateVector::as_operator() const {
  const Eigen::Index dim = 1LL << total_qubits_;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    op += terms_[t].coefficient * global_ket(static_cast<int>(t)).as_eigen() *
          global_bra(static_cast<int>(t)).as_eigen().adjoint();
  }
  return op;
}

std::optional<TwoStateVector> reduce_generalized(const GeneralizedTwoStateVector& gtsv) {
  const Eigen::MatrixXcd op = gtsv.as_operator();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) < kProbFloor) {
    return std::nullopt;
  }
  if (sv.size() > 1 && sv(1) > 1e-9 * sv(0)) {
    return std::nullopt;
  }
  TwoStateVector out;
  out.ket = StateVector::from_eigen(gtsv.total_qubits(), svd.matrixU().col(0));
  out.bra = StateVector::from_eigen(gtsv.total_qubits(), svd.matrixV().col(0));
  QubitId q = 0;
  for (int s = 0; s < gtsv.num_sites(); ++s) {
    for (int i = 0; i < gtsv.site_qubits(s); ++i) {
      out.site_partition[q++] = s;
    }
  }
  return out;
}

std::vector<double> generalized_abl(const GeneralizedTwoStateVector& gtsv,
                                    const std::vector<Eigen::MatrixXcd>& projectors) {
  const Eigen::Index dim = 1LL << gtsv.total_qubits();
  std::vector<double> weights(projectors.size());
  double denom = 0.0;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    if (projectors[k].rows() != dim || projectors[k].cols() != dim) {
      throw DomainError("projector dimension mismatch");
    }
    Complex amp{0.0, 0.0};
    for (std::size_t t = 0; t < gtsv.terms().size(); ++t) {
      amp += gtsv.terms()[t].coefficient *
             gtsv.global_bra(static_cast<int>(t)).as_eigen().dot(
                 projectors[k] * gtsv.global_ket(static_cast<int>(t)).as_eigen());
    }
    weights[k] = std::norm(amp);
    denom += weights[k];
  }
  if (denom < kProbFloor) {
    throw DomainError("generalized ABL denominator vanishes");
  }
  for (double& w : weights) {
    w /= denom;
  }
  return weights;
}

GtsvScenario scenario_for_gtsv(const GeneralizedTwoStateVector& gtsv) {
  const int n = gtsv.total_qubits();
  const int num_terms = static_cast<int>(gtsv.terms().size());

  GtsvScenario out;
  out.system_qubits = n;

  if (num_terms == 1) {
    out.ancilla_qubits = 0;
    Scenario s;
    s.num_qubits = n;
    s.preselection = gtsv.global_ket(0);
    s.postselections.push_back(
        PostSelection{"post", gates::projector(gtsv.global_bra(0).as_eigen()), {}});
    out.scenario = std::move(s);
    return out;
  }

  int anc = 0;
  while ((1 << anc) < num_terms) {
    ++anc;
  }
  out.ancilla_qubits = anc;
  const int total = n + anc;
  if (total > kMaxQubits) {
    throw CapacityError("gtsv scenario needs " + std::to_string(total) +
                        " qubits, above the register cap");
  }
  const Eigen::Index dim = 1LL << total;
  const Eigen::Index sys_dim = 1LL << n;

  // Encode the term index on the ancilla: pre = Σ_t a_t |K_t⟩|t⟩ and
  // post = Σ_t b_t |B_t⟩|t⟩ with conj(b_t)·a_t ∝ c_t; the ancilla
  // orthogonality kills the cross terms in the ABL amplitudes.
  Eigen::VectorXcd pre = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd post = Eigen::VectorXcd::Zero(dim);
  for (int t = 0; t < num_terms; ++t) {
    const Complex c = gtsv.terms()[static_cast<std::size_t>(t)].coefficient;
    const double mag = std::sqrt(std::abs(c));
    const Complex phase = std::abs(c) < kProbFloor ? Complex{1.0, 0.0} : c / std::abs(c);
    const Eigen::VectorXcd ket = gtsv.global_ket(t).as_eigen();
    const Eigen::VectorXcd bra = gtsv.global_bra(t).as_eigen();
    for (Eigen::Index i = 0; i < sys_dim; ++i) {
      const Eigen::Index idx = (static_cast<Eigen::Index>(t) << n) | i;
      pre(idx) += mag * ket(i);
      post(idx) += mag * std::conj(phase) * bra(i);
    }
  }
  pre.normalize();
  post.normalize();

  Scenario s;
  s.num_qubits = total;
  s.preselection = StateVector::from_eigen(total, pre);
  s.postselections.push_back(PostSelection{"post", gates::projector(post), {}});
  out.scenario = std::move(s);
  return out;
}

}  // namespace tsq::tsv
