#include "tsq/measurement.hpp"

#include <cmath>

#include "bit_ops.hpp"
#include "tsq/errors.hpp"
#include "tsq/gates.hpp"

namespace tsq {
namespace {

void check_projector_family(const std::vector<Eigen::MatrixXcd>& projectors,
                            Eigen::Index dim) {
  if (projectors.empty()) {
    throw ValidationError("empty projector list");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw DomainError("projector dimension does not match target count");
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

// Applies a local (possibly non-unitary) operator to the target subspace
// without materializing the full-space matrix.
std::vector<Complex> apply_local(const StateVector& state, const Eigen::MatrixXcd& op,
                                 const std::vector<QubitId>& targets) {
  detail::check_targets(targets, state.num_qubits());
  const Eigen::Index d = 1LL << targets.size();
  if (op.rows() != d || op.cols() != d) {
    throw DomainError("operator dimension does not match target count");
  }
  std::vector<Complex> amps = state.amplitudes();
  std::vector<std::uint64_t> addr(static_cast<std::size_t>(d));
  Eigen::VectorXcd in(d), out(d);
  for (std::uint64_t base : detail::rest_indices(state.num_qubits(), targets)) {
    for (Eigen::Index l = 0; l < d; ++l) {
      addr[static_cast<std::size_t>(l)] =
          base | detail::scatter(static_cast<std::uint64_t>(l), targets);
      in(l) = amps[addr[static_cast<std::size_t>(l)]];
    }
    out.noalias() = op * in;
    for (Eigen::Index l = 0; l < d; ++l) {
      amps[addr[static_cast<std::size_t>(l)]] = out(l);
    }
  }
  return amps;
}

double vec_norm2(const std::vector<Complex>& v) {
  double n = 0.0;
  for (const Complex& a : v) {
    n += std::norm(a);
  }
  return n;
}

}  // namespace

double outcome_probability(const StateVector& state, const Eigen::MatrixXcd& projector,
                           const std::vector<QubitId>& targets) {
  return vec_norm2(apply_local(state, projector, targets));
}

std::pair<double, StateVector> project_collapse(const StateVector& state,
                                                const Eigen::MatrixXcd& projector,
                                                const std::vector<QubitId>& targets) {
  std::vector<Complex> amps = apply_local(state, projector, targets);
  const double weight = vec_norm2(amps);
  if (weight < kProbFloor) {
    return {0.0, state};
  }
  const double inv = 1.0 / std::sqrt(weight);
  for (Complex& a : amps) {
    a *= inv;
  }
  return {weight, StateVector(state.num_qubits(), std::move(amps))};
}

ProjectiveResult measure_projective(const StateVector& state,
                                    const std::vector<Eigen::MatrixXcd>& projectors,
                                    const std::vector<QubitId>& targets, RandomSource& rng) {
  check_projector_family(projectors, 1LL << targets.size());
  std::vector<double> weights(projectors.size());
  std::vector<std::pair<double, StateVector>> collapsed;
  collapsed.reserve(projectors.size());
  bool any = false;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    collapsed.push_back(project_collapse(state, projectors[k], targets));
    weights[k] = collapsed.back().first;
    any = any || weights[k] >= kProbFloor;
  }
  if (!any) {
    throw NumericalError("all outcome probabilities below floor");
  }
  const int k = rng.sample_discrete(weights);
  return ProjectiveResult{k, std::move(collapsed[static_cast<std::size_t>(k)].second),
                          weights[static_cast<std::size_t>(k)]};
}

std::vector<Eigen::MatrixXcd> bell_projectors() {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(4);
  for (int o = 0; o < 4; ++o) {
    out.push_back(gates::projector(bell_ket(static_cast<BellOutcome>(o))));
  }
  return out;
}

BellResult bell_measure(const StateVector& state, std::pair<QubitId, QubitId> pair,
                        RandomSource& rng) {
  if (pair.first == pair.second) {
    throw DomainError("bell_measure requires two distinct qubits");
  }
  ProjectiveResult r =
      measure_projective(state, bell_projectors(), {pair.first, pair.second}, rng);
  return BellResult{static_cast<BellOutcome>(r.outcome), std::move(r.state), r.probability};
}

StateVector singlet_state() {
  return StateVector(2, {Complex{0, 0}, Complex{kInvSqrt2, 0}, Complex{-kInvSqrt2, 0},
                         Complex{0, 0}});
}

StateVector prepare_singlet(const StateVector& state, std::pair<QubitId, QubitId> pair) {
  if (pair.first == pair.second) {
    throw DomainError("prepare_singlet requires two distinct qubits");
  }
  return replace_factor(state, {pair.first, pair.second}, singlet_state());
}

StateVector apply_byproduct(const StateVector& state, const PauliByproduct& byproduct,
                            const std::vector<QubitId>& targets) {
  if (byproduct.size() != static_cast<int>(targets.size())) {
    throw DomainError("byproduct length does not match target count");
  }
  StateVector out = state;
  for (int i = 0; i < byproduct.size(); ++i) {
    if (byproduct.op(i).is_identity()) {
      continue;
    }
    out = apply_unitary(out, pauli_op_matrix(byproduct.op(i)),
                        {targets[static_cast<std::size_t>(i)]});
  }
  return out;
}

}  // namespace tsq
