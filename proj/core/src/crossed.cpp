#include "tsq/crossed.hpp"

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"

namespace tsq::protocols {
namespace {

// |a, v⟩ → |a, v + sign·(1−2a) mod 2^bits⟩ in the |a v⟩ basis (a = MSB).
Eigen::MatrixXcd z_controlled_shift(int bits, int sign) {
  const int m = 1 << bits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int a = 0; a < 2; ++a) {
    const int step = sign * (1 - 2 * a);
    for (int v = 0; v < m; ++v) {
      const int w = ((v + step) % m + m) % m;
      u(a * m + w, a * m + v) = 1.0;
    }
  }
  return u;
}

// Same coupling in the x basis of the control.
Eigen::MatrixXcd x_controlled_shift(int bits, int sign) {
  const int m = 1 << bits;
  const Eigen::Matrix2cd had = gates::hadamard();
  // H ⊗ I_m on the control bit.
  Eigen::MatrixXcd hfull = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      hfull.block(a * m, b * m, m, m) = had(a, b) * Eigen::MatrixXcd::Identity(m, m);
    }
  }
  return hfull * z_controlled_shift(bits, sign) * hfull;
}

constexpr QubitId kA = 0;
constexpr QubitId kB = 1;
constexpr QubitId kD = 2;
const std::vector<QubitId> kP1{5, 4, 3};  // MSB first
const std::vector<QubitId> kP2{7, 6};

int value_index(int o1_value, std::optional<int> o2_value) {
  if (o1_value == 2) {
    return 0;
  }
  if (o1_value == -2) {
    return 1;
  }
  if (o1_value == 0 && o2_value.has_value() && *o2_value == 0) {
    return 2;
  }
  if (o1_value == 0 && o2_value.has_value() && *o2_value == 2) {
    return 3;
  }
  throw DomainError("invalid crossed-measurement value pair");
}

}  // namespace

StateVector crossed_eigenstate_stored(int index) {
  switch (index) {
    case 0:  // |↑⟩_A ⟨↓|_B
      return StateVector::basis_state(2, 2);
    case 1:  // |↓⟩_A ⟨↑|_B
      return StateVector::basis_state(2, 1);
    case 2:  // (|↑⟩_A⟨↑|_B + |↓⟩_A⟨↓|_B)/√2
      return StateVector(2, {Complex{kInvSqrt2, 0}, {0, 0}, {0, 0}, Complex{kInvSqrt2, 0}});
    case 3:  // (|↑⟩_A⟨↑|_B − |↓⟩_A⟨↓|_B)/√2
      return StateVector(2, {Complex{kInvSqrt2, 0}, {0, 0}, {0, 0}, Complex{-kInvSqrt2, 0}});
    default:
      throw DomainError("crossed eigenstate index out of range");
  }
}

StateVector crossed_eigenstate_image(int index) {
  switch (index) {
    case 0:  // |↑⟩_A |↑⟩_B
      return StateVector::basis_state(2, 0);
    case 1:  // |↓⟩_A |↓⟩_B
      return StateVector::basis_state(2, 3);
    case 2:  // (|↑⟩_A|↓⟩_B − |↓⟩_A|↑⟩_B)/√2
      return StateVector(2, {{0, 0}, Complex{-kInvSqrt2, 0}, Complex{kInvSqrt2, 0}, {0, 0}});
    case 3:  // (|↑⟩_A|↓⟩_B + |↓⟩_A|↑⟩_B)/√2
      return StateVector(2, {{0, 0}, Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}, {0, 0}});
    default:
      throw DomainError("crossed eigenstate index out of range");
  }
}

NonlocalObservable crossed_observable() {
  NonlocalObservable obs;
  for (int k = 0; k < 4; ++k) {
    obs.eigenstates.push_back(crossed_eigenstate_stored(k));
  }
  obs.eigenvalues = {2.0, -2.0, 0.0, 0.0};
  obs.site_partition = {{0, 0}, {1, 1}};
  obs.direction_tags = {{0, Direction::Forward}, {1, Direction::Backward}};
  return obs;
}

NonlocalObservable crossed_image_observable() { return forward_image_observable(crossed_observable()); }

NonlocalObservable product_form_observable() {
  NonlocalObservable obs;
  for (int k = 0; k < 4; ++k) {
    obs.eigenstates.push_back(crossed_eigenstate_image(k));
  }
  obs.eigenvalues = {2.0, -2.0, 0.0, 0.0};
  obs.site_partition = {{0, 0}, {1, 1}};
  obs.direction_tags = {{0, Direction::Forward}, {1, Direction::Forward}};
  return obs;
}

NonlocalObservable bell_observable() {
  NonlocalObservable obs;
  for (int o = 0; o < 4; ++o) {
    const Eigen::Vector4cd v = bell_ket(static_cast<BellOutcome>(o));
    // bell_ket reads |first second⟩; take first = qubit 1, second = qubit 0.
    obs.eigenstates.push_back(StateVector(
        2, {v(0), v(1), v(2), v(3)}));
  }
  obs.eigenvalues = {0.0, 1.0, 2.0, 3.0};
  obs.site_partition = {{0, 0}, {1, 1}};
  obs.direction_tags = {{0, Direction::Forward}, {1, Direction::Forward}};
  return obs;
}

CrossedScenario crossed_measurement_scenario(int o1_value, std::optional<int> o2_value) {
  CrossedScenario out;
  out.eigen_index = value_index(o1_value, o2_value);

  tsv::Scenario s;
  s.num_qubits = 8;
  StateVector pre = StateVector::basis_state(8, 0);
  // A unbiased in both z and x: the y eigenstate.
  pre = replace_factor(pre, {kA},
                       StateVector(1, {Complex{kInvSqrt2, 0}, Complex{0, kInvSqrt2}}));
  // B's past erased: maximally mixed as half of a pair whose partner D is
  // never touched again.
  pre = replace_factor(pre, {kB, kD},
                       StateVector(2, {Complex{kInvSqrt2, 0}, {0, 0}, {0, 0},
                                       Complex{kInvSqrt2, 0}}));
  s.preselection = std::move(pre);

  const auto coupling = [](std::string id, SiteId site, double time, Eigen::MatrixXcd m,
                           QubitId control, const std::vector<QubitId>& pointer) {
    tsv::Step step;
    step.id = std::move(id);
    step.site = site;
    step.time = time;
    std::vector<QubitId> targets{control};
    targets.insert(targets.end(), pointer.begin(), pointer.end());
    step.op = tsv::UnitaryStep{std::move(m), std::move(targets)};
    return step;
  };

  s.timeline.push_back(coupling("o2-couple-A", 0, 1.0, x_controlled_shift(2, +1), kA, kP2));
  s.timeline.push_back(coupling("o1-couple-A", 0, 2.0, z_controlled_shift(3, +1), kA, kP1));
  s.timeline.push_back(coupling("o1-couple-B", 1, 4.0, z_controlled_shift(3, -1), kB, kP1));
  s.timeline.push_back(coupling("o2-couple-B", 1, 5.0, x_controlled_shift(2, -1), kB, kP2));

  const int p1_value = o1_value == 2 ? 2 : o1_value == -2 ? 6 : 0;
  s.postselections.push_back(tsv::PostSelection{
      "o1-readout", gates::computational_projectors(3)[static_cast<std::size_t>(p1_value)], kP1});
  if (o1_value == 0) {
    s.postselections.push_back(tsv::PostSelection{
        "o2-readout", gates::computational_projectors(2)[static_cast<std::size_t>(*o2_value)],
        kP2});
  }
  out.scenario = std::move(s);
  return out;
}

}  // namespace tsq::protocols
