#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "tsq/errors.hpp"
#include "tsq/gates.hpp"
#include "tsq/measurement.hpp"
#include "tsq/pauli.hpp"
#include "tsq/random.hpp"
#include "tsq/random_states.hpp"
#include "tsq/state_vector.hpp"

using namespace tsq;

namespace {

const double kInv = kInvSqrt2;

void check_amplitudes(const StateVector& s, const std::vector<Complex>& expected,
                      double tol = 1e-12) {
  REQUIRE(s.dim() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(s.amplitudes()[i] - expected[i]) < tol);
  }
}

StateVector up() { return StateVector::basis_state(1, 0); }
StateVector down() { return StateVector::basis_state(1, 1); }

}  // namespace

TEST_CASE("basis_state: computational definitions and range errors") {
  check_amplitudes(up(), {1.0, 0.0});
  check_amplitudes(down(), {0.0, 1.0});
  check_amplitudes(StateVector::basis_state(2, 3), {0.0, 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(StateVector::basis_state(1, 2), DomainError);
  CHECK_THROWS_AS(StateVector::basis_state(kMaxQubits + 1, 0), CapacityError);
}

TEST_CASE("tensor follows the Kronecker convention") {
  // |↑⟩ ⊗ |↓⟩: left operand on the high bits.
  const auto expected = oracle::kron({1.0, 0.0}, {0.0, 1.0});
  check_amplitudes(tensor(up(), down()), expected);
  check_amplitudes(tensor(up(), down()), {0.0, 1.0, 0.0, 0.0});

  // |↑⟩ ⊗ singlet, frozen from the independent Kronecker oracle.
  const auto s3 = tensor(up(), singlet_state());
  check_amplitudes(s3, oracle::kron({1.0, 0.0}, {0.0, kInv, -kInv, 0.0}));
  check_amplitudes(s3, {0.0, kInv, -kInv, 0.0, 0.0, 0.0, 0.0, 0.0});

  // Zero-qubit identity.
  const StateVector any = tensor(up(), down());
  CHECK(fidelity_up_to_phase(tensor(any, StateVector()), any) == doctest::Approx(1.0));
  CHECK(fidelity_up_to_phase(tensor(StateVector(), any), any) == doctest::Approx(1.0));
}

TEST_CASE("from_qubit_states places element i on qubit i") {
  const StateVector s = from_qubit_states({down(), up()});  // q0=↓, q1=↑
  check_amplitudes(s, {0.0, 1.0, 0.0, 0.0});
}

TEST_CASE("apply_unitary: basics, validation, oracle agreement") {
  check_amplitudes(apply_unitary(up(), gates::pauli_x(), {0}), {0.0, 1.0});

  // CNOT·(H⊗I) on |↑↑⟩ prepares the Bell state (derived by direct matrix
  // computation in the oracle).
  Eigen::Matrix4cd h_tensor_i = Eigen::Matrix4cd::Zero();
  const Eigen::Matrix2cd h = gates::hadamard();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      h_tensor_i.block<2, 2>(2 * r, 2 * c) = h(r, c) * Eigen::Matrix2cd::Identity();
    }
  }
  const Eigen::Matrix4cd bellprep = gates::cnot() * h_tensor_i;
  const auto got = apply_unitary(StateVector::basis_state(2, 0), bellprep, {0, 1});
  const auto want = oracle::apply(StateVector::basis_state(2, 0), bellprep, {0, 1});
  CHECK(fidelity_up_to_phase(got, want) == doctest::Approx(1.0));
  check_amplitudes(got, {kInv, 0.0, 0.0, kInv});

  // Identity leaves any state alone.
  RandomSource rng(11);
  const StateVector psi = random_state(rng, 3);
  CHECK(fidelity_up_to_phase(apply_unitary(psi, Eigen::MatrixXcd::Identity(4, 4), {2, 0}), psi) ==
        doctest::Approx(1.0));

  Eigen::Matrix2cd bad;
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(apply_unitary(up(), bad, {0}), ValidationError);
  CHECK_THROWS_AS(apply_unitary(StateVector::basis_state(2, 0), gates::cnot(), {0, 0}),
                  DomainError);
  CHECK_THROWS_AS(apply_unitary(up(), gates::cnot(), {0}), DomainError);
}

TEST_CASE("apply_unitary matches the embedded-matrix oracle on random input") {
  RandomSource rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_state(rng, 4);
    // Random 2-qubit unitary from a Haar-ish QR factorization.
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        g(r, c) = Complex(gaussian(rng), gaussian(rng));
      }
    }
    const Eigen::Matrix4cd u = Eigen::HouseholderQR<Eigen::Matrix4cd>(g).householderQ();
    const std::vector<QubitId> targets{3, 1};
    const auto got = apply_unitary(psi, u, targets);
    const auto want = oracle::apply(psi, u, {3, 1});
    CHECK(fidelity_up_to_phase(got, want) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(got.norm_squared() - 1.0) < 1e-9);
  }
}

TEST_CASE("measure_projective: collapse, probabilities, validation") {
  RandomSource rng(5);
  const auto z = gates::axis_projectors('z');

  auto r = measure_projective(up(), z, {0}, rng);
  CHECK(r.outcome == 0);
  CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));

  const StateVector plus(1, {kInv, kInv});
  int ones = 0;
  for (int i = 0; i < 400; ++i) {
    auto rr = measure_projective(plus, z, {0}, rng);
    CHECK(rr.probability == doctest::Approx(0.5).epsilon(1e-12));
    ones += rr.outcome;
  }
  CHECK(ones > 140);
  CHECK(ones < 260);

  // Singlet measured in the 2-qubit computational basis: only ↑↓ and ↓↑.
  const auto comp = gates::computational_projectors(2);
  for (int i = 0; i < 100; ++i) {
    auto rr = measure_projective(singlet_state(), comp, {1, 0}, rng);
    CHECK((rr.outcome == 1 || rr.outcome == 2));
    CHECK(rr.probability == doctest::Approx(0.5).epsilon(1e-12));
  }

  // Incomplete and non-orthogonal families are rejected.
  CHECK_THROWS_AS(measure_projective(up(), {z[0]}, {0}, rng), ValidationError);
  const auto x = gates::axis_projectors('x');
  CHECK_THROWS_AS(measure_projective(up(), {z[0], x[1]}, {0}, rng), ValidationError);
}

TEST_CASE("collapse consistency: reported weight equals the projected norm") {
  RandomSource rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi = random_state(rng, 3);
    const auto z = gates::axis_projectors('z');
    const double p0 = outcome_probability(psi, z[0], {1});
    auto r = measure_projective(psi, z, {1}, rng);
    const double expected = r.outcome == 0 ? p0 : 1.0 - p0;
    CHECK(std::abs(r.probability - expected) < 1e-12);
  }
}

TEST_CASE("bell_measure: eigenstates, distributions, errors") {
  RandomSource rng(7);

  // Singlet collapses to PsiMinus with certainty.
  StateVector reg = StateVector::basis_state(4, 0);
  reg = replace_factor(reg, {0, 1}, singlet_state());
  for (int i = 0; i < 20; ++i) {
    auto r = bell_measure(reg, {1, 0}, rng);
    CHECK(r.outcome == BellOutcome::PsiMinus);
    CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));
  }

  // |↑↑⟩: Φ outcomes only, each with weight 1/2 (overlap of |↑↑⟩ with the
  // four Bell states).
  int phi_plus = 0;
  for (int i = 0; i < 300; ++i) {
    auto r = bell_measure(StateVector::basis_state(2, 0), {1, 0}, rng);
    CHECK((r.outcome == BellOutcome::PhiPlus || r.outcome == BellOutcome::PhiMinus));
    CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-12));
    phi_plus += r.outcome == BellOutcome::PhiPlus ? 1 : 0;
  }
  CHECK(phi_plus > 100);
  CHECK(phi_plus < 200);

  CHECK_THROWS_AS(bell_measure(StateVector::basis_state(2, 0), {1, 1}, rng), DomainError);
}

TEST_CASE("Bell/Pauli duality: byproduct equals the outcome's correction") {
  // |ψ⟩ on q0, Φ+ channel on (q1, q2); projecting (q0, q1) onto each Bell
  // state leaves correction(o)·ψ on q2. Exhaustive over 4 outcomes and 6
  // cardinal states.
  const std::vector<StateVector> cardinals = {
      up(),
      down(),
      StateVector(1, {kInv, kInv}),
      StateVector(1, {kInv, -kInv}),
      StateVector(1, {Complex(kInv, 0), Complex(0, kInv)}),
      StateVector(1, {Complex(kInv, 0), Complex(0, -kInv)}),
  };
  for (const StateVector& psi : cardinals) {
    StateVector reg = StateVector::basis_state(3, 0);
    reg = replace_factor(reg, {0}, psi);
    reg = replace_factor(reg, {1, 2},
                         StateVector(2, {Complex(kInv, 0), {0, 0}, {0, 0}, Complex(kInv, 0)}));
    for (int o = 0; o < 4; ++o) {
      const auto outcome = static_cast<BellOutcome>(o);
      auto [w, collapsed] =
          project_collapse(reg, gates::projector(bell_ket(outcome)), {0, 1});
      REQUIRE(w > 0.2);  // each outcome carries weight 1/4
      CHECK(w == doctest::Approx(0.25).epsilon(1e-10));
      const StateVector expected = apply_byproduct(
          psi, PauliByproduct({correction_for(outcome, ChannelKind::PhiPlus)}), {0});
      const double fid =
          outcome_probability(collapsed, gates::projector(expected.as_eigen()), {2});
      CHECK(fid == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("uniform Bell statistics on a maximally entangled pair") {
  RandomSource rng(29);
  StateVector reg = StateVector::basis_state(4, 0);
  reg = replace_factor(reg, {0, 2},
                       StateVector(2, {Complex(kInv, 0), {0, 0}, {0, 0}, Complex(kInv, 0)}));
  reg = replace_factor(reg, {1, 3},
                       StateVector(2, {Complex(kInv, 0), {0, 0}, {0, 0}, Complex(kInv, 0)}));
  std::vector<int> counts(4, 0);
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    auto r = bell_measure(reg, {0, 1}, rng);
    CHECK(r.probability == doctest::Approx(0.25).epsilon(1e-10));
    counts[static_cast<std::size_t>(r.outcome)]++;
  }
  for (int o = 0; o < 4; ++o) {
    const double freq = static_cast<double>(counts[static_cast<std::size_t>(o)]) / trials;
    CHECK(std::abs(freq - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / trials));
  }
}

TEST_CASE("prepare_singlet: formula, idempotence, embedding, entangled error") {
  // Fresh 2-qubit register.
  const auto s = prepare_singlet(StateVector::basis_state(2, 0), {1, 0});
  check_amplitudes(s, {0.0, kInv, -kInv, 0.0});
  // Opposite pair order differs by the antisymmetric sign only.
  const auto swapped = prepare_singlet(StateVector::basis_state(2, 0), {0, 1});
  CHECK(fidelity_up_to_phase(swapped, s) == doctest::Approx(1.0));

  // Idempotent.
  CHECK(fidelity_up_to_phase(prepare_singlet(s, {1, 0}), s) == doctest::Approx(1.0));

  // On qubits (1,2) of |↑⟩⊗|↑↑⟩; frozen from the Kronecker oracle with the
  // pair reading |first second⟩ = |q1 q2⟩.
  const auto embedded = prepare_singlet(StateVector::basis_state(3, 0), {1, 2});
  check_amplitudes(embedded, {0.0, 0.0, -kInv, 0.0, kInv, 0.0, 0.0, 0.0});
  CHECK(fidelity_up_to_phase(factor_state(embedded, {0}), up()) == doctest::Approx(1.0));

  // Pair entangled with the remainder is rejected.
  StateVector ghz(3, {kInv, 0, 0, 0, 0, 0, 0, kInv});
  CHECK_THROWS_AS(prepare_singlet(ghz, {0, 1}), ValidationError);
}

TEST_CASE("apply_byproduct: elements, order convention, errors") {
  check_amplitudes(apply_byproduct(up(), PauliByproduct({PauliOp{true, false}}), {0}),
                   {0.0, 1.0});
  // Z on |↓⟩ is a pure phase.
  const auto z_down = apply_byproduct(down(), PauliByproduct({PauliOp{false, true}}), {0});
  check_amplitudes(z_down, {0.0, -1.0});
  CHECK(fidelity_up_to_phase(z_down, down()) == doctest::Approx(1.0));
  // XZ = X·Z (Z first): on |↑⟩ gives |↓⟩ exactly.
  check_amplitudes(apply_byproduct(up(), PauliByproduct({PauliOp{true, true}}), {0}),
                   {0.0, 1.0});
  CHECK_THROWS_AS(apply_byproduct(up(), PauliByproduct::identity(2), {0}), DomainError);
}

TEST_CASE("byproduct composition is a group up to phase") {
  const std::vector<PauliOp> elems = {
      {false, false}, {true, false}, {false, true}, {true, true}};
  RandomSource rng(31);
  const StateVector psi = random_state(rng, 1);
  for (const PauliOp& a : elems) {
    for (const PauliOp& b : elems) {
      const StateVector sequential = apply_byproduct(
          apply_byproduct(psi, PauliByproduct({b}), {0}), PauliByproduct({a}), {0});
      const StateVector composed =
          apply_byproduct(psi, PauliByproduct({compose(a, b)}), {0});
      CHECK(fidelity_up_to_phase(sequential, composed) == doctest::Approx(1.0));
    }
  }
  // Associativity of the composition table.
  for (const PauliOp& a : elems) {
    for (const PauliOp& b : elems) {
      for (const PauliOp& c : elems) {
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      }
    }
  }
}

TEST_CASE("fidelity_up_to_phase") {
  RandomSource rng(37);
  const StateVector s = random_state(rng, 2);
  CHECK(fidelity_up_to_phase(s, s) == doctest::Approx(1.0));
  std::vector<Complex> rotated = s.amplitudes();
  const Complex phase = std::polar(1.0, 1.2345);
  for (Complex& a : rotated) {
    a *= phase;
  }
  CHECK(fidelity_up_to_phase(s, StateVector(2, rotated)) == doctest::Approx(1.0));
  CHECK(fidelity_up_to_phase(up(), down()) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity_up_to_phase(up(), StateVector::basis_state(2, 0)), DomainError);
}

TEST_CASE("factor extraction and removal") {
  RandomSource rng(41);
  const StateVector a = random_state(rng, 1);
  const StateVector b = random_state(rng, 2);
  const StateVector joint = tensor(b, a);  // a on qubit 0, b on qubits 1..2
  CHECK(is_product(joint, {0}));
  CHECK(fidelity_up_to_phase(factor_state(joint, {0}), a) == doctest::Approx(1.0));
  CHECK(fidelity_up_to_phase(remove_qubits(joint, {0}), b) == doctest::Approx(1.0));

  StateVector bell(2, {kInv, 0, 0, kInv});
  CHECK(!is_product(bell, {0}));
  CHECK_THROWS_AS(factor_state(bell, {0}), ValidationError);
}

TEST_CASE("RandomSource: reproducibility and substreams") {
  RandomSource a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    const double va = a.uniform();
    CHECK(va == b.uniform());
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  (void)c;
  RandomSource s1 = RandomSource(123).substream(1);
  RandomSource s2 = RandomSource(123).substream(2);
  CHECK(s1.bits() != s2.bits());
  RandomSource s1b = RandomSource(123).substream(1);
  CHECK(RandomSource(123).substream(1).bits() == s1b.bits());

  RandomSource rng(9);
  std::vector<double> w{0.0, 0.0};
  CHECK_THROWS_AS(rng.sample_discrete(w), NumericalError);
  std::vector<double> neg{-1.0, 2.0};
  CHECK_THROWS_AS(rng.sample_discrete(neg), DomainError);
}

TEST_CASE("norm is preserved by unitaries within tolerance") {
  RandomSource rng(43);
  StateVector psi = random_state(rng, 4);
  for (int i = 0; i < 50; ++i) {
    Eigen::Matrix2cd g;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        g(r, c) = Complex(gaussian(rng), gaussian(rng));
      }
    }
    const Eigen::Matrix2cd u = Eigen::HouseholderQR<Eigen::Matrix2cd>(g).householderQ();
    psi = apply_unitary(psi, u, {static_cast<QubitId>(rng.bits() % 4)});
    CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-9);
  }
}
