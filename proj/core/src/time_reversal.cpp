#include "tsq/time_reversal.hpp"

#include <algorithm>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"
#include "tsq/measurement.hpp"
#include "tsq/pauli.hpp"

namespace tsq::protocols {
namespace {

bool touches(const tsv::Step& step, QubitId q) {
  const auto targets = tsv::step_targets(step);
  return std::find(targets.begin(), targets.end(), q) != targets.end();
}

bool postselected(const tsv::Scenario& scenario, QubitId q) {
  for (const auto& ps : scenario.postselections) {
    if (ps.targets.empty()) {
      return true;  // full-register projector covers every qubit
    }
    if (std::find(ps.targets.begin(), ps.targets.end(), q) != ps.targets.end()) {
      return true;
    }
  }
  return false;
}

}  // namespace

StateVector reversed_state(const StateVector& backward_stored) {
  // ⟨φ| with found ket (α, β) maps to −β*|↑⟩ + α*|↓⟩: conjugate, then XZ
  // per qubit. Antiunitary in the stored ket.
  std::vector<Complex> amps(backward_stored.dim());
  for (std::uint64_t i = 0; i < backward_stored.dim(); ++i) {
    amps[i] = std::conj(backward_stored.amplitudes()[i]);
  }
  StateVector out(backward_stored.num_qubits(), std::move(amps));
  const Eigen::Matrix2cd xz = pauli_op_matrix(PauliOp{true, true});
  for (int q = 0; q < out.num_qubits(); ++q) {
    out = apply_unitary(out, xz, {q});
  }
  return out;
}

tsv::Scenario time_reverse_backward(tsv::Scenario scenario, QubitId particle, QubitId ancilla,
                                    double t, double protected_until, SiteId site) {
  if (particle == ancilla) {
    throw DomainError("particle and ancilla must differ");
  }
  if (particle < 0 || particle >= scenario.num_qubits || ancilla < 0 ||
      ancilla >= scenario.num_qubits) {
    throw DomainError("particle or ancilla outside the scenario register");
  }
  for (const tsv::Step& step : scenario.timeline) {
    if (step.time <= t && touches(step, ancilla)) {
      throw ProtocolError("ancilla is not fresh at the reversal time");
    }
    if (step.time > t && step.time < protected_until && touches(step, particle)) {
      throw ProtocolError("disturbance on the particle inside the protected window (step '" +
                          step.id + "')");
    }
  }
  bool has_future = postselected(scenario, particle);
  for (const tsv::Step& step : scenario.timeline) {
    if (step.time >= protected_until && touches(step, particle)) {
      has_future = true;
    }
  }
  if (!has_future) {
    throw ProtocolError("scenario does not post-select the particle after the reversal");
  }

  tsv::Step step;
  step.id = "time-reversal@q" + std::to_string(particle);
  step.site = site;
  step.time = t;
  step.op = tsv::SingletizeStep{particle, ancilla};
  scenario.insert_step(std::move(step));
  return scenario;
}

ReverseForwardResult attempt_reverse_forward(const StateVector& state, QubitId qubit,
                                             QubitId ancilla, RandomSource& rng) {
  if (qubit == ancilla) {
    throw DomainError("qubit and ancilla must differ");
  }
  BellResult r = bell_measure(state, {qubit, ancilla}, rng);
  ReverseForwardResult out;
  out.outcome = r.outcome;
  out.state = std::move(r.state);
  out.success = r.outcome == BellOutcome::PsiMinus;
  return out;
}

MoveResult move_backward_state(tsv::Scenario scenario, QubitId particle,
                               std::pair<QubitId, QubitId> channel_qubits,
                               const std::string& channel_id, double t, SiteId site) {
  const QubitId far = channel_qubits.first;
  const QubitId near = channel_qubits.second;
  if (far == near) {
    throw DomainError("channel halves must be distinct qubits");
  }
  for (const tsv::Step& step : scenario.timeline) {
    if (const auto* c = std::get_if<tsv::ChannelEventStep>(&step.op)) {
      if (c->channel_id == channel_id) {
        throw ResourceError("channel '" + channel_id + "' already consumed");
      }
    }
  }
  // The channel must be pre-shared: a singlet factor in the preselection.
  const StateVector factor = factor_state(scenario.preselection, {far, near});
  if (fidelity_up_to_phase(factor, singlet_state()) < 1.0 - 1e-6) {
    throw ResourceError("channel '" + channel_id + "' is not a pre-shared singlet");
  }

  if (particle != near) {
    tsv::Step swap;
    swap.id = "move-swap@q" + std::to_string(particle);
    swap.site = site;
    swap.time = t;
    swap.op = tsv::UnitaryStep{gates::swap_gate(), {particle, near}};
    scenario.insert_step(std::move(swap));
  }
  tsv::Step consume;
  consume.id = "move-channel:" + channel_id;
  consume.site = site;
  consume.time = t;
  consume.op = tsv::ChannelEventStep{channel_id, ChannelKind::Singlet};
  scenario.insert_step(std::move(consume));

  return MoveResult{std::move(scenario), far};
}

}  // namespace tsq::protocols
