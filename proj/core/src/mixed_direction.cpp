#include "tsq/mixed_direction.hpp"

#include <algorithm>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"
#include "tsq/time_reversal.hpp"

namespace tsq::protocols {
namespace {

// Samples one scenario step on a register whose logical ids are the
// scenario's qubit ids; mirrors the tsv engine through the logical map so
// the embedded protocol can grow and shrink the same register.
void sample_step(Register& reg, const tsv::Step& step, RandomSource& rng,
                 tsv::RunRecord& record) {
  if (const auto* u = std::get_if<tsv::UnitaryStep>(&step.op)) {
    reg.apply_msb_first(u->matrix, std::vector<int>(u->targets.begin(), u->targets.end()));
    return;
  }
  if (const auto* m = std::get_if<tsv::MeasureStep>(&step.op)) {
    ProjectiveResult r = measure_projective(
        reg.state(), m->projectors,
        reg.physicals(std::vector<int>(m->targets.begin(), m->targets.end())), rng);
    record.outcomes[step.id] = r.outcome;
    reg.set_state(std::move(r.state));
    return;
  }
  if (const auto* s = std::get_if<tsv::SingletizeStep>(&step.op)) {
    const std::vector<int> pair{s->particle, s->ancilla};
    const auto phys = reg.physicals(pair);
    if (is_product(reg.state(), phys)) {
      reg.set_state(replace_factor(reg.state(), phys, singlet_state()));
    } else {
      const BellOutcome o = reg.bell_measure_pair(s->particle, s->ancilla, rng);
      record.outcomes[step.id] = static_cast<int>(o);
      const PauliOp fix = correction_for(o, ChannelKind::Singlet);
      if (!fix.is_identity()) {
        reg.apply_msb_first(pauli_op_matrix(fix), {s->ancilla});
      }
    }
    return;
  }
  if (const auto* c = std::get_if<tsv::ChannelEventStep>(&step.op)) {
    record.channel_events.push_back(c->channel_id);
  }
}

// Samples the post-selections; false = rejected run. Embedded runs need
// targeted projectors because the register holds more than the scenario.
bool sample_postselections(Register& reg, const std::vector<tsv::PostSelection>& postselections,
                           RandomSource& rng) {
  for (const tsv::PostSelection& ps : postselections) {
    if (ps.targets.empty()) {
      throw ProtocolError("embedded runs need targeted post-selections");
    }
    auto [w, collapsed] = project_collapse(
        reg.state(), ps.projector,
        reg.physicals(std::vector<int>(ps.targets.begin(), ps.targets.end())));
    if (rng.uniform() < w) {
      reg.set_state(std::move(collapsed));
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

ledger::Transcript transcript_from_run(const tsv::Scenario& scenario,
                                       const tsv::RunRecord& record, double measurement_time,
                                       const std::string& tag) {
  ledger::Transcript tr;
  tr.declare_tag(tag);
  for (const tsv::Step& step : scenario.timeline) {
    ledger::Event e;
    e.site = step.site;
    e.time = step.time;
    e.protocol_tag = tag;
    if (std::holds_alternative<tsv::UnitaryStep>(step.op)) {
      e.kind = ledger::EventKind::LocalOp;
      e.payload = step.id;
      tr.append(std::move(e));
      continue;
    }
    if (const auto* c = std::get_if<tsv::ChannelEventStep>(&step.op)) {
      e.kind = ledger::EventKind::ChannelConsumed;
      e.channel_id = c->channel_id;
      tr.append(std::move(e));
      continue;
    }
    e.kind = ledger::EventKind::LocalMeasurement;
    e.payload = step.id;
    const auto it = record.outcomes.find(step.id);
    if (it != record.outcomes.end()) {
      e.payload += " = " + std::to_string(it->second);
    }
    tr.append(e);
    ledger::Event rec = e;
    rec.kind = ledger::EventKind::RecordWritten;
    tr.append(std::move(rec));
  }
  tr.finalize(measurement_time);
  return tr;
}

std::optional<MixedRunResult> measure_mixed_direction(const NonlocalObservable& observable,
                                                      const tsv::Scenario& scenario,
                                                      const ScenarioEmbedding& embedding,
                                                      const MixedRunOptions& options,
                                                      ChannelPool& pool, RandomSource& rng) {
  observable.validate();
  if (embedding.system_map.size() != static_cast<std::size_t>(observable.num_qubits())) {
    throw DomainError("system map does not match observable size");
  }
  const std::vector<QubitId> backward = observable.backward_qubits();

  // Extend the scenario with one reversal ancilla per backward qubit and
  // insert the singlet preparations just before the description time.
  tsv::Scenario extended = scenario;
  std::vector<QubitId> carriers_scenario(embedding.system_map);
  for (std::size_t i = 0; i < backward.size(); ++i) {
    extended.preselection = tensor(StateVector::basis_state(1, 0), extended.preselection);
  }
  extended.num_qubits += static_cast<int>(backward.size());
  int next_ancilla = scenario.num_qubits;
  for (QubitId obs_qubit : backward) {
    const QubitId particle = embedding.system_map[static_cast<std::size_t>(obs_qubit)];
    extended = time_reverse_backward(std::move(extended), particle, next_ancilla,
                                     embedding.description_time - 0.25,
                                     embedding.protected_until);
    carriers_scenario[static_cast<std::size_t>(obs_qubit)] = next_ancilla;
    ++next_ancilla;
  }
  extended.validate();

  const NonlocalObservable image = forward_image_observable(observable);
  const BipartiteLayout layout = bipartite_layout(image);

  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Register reg(extended.preselection);
    tsv::RunRecord record;
    record.attempts = attempt;
    MixedRunResult result;
    result.attempts = attempt;

    bool demolition_done = false;
    bool run_ok = true;
    std::optional<DemolitionOutcome> outcome;

    auto run_embedded = [&] {
      DemolitionOptions dopt;
      dopt.max_rounds = options.max_rounds;
      dopt.tag = options.tag;
      dopt.measurement_time = embedding.description_time;
      std::vector<int> carriers(carriers_scenario.begin(), carriers_scenario.end());
      outcome = run_demolition_on(reg, image, std::move(carriers), layout, dopt, pool, rng,
                                  result.transcript);
      demolition_done = true;
    };

    for (const tsv::Step& step : extended.timeline) {
      if (!demolition_done && step.time >= embedding.description_time) {
        run_embedded();
        if (!outcome->eigen_index.has_value()) {
          run_ok = false;  // rounds exhausted: discard the run and retry
          break;
        }
      }
      sample_step(reg, step, rng, record);
    }
    if (run_ok && !demolition_done) {
      run_embedded();
      run_ok = outcome->eigen_index.has_value();
    }
    if (run_ok) {
      run_ok = sample_postselections(reg, extended.postselections, rng);
    }
    if (run_ok) {
      result.eigen_index = *outcome->eigen_index;
      result.rounds = std::move(outcome->rounds);
      record.final_state = reg.state();
      result.scenario_record = std::move(record);
      result.transcript.finalize(embedding.description_time);
      return result;
    }
  }
  return std::nullopt;
}

std::optional<NaivePrepResult> naive_prepare_strategy(const NonlocalObservable& observable,
                                                      std::optional<int> fixed_index,
                                                      const tsv::Scenario& scenario,
                                                      const ScenarioEmbedding& embedding,
                                                      RandomSource& rng, int num_accepted,
                                                      int max_attempts) {
  observable.validate();
  const int n = observable.num_qubits();
  if (fixed_index.has_value() &&
      (*fixed_index < 0 || *fixed_index >= static_cast<int>(observable.eigenstates.size()))) {
    throw DomainError("prepared eigenstate index out of range");
  }

  NaivePrepResult result;
  int attempts_total = 0;
  int attempts_left = max_attempts;
  while (result.accepted < num_accepted) {
    if (attempts_left-- <= 0) {
      return std::nullopt;
    }
    ++attempts_total;
    const int prep =
        fixed_index.has_value()
            ? *fixed_index
            : static_cast<int>(rng.bits() % observable.eigenstates.size());

    Register reg(scenario.preselection);
    tsv::RunRecord record;
    bool injected = false;
    auto inject = [&] {
      // Swap a fresh copy of the prepared eigenstate into the system slots;
      // the displaced system qubits dangle untouched.
      const int fresh = reg.append(observable.eigenstates[static_cast<std::size_t>(prep)]);
      for (int j = 0; j < n; ++j) {
        reg.apply_msb_first(gates::swap_gate(),
                            {embedding.system_map[static_cast<std::size_t>(j)], fresh + j});
      }
      injected = true;
    };
    for (const tsv::Step& step : scenario.timeline) {
      if (!injected && step.time >= embedding.description_time) {
        inject();
      }
      sample_step(reg, step, rng, record);
    }
    if (!injected) {
      inject();
    }
    if (sample_postselections(reg, scenario.postselections, rng)) {
      result.distribution[prep] += 1.0;
      ++result.accepted;
    }
  }
  for (auto& [k, v] : result.distribution) {
    v /= static_cast<double>(result.accepted);
  }
  result.acceptance_rate =
      static_cast<double>(result.accepted) / static_cast<double>(attempts_total);
  return result;
}

}  // namespace tsq::protocols
