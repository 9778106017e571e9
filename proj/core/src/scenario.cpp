#include "tsq/scenario.hpp"

#include <algorithm>

#include "tsq/errors.hpp"
#include "tsq/gates.hpp"

namespace tsq::tsv {
namespace {

// Expansion of one step into weighted continuation branches. `recorded`
// marks steps whose branch index is a measurement record.
struct StepBranches {
  bool recorded = false;
  std::vector<std::pair<double, StateVector>> branches;
};

StepBranches expand_step(const Step& step, const StateVector& state) {
  StepBranches out;
  if (const auto* u = std::get_if<UnitaryStep>(&step.op)) {
    out.branches.emplace_back(1.0, apply_unitary(state, u->matrix, u->targets));
    return out;
  }
  if (const auto* m = std::get_if<MeasureStep>(&step.op)) {
    out.recorded = true;
    for (const auto& p : m->projectors) {
      out.branches.push_back(project_collapse(state, p, m->targets));
    }
    return out;
  }
  if (const auto* s = std::get_if<SingletizeStep>(&step.op)) {
    const std::vector<QubitId> pair{s->particle, s->ancilla};
    if (is_product(state, pair)) {
      out.branches.emplace_back(1.0, replace_factor(state, pair, singlet_state()));
      return out;
    }
    out.recorded = true;
    for (int o = 0; o < 4; ++o) {
      auto [w, collapsed] =
          project_collapse(state, gates::projector(bell_ket(static_cast<BellOutcome>(o))), pair);
      if (w > 0.0) {
        const PauliOp fix = correction_for(static_cast<BellOutcome>(o), ChannelKind::Singlet);
        if (!fix.is_identity()) {
          collapsed = apply_unitary(collapsed, pauli_op_matrix(fix), {s->ancilla});
        }
      }
      out.branches.emplace_back(w, std::move(collapsed));
    }
    return out;
  }
  // Channel event: bookkeeping only.
  out.branches.emplace_back(1.0, state);
  return out;
}

Eigen::MatrixXcd postselection_projector_local(const PostSelection& ps, int num_qubits) {
  if (ps.targets.empty()) {
    if (ps.projector.rows() != (1LL << num_qubits)) {
      throw DomainError("post-selection projector dimension mismatch");
    }
    return ps.projector;
  }
  return ps.projector;
}

}  // namespace

std::vector<QubitId> step_targets(const Step& step) {
  if (const auto* u = std::get_if<UnitaryStep>(&step.op)) {
    return u->targets;
  }
  if (const auto* m = std::get_if<MeasureStep>(&step.op)) {
    return m->targets;
  }
  if (const auto* s = std::get_if<SingletizeStep>(&step.op)) {
    return {s->particle, s->ancilla};
  }
  return {};
}

void Scenario::validate() const {
  if (preselection.num_qubits() != num_qubits) {
    throw ValidationError("preselection qubit count does not match scenario");
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (const Step& step : timeline) {
    if (step.time < prev) {
      throw ValidationError("timeline times must be nondecreasing");
    }
    prev = step.time;
    for (QubitId t : step_targets(step)) {
      if (t < 0 || t >= num_qubits) {
        throw ValidationError("step '" + step.id + "' targets unknown qubit");
      }
    }
  }
  for (const PostSelection& ps : postselections) {
    const Eigen::Index dim = ps.targets.empty() ? (1LL << num_qubits)
                                                : (1LL << ps.targets.size());
    if (ps.projector.rows() != dim || ps.projector.cols() != dim) {
      throw ValidationError("post-selection '" + ps.id + "' projector dimension mismatch");
    }
    if ((ps.projector - ps.projector.adjoint()).cwiseAbs().maxCoeff() > kExactTol ||
        (ps.projector * ps.projector - ps.projector).cwiseAbs().maxCoeff() > kExactTol) {
      throw ValidationError("post-selection '" + ps.id + "' is not a projector");
    }
    for (QubitId t : ps.targets) {
      if (t < 0 || t >= num_qubits) {
        throw ValidationError("post-selection '" + ps.id + "' targets unknown qubit");
      }
    }
  }
}

void Scenario::insert_step(Step step) {
  auto it = std::upper_bound(
      timeline.begin(), timeline.end(), step.time,
      [](double t, const Step& s) { return t < s.time; });
  timeline.insert(it, std::move(step));
}

std::optional<RunRecord> sample_postselected(const Scenario& scenario, RandomSource& rng,
                                             int max_attempts) {
  if (max_attempts < 1) {
    throw DomainError("max_attempts must be at least 1");
  }
  scenario.validate();
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    RunRecord record;
    record.attempts = attempt;
    StateVector state = scenario.preselection;
    for (const Step& step : scenario.timeline) {
      StepBranches sb = expand_step(step, state);
      if (sb.branches.size() == 1) {
        state = std::move(sb.branches.front().second);
      } else {
        std::vector<double> weights(sb.branches.size());
        for (std::size_t i = 0; i < sb.branches.size(); ++i) {
          weights[i] = sb.branches[i].first;
        }
        const int k = rng.sample_discrete(weights);
        state = std::move(sb.branches[static_cast<std::size_t>(k)].second);
        if (sb.recorded) {
          record.outcomes[step.id] = k;
        }
      }
      if (const auto* c = std::get_if<ChannelEventStep>(&step.op)) {
        record.channel_events.push_back(c->channel_id);
      }
    }
    bool accepted = true;
    for (const PostSelection& ps : scenario.postselections) {
      const std::vector<QubitId> targets =
          ps.targets.empty() ? [&] {
            std::vector<QubitId> all(static_cast<std::size_t>(scenario.num_qubits));
            for (int q = 0; q < scenario.num_qubits; ++q) {
              all[static_cast<std::size_t>(q)] = q;
            }
            return all;
          }()
                             : ps.targets;
      auto [w, collapsed] = project_collapse(state, ps.projector, targets);
      if (rng.uniform() < w) {
        state = std::move(collapsed);
      } else {
        accepted = false;
        break;
      }
    }
    if (accepted) {
      record.final_state = std::move(state);
      return record;
    }
  }
  return std::nullopt;
}

BranchEnumeration enumerate_branches(const Scenario& scenario, double prune_below) {
  scenario.validate();
  struct Node {
    std::size_t next_step;
    double probability;
    StateVector state;
    std::map<std::string, int> outcomes;
    std::vector<std::string> channel_events;
  };
  std::vector<Node> work;
  work.push_back(Node{0, 1.0, scenario.preselection, {}, {}});
  BranchEnumeration result;

  while (!work.empty()) {
    Node node = std::move(work.back());
    work.pop_back();
    if (node.next_step < scenario.timeline.size()) {
      const Step& step = scenario.timeline[node.next_step];
      StepBranches sb = expand_step(step, node.state);
      for (std::size_t k = 0; k < sb.branches.size(); ++k) {
        const double p = node.probability * sb.branches[k].first;
        if (p < prune_below) {
          continue;
        }
        Node child;
        child.next_step = node.next_step + 1;
        child.probability = p;
        child.state = std::move(sb.branches[k].second);
        child.outcomes = node.outcomes;
        child.channel_events = node.channel_events;
        if (sb.recorded) {
          child.outcomes[step.id] = static_cast<int>(k);
        }
        if (const auto* c = std::get_if<ChannelEventStep>(&step.op)) {
          child.channel_events.push_back(c->channel_id);
        }
        work.push_back(std::move(child));
      }
      continue;
    }
    // Post-selections.
    double p = node.probability;
    StateVector state = std::move(node.state);
    bool alive = true;
    for (const PostSelection& ps : scenario.postselections) {
      std::vector<QubitId> targets = ps.targets;
      if (targets.empty()) {
        targets.resize(static_cast<std::size_t>(scenario.num_qubits));
        for (int q = 0; q < scenario.num_qubits; ++q) {
          targets[static_cast<std::size_t>(q)] = q;
        }
      }
      auto [w, collapsed] = project_collapse(state, ps.projector, targets);
      p *= w;
      if (p < prune_below) {
        alive = false;
        break;
      }
      state = std::move(collapsed);
    }
    if (alive) {
      result.acceptance_probability += p;
      result.accepted.push_back(Branch{std::move(node.outcomes), std::move(node.channel_events),
                                       p, std::move(state)});
    }
  }
  std::sort(result.accepted.begin(), result.accepted.end(),
            [](const Branch& a, const Branch& b) { return a.probability > b.probability; });
  return result;
}

std::optional<std::map<int, double>> conditional_distribution(const Scenario& scenario,
                                                              const std::string& step_id,
                                                              RandomSource& rng,
                                                              int num_accepted,
                                                              int max_attempts) {
  bool found = false;
  for (const Step& step : scenario.timeline) {
    if (step.id == step_id) {
      if (!std::holds_alternative<MeasureStep>(step.op) &&
          !std::holds_alternative<SingletizeStep>(step.op)) {
        throw DomainError("step '" + step_id + "' is not a measurement");
      }
      found = true;
    }
  }
  if (!found) {
    throw DomainError("no step with id '" + step_id + "'");
  }
  std::map<int, double> counts;
  for (int run = 0; run < num_accepted; ++run) {
    auto record = sample_postselected(scenario, rng, max_attempts);
    if (!record) {
      return std::nullopt;
    }
    const auto it = record->outcomes.find(step_id);
    const int outcome = it == record->outcomes.end() ? -1 : it->second;
    counts[outcome] += 1.0;
  }
  for (auto& [outcome, value] : counts) {
    value /= static_cast<double>(num_accepted);
  }
  return counts;
}

Scenario scenario_for_tsv(const TwoStateVector& tsv) {
  validate(tsv);
  Scenario s;
  s.num_qubits = tsv.ket.num_qubits();
  s.preselection = tsv.ket;
  s.postselections.push_back(
      PostSelection{"post", gates::projector(tsv.bra.as_eigen()), {}});
  return s;
}

}  // namespace tsq::tsv
