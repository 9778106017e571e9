#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tsq/measurement.hpp"
#include "tsq/random.hpp"
#include "tsq/state_vector.hpp"
#include "tsq/two_state_vector.hpp"

namespace tsq::tsv {

struct UnitaryStep {
  Eigen::MatrixXcd matrix;
  std::vector<QubitId> targets;
};

struct MeasureStep {
  std::vector<Eigen::MatrixXcd> projectors;
  std::vector<QubitId> targets;
};

// Brings (particle, ancilla) to the singlet: writes it directly when the
// pair is in a product factor; otherwise performs a Bell measurement and a
// local outcome-conditioned correction on the ancilla. Either way the pair
// ends in the singlet deterministically, which is what realizes the
// time-reversal map.
struct SingletizeStep {
  QubitId particle;
  QubitId ancilla;
};

// Marks consumption of a pre-shared entanglement channel; no quantum effect
// (the channel state lives in the preselection).
struct ChannelEventStep {
  std::string channel_id;
  ChannelKind kind = ChannelKind::Singlet;
};

struct Step {
  std::string id;
  SiteId site = 0;
  double time = 0.0;
  std::variant<UnitaryStep, MeasureStep, SingletizeStep, ChannelEventStep> op;
};

std::vector<QubitId> step_targets(const Step& step);

struct PostSelection {
  std::string id;
  Eigen::MatrixXcd projector;  // full-space or target-local per `targets`
  std::vector<QubitId> targets;
};

// A timed circuit: pre-selection, intermediate operations, post-selection
// projectors at final time. Post-selected runs are the operational
// realization of backward-evolving states.
struct Scenario {
  int num_qubits = 0;
  StateVector preselection;
  std::vector<Step> timeline;
  std::vector<PostSelection> postselections;

  void validate() const;
  // Inserts keeping times nondecreasing; equal times go after existing ones.
  void insert_step(Step step);
};

struct RunRecord {
  std::map<std::string, int> outcomes;  // step id → outcome index
  std::vector<std::string> channel_events;
  int attempts = 1;
  StateVector final_state;  // conditional state after post-selection
};

// Repeated full-timeline simulation; a run is accepted iff every
// post-selection projector fires. Returns std::nullopt after max_attempts
// rejections (an expected outcome for low acceptance probability, not a
// failure).
std::optional<RunRecord> sample_postselected(const Scenario& scenario, RandomSource& rng,
                                             int max_attempts);

struct Branch {
  std::map<std::string, int> outcomes;
  std::vector<std::string> channel_events;
  double probability = 0.0;  // joint probability including post-selection
  StateVector state;         // conditional normalized final state
};

struct BranchEnumeration {
  std::vector<Branch> accepted;
  double acceptance_probability = 0.0;
};

// Exact sum over all measurement records; the analytic counterpart of
// sample_postselected (branches below prune_below are dropped).
BranchEnumeration enumerate_branches(const Scenario& scenario, double prune_below = 1e-14);

// Empirical outcome distribution of one measurement step over exactly
// num_accepted accepted runs. Propagates exhaustion as std::nullopt.
std::optional<std::map<int, double>> conditional_distribution(const Scenario& scenario,
                                                              const std::string& step_id,
                                                              RandomSource& rng,
                                                              int num_accepted,
                                                              int max_attempts);

// Plain pre/post-selection scenario for a two-state vector: preselect the
// ket, post-select the bra, empty timeline.
Scenario scenario_for_tsv(const TwoStateVector& tsv);

}  // namespace tsq::tsv
