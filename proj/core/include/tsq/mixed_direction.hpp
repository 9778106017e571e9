#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsq/channels.hpp"
#include "tsq/demolition.hpp"
#include "tsq/ledger.hpp"
#include "tsq/observable.hpp"
#include "tsq/random.hpp"
#include "tsq/scenario.hpp"

namespace tsq::protocols {

// Where an observable's system sits inside a scenario: observable qubit j
// lives at scenario qubit system_map[j]. Backward-tagged qubits name the
// particle whose post-selection carries the backward component; the runner
// replaces them by reversal ancillas before measuring.
struct ScenarioEmbedding {
  std::vector<QubitId> system_map;
  double description_time = 0.0;
  // End of the no-disturbance window for the inserted reversals (the first
  // future step that belongs to the post-selection machinery).
  double protected_until = std::numeric_limits<double>::infinity();
};

struct MixedRunOptions {
  int max_rounds = 8;
  int max_attempts = 1 << 20;
  std::string tag = "mixed-demolition";
};

struct MixedRunResult {
  int eigen_index = -1;
  std::vector<RoundRecord> rounds;
  ledger::Transcript transcript;
  int attempts = 1;
  tsv::RunRecord scenario_record;
};

// Demolition measurement of a variable with some Backward site tags:
// deterministic time reversal at every backward qubit maps the problem to
// the all-Forward image, which the round protocol measures at the
// description time; the returned index refers to the original
// mixed-direction eigenstate list. std::nullopt after max_attempts
// post-selection rejections (rounds-exhausted runs are rejected and
// retried too).
std::optional<MixedRunResult> measure_mixed_direction(const NonlocalObservable& observable,
                                                      const tsv::Scenario& scenario,
                                                      const ScenarioEmbedding& embedding,
                                                      const MixedRunOptions& options,
                                                      ChannelPool& pool, RandomSource& rng);

struct NaivePrepResult {
  std::map<int, double> distribution;  // reported index → frequency over accepted runs
  double acceptance_rate = 0.0;
  int accepted = 0;
};

// The preparation-instead-of-measurement strategy: at the description time
// the system is replaced by a fresh copy of eigenstate `fixed_index` (or a
// uniformly random one when unset), and the run's reported value is the
// prepared index. Post-selected statistics generally disagree with the ABL
// oracle; that disagreement is the point.
std::optional<NaivePrepResult> naive_prepare_strategy(const NonlocalObservable& observable,
                                                      std::optional<int> fixed_index,
                                                      const tsv::Scenario& scenario,
                                                      const ScenarioEmbedding& embedding,
                                                      RandomSource& rng, int num_accepted,
                                                      int max_attempts);

// Ledger view of one accepted scenario run: unitaries become LocalOp,
// measurements LocalMeasurement + RecordWritten, channel events
// ChannelConsumed.
ledger::Transcript transcript_from_run(const tsv::Scenario& scenario,
                                       const tsv::RunRecord& record, double measurement_time,
                                       const std::string& tag);

}  // namespace tsq::protocols
