#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsq/channels.hpp"
#include "tsq/ledger.hpp"
#include "tsq/observable.hpp"
#include "tsq/random.hpp"
#include "tsq/register.hpp"

namespace tsq::protocols {

struct RoundRecord {
  int round_index = 0;
  std::vector<BellOutcome> bob_bell_outcomes;
  std::vector<BellOutcome> alice_bell_outcomes;
  std::vector<std::string> channel_ids_used;
  bool success = false;
  std::optional<std::vector<int>> z_results;
};

struct BipartiteLayout {
  SiteId alice_site = 0;
  SiteId bob_site = 1;
  std::vector<int> alice_qubits;  // system qubit indices
  std::vector<int> bob_qubits;
};

// Derives the bipartite layout from the observable's site partition;
// demolition runs on exactly two sites with at most two qubits each.
BipartiteLayout bipartite_layout(const NonlocalObservable& observable);

struct DemolitionOptions {
  int max_rounds = 8;
  std::string tag = "demolition";
  double measurement_time = 1.0;
  // Negative control: leak Bob's round-1 outcomes to Alice before her
  // transform, as message-dependency events. The physics is untouched; the
  // instantaneity checker must flag the transcript.
  bool broken_signaling = false;
};

struct DemolitionOutcome {
  std::optional<int> eigen_index;  // nullopt = rounds exhausted
  std::vector<RoundRecord> rounds;
};

// Round loop on an existing register. `carriers` are the logical ids holding
// system qubit j of the observable; they are consumed (measured out) on
// success. Events are appended to the transcript, which stays open.
DemolitionOutcome run_demolition_on(Register& reg, const NonlocalObservable& observable,
                                    std::vector<int> carriers, const BipartiteLayout& layout,
                                    const DemolitionOptions& options, ChannelPool& pool,
                                    RandomSource& rng, ledger::Transcript& transcript);

struct DemolitionResult {
  std::optional<int> eigen_index;
  std::vector<RoundRecord> rounds;
  ledger::Transcript transcript;
};

// Demolition measurement of an all-Forward nonlocal variable on a fresh
// register holding `input`. Every round adds finite success probability;
// RoundsExhausted (nullopt index) is a valid statistical outcome.
DemolitionResult demolition_measure(const NonlocalObservable& observable,
                                    const StateVector& input, const DemolitionOptions& options,
                                    ChannelPool& pool, RandomSource& rng);

// Classically undoes the spin-flip components of the pending byproducts on
// the success round's z results and maps the corrected product label to the
// eigenstate index.
int reconstruct_outcome(const std::vector<RoundRecord>& records,
                        const NonlocalObservable& observable);

}  // namespace tsq::protocols
