#include "tsq/demolition.hpp"

#include <set>
#include <sstream>

#include "tsq/errors.hpp"
#include "tsq/teleport.hpp"

namespace tsq::protocols {
namespace {

// n-qubit matrix of a per-qubit byproduct, matrix bit j = qubit j.
Eigen::MatrixXcd byproduct_matrix(const std::vector<BellOutcome>& outcomes) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it) {
    const Eigen::Matrix2cd op = pauli_op_matrix(correction_for(*it, ChannelKind::PhiPlus));
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    next.block(0, 0, m.rows(), m.cols()) = op(0, 0) * m;
    next.block(0, m.cols(), m.rows(), m.cols()) = op(0, 1) * m;
    next.block(m.rows(), 0, m.rows(), m.cols()) = op(1, 0) * m;
    next.block(m.rows(), m.cols(), m.rows(), m.cols()) = op(1, 1) * m;
    m = std::move(next);
  }
  return m;
}

bool all_identity(const std::vector<BellOutcome>& outcomes) {
  for (BellOutcome o : outcomes) {
    if (o != BellOutcome::PhiPlus) {
      return false;
    }
  }
  return true;
}

int outcome_group_value(const std::vector<BellOutcome>& outcomes) {
  int v = 0;
  for (std::size_t j = 0; j < outcomes.size(); ++j) {
    v += static_cast<int>(outcomes[j]) << (2 * j);
  }
  return v;
}

struct EventSink {
  ledger::Transcript& transcript;
  const DemolitionOptions& options;

  void op(SiteId site, const std::string& what,
          const std::vector<std::string>& deps = {}) {
    ledger::Event e;
    e.site = site;
    e.time = options.measurement_time;
    e.kind = ledger::EventKind::LocalOp;
    e.payload = what;
    e.depends_on = deps;
    e.protocol_tag = options.tag;
    transcript.append(std::move(e));
  }
  void measurement(SiteId site, const std::string& what) {
    ledger::Event e;
    e.site = site;
    e.time = options.measurement_time;
    e.kind = ledger::EventKind::LocalMeasurement;
    e.payload = what;
    e.protocol_tag = options.tag;
    transcript.append(std::move(e));
  }
  void record(SiteId site, const std::string& what) {
    ledger::Event e;
    e.site = site;
    e.time = options.measurement_time;
    e.kind = ledger::EventKind::RecordWritten;
    e.payload = what;
    e.needed_for_reconstruction = true;
    e.protocol_tag = options.tag;
    transcript.append(std::move(e));
  }
  void channel(SiteId site, const std::string& channel_id) {
    ledger::Event e;
    e.site = site;
    e.time = options.measurement_time;
    e.kind = ledger::EventKind::ChannelConsumed;
    e.channel_id = channel_id;
    e.protocol_tag = options.tag;
    transcript.append(std::move(e));
  }
  // Reconciliation: one send per classical bit, strictly after t.
  void send_bits(SiteId site, const std::string& msg_base, int bits) {
    for (int b = 0; b < bits; ++b) {
      ledger::Event s;
      s.site = site;
      s.time = options.measurement_time + 1.0;
      s.kind = ledger::EventKind::ClassicalSend;
      s.message_id = msg_base + ":bit" + std::to_string(b);
      s.protocol_tag = options.tag;
      transcript.append(std::move(s));
      ledger::Event r;
      r.site = site == 0 ? 1 : 0;
      r.time = options.measurement_time + 2.0;
      r.kind = ledger::EventKind::ClassicalReceive;
      r.message_id = msg_base + ":bit" + std::to_string(b);
      r.protocol_tag = options.tag;
      transcript.append(std::move(r));
    }
  }
};

std::string outcomes_string(const std::vector<BellOutcome>& outcomes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    os << (i ? "," : "") << to_string(outcomes[i]);
  }
  return os.str();
}

// Teleports the carrier qubits over freshly materialized channels from the
// group; rebinds carriers to the far halves and drops the measured pairs.
std::vector<BellOutcome> teleport_leg(Register& reg, std::vector<int>& carriers,
                                      const std::vector<int>& which,
                                      std::vector<ChannelPair*>& group, SiteId sender,
                                      RandomSource& rng, EventSink& sink,
                                      std::vector<std::string>& used_ids) {
  std::vector<BellOutcome> outcomes;
  outcomes.reserve(which.size());
  for (std::size_t i = 0; i < which.size(); ++i) {
    ChannelPair& ch = *group[i];
    if (ch.consumed) {
      throw ResourceError("channel '" + ch.id + "' already consumed");
    }
    const int near = reg.append(channel_pair_state(ch.kind));
    const int far = near + 1;
    ch.consumed = true;
    used_ids.push_back(ch.id);
    const int carrier = carriers[static_cast<std::size_t>(which[i])];
    const BellOutcome o = reg.bell_measure_pair(carrier, near, rng);
    outcomes.push_back(o);
    sink.measurement(sender, "bell q" + std::to_string(which[i]) + " = " + to_string(o));
    sink.channel(sender, ch.id);
    reg.drop({carrier, near});
    carriers[static_cast<std::size_t>(which[i])] = far;
  }
  return outcomes;
}

}  // namespace

BipartiteLayout bipartite_layout(const NonlocalObservable& observable) {
  observable.validate();
  std::set<SiteId> sites;
  for (const auto& [q, s] : observable.site_partition) {
    sites.insert(s);
  }
  if (sites.size() != 2) {
    throw CapacityError("demolition protocol needs a bipartite layout");
  }
  BipartiteLayout layout;
  auto it = sites.begin();
  layout.alice_site = *it++;
  layout.bob_site = *it;
  for (const auto& [q, s] : observable.site_partition) {
    (s == layout.alice_site ? layout.alice_qubits : layout.bob_qubits).push_back(q);
  }
  if (layout.alice_qubits.size() > 2 || layout.bob_qubits.size() > 2) {
    throw CapacityError("demolition protocol supports at most 2 qubits per site");
  }
  return layout;
}

DemolitionOutcome run_demolition_on(Register& reg, const NonlocalObservable& observable,
                                    std::vector<int> carriers, const BipartiteLayout& layout,
                                    const DemolitionOptions& options, ChannelPool& pool,
                                    RandomSource& rng, ledger::Transcript& transcript) {
  if (!observable.all_forward()) {
    throw ProtocolError("demolition_measure needs an all-Forward observable");
  }
  const int n = observable.num_qubits();
  if (static_cast<int>(carriers.size()) != n) {
    throw DomainError("carrier list does not match observable size");
  }
  const Eigen::MatrixXcd u = eigenbasis_unitary(observable);

  EventSink sink{transcript, options};
  transcript.declare_tag(options.tag);

  DemolitionOutcome result;
  Eigen::MatrixXcd history = Eigen::MatrixXcd::Identity(1LL << n, 1LL << n);
  std::vector<int> all_qubits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    all_qubits[static_cast<std::size_t>(j)] = j;
  }

  std::vector<BellOutcome> prev_bob;
  for (int round = 1; round <= options.max_rounds; ++round) {
    RoundRecord record;
    record.round_index = round;

    // (a) Bob → Alice. Round 1 moves his qubits on a fresh group; later
    // rounds return everything on the group indexed by his last outcomes
    // ("in one of the numerous quantum channels").
    std::vector<int> moving;
    std::vector<ChannelPair*> group;
    if (round == 1) {
      moving = layout.bob_qubits;
      group = pool.provision_group(static_cast<int>(moving.size()), ChannelKind::PhiPlus,
                                   layout.alice_site, layout.bob_site, "r1:fwd");
    } else {
      moving = all_qubits;
      const int groups = 1 << (2 * static_cast<int>(prev_bob.size()));
      const int live = outcome_group_value(prev_bob);
      std::vector<ChannelPair*> live_group;
      for (int g = 0; g < groups; ++g) {
        auto provisioned = pool.provision_group(
            n, ChannelKind::PhiPlus, layout.alice_site, layout.bob_site,
            "r" + std::to_string(round) + ":g" + std::to_string(g));
        if (g == live) {
          live_group = std::move(provisioned);
        }
      }
      group = std::move(live_group);
    }
    record.bob_bell_outcomes = teleport_leg(reg, carriers, moving, group, layout.bob_site, rng,
                                            sink, record.channel_ids_used);
    sink.record(layout.bob_site,
                "bob r" + std::to_string(round) + " outcomes: " +
                    outcomes_string(record.bob_bell_outcomes));

    if (options.broken_signaling && round == 1) {
      // Leak the outcomes to Alice ahead of her transform.
      ledger::Event s;
      s.site = layout.bob_site;
      s.time = options.measurement_time - 0.5;
      s.kind = ledger::EventKind::ClassicalSend;
      s.message_id = "leak:bob-r1";
      s.protocol_tag = options.tag;
      transcript.append(std::move(s));
      ledger::Event r;
      r.site = layout.alice_site;
      r.time = options.measurement_time - 0.25;
      r.kind = ledger::EventKind::ClassicalReceive;
      r.message_id = "leak:bob-r1";
      r.protocol_tag = options.tag;
      transcript.append(std::move(r));
    }

    // (b) Alice assumes identity byproducts and transforms to product form,
    // undoing the known history inside the transformed frame.
    const Eigen::MatrixXcd transform = u * history.adjoint();
    reg.apply_bit_ordered(transform, carriers);
    sink.op(layout.alice_site, "alice transform r" + std::to_string(round),
            options.broken_signaling && round == 1 ? std::vector<std::string>{"leak:bob-r1"}
                                                   : std::vector<std::string>{});

    // (c) Alice → Bob, every qubit on its own fresh channel.
    auto back_group = pool.provision_group(n, ChannelKind::PhiPlus, layout.alice_site,
                                           layout.bob_site,
                                           "r" + std::to_string(round) + ":back");
    record.alice_bell_outcomes = teleport_leg(reg, carriers, all_qubits, back_group,
                                              layout.alice_site, rng, sink,
                                              record.channel_ids_used);
    sink.record(layout.alice_site,
                "alice r" + std::to_string(round) + " outcomes: " +
                    outcomes_string(record.alice_bell_outcomes));

    // (d) Bob knows his own outcomes; all-identity means the product-form
    // state reached him intact up to Alice's byproduct.
    if (all_identity(record.bob_bell_outcomes)) {
      std::vector<int> bits(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        bits[static_cast<std::size_t>(j)] = reg.measure_z(carriers[static_cast<std::size_t>(j)], rng);
        sink.measurement(layout.bob_site, "z q" + std::to_string(j));
      }
      reg.drop(carriers);
      record.z_results = bits;
      record.success = true;
      sink.record(layout.bob_site, "z results");
      result.rounds.push_back(std::move(record));

      // Classical reconciliation happens strictly after measurement time.
      sink.send_bits(layout.bob_site, "recon:z", n);
      for (const RoundRecord& r : result.rounds) {
        sink.send_bits(layout.bob_site, "recon:bob-r" + std::to_string(r.round_index),
                       2 * static_cast<int>(r.bob_bell_outcomes.size()));
        sink.send_bits(layout.alice_site, "recon:alice-r" + std::to_string(r.round_index),
                       2 * static_cast<int>(r.alice_bell_outcomes.size()));
      }
      result.eigen_index = reconstruct_outcome(result.rounds, observable);
      return result;
    }

    // Failed check: fold this round into the known history.
    const Eigen::MatrixXcd bob_pauli = byproduct_matrix(
        round == 1
            ? [&] {
                std::vector<BellOutcome> padded(static_cast<std::size_t>(n),
                                                BellOutcome::PhiPlus);
                for (std::size_t i = 0; i < moving.size(); ++i) {
                  padded[static_cast<std::size_t>(moving[i])] = record.bob_bell_outcomes[i];
                }
                return padded;
              }()
            : record.bob_bell_outcomes);
    const Eigen::MatrixXcd alice_pauli = byproduct_matrix(record.alice_bell_outcomes);
    history = alice_pauli * u * history.adjoint() * bob_pauli * history;
    prev_bob = record.bob_bell_outcomes;
    result.rounds.push_back(std::move(record));
  }
  return result;  // rounds exhausted
}

DemolitionResult demolition_measure(const NonlocalObservable& observable,
                                    const StateVector& input, const DemolitionOptions& options,
                                    ChannelPool& pool, RandomSource& rng) {
  const BipartiteLayout layout = bipartite_layout(observable);
  if (input.num_qubits() != observable.num_qubits()) {
    throw DomainError("input state does not match the observable's system");
  }
  Register reg(input);
  std::vector<int> carriers(static_cast<std::size_t>(observable.num_qubits()));
  for (int j = 0; j < observable.num_qubits(); ++j) {
    carriers[static_cast<std::size_t>(j)] = j;
  }
  DemolitionResult result;
  DemolitionOutcome outcome = run_demolition_on(reg, observable, std::move(carriers), layout,
                                                options, pool, rng, result.transcript);
  result.eigen_index = outcome.eigen_index;
  result.rounds = std::move(outcome.rounds);
  result.transcript.finalize(options.measurement_time);
  return result;
}

int reconstruct_outcome(const std::vector<RoundRecord>& records,
                        const NonlocalObservable& observable) {
  const RoundRecord* success = nullptr;
  for (const RoundRecord& r : records) {
    if (r.success) {
      success = &r;
    }
  }
  if (success == nullptr || !success->z_results.has_value()) {
    throw DomainError("no successful round with z results to reconstruct from");
  }
  const int n = observable.num_qubits();
  if (static_cast<int>(success->z_results->size()) != n ||
      static_cast<int>(success->alice_bell_outcomes.size()) != n) {
    throw DomainError("success round records do not match the observable size");
  }
  std::uint64_t label = 0;
  for (int j = 0; j < n; ++j) {
    if ((*success->z_results)[static_cast<std::size_t>(j)] != 0) {
      label |= 1ULL << j;
    }
  }
  // Pending byproduct: Alice's final teleport. X components flip z bits; Z
  // components only touch phases.
  std::vector<PauliOp> ops(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ops[static_cast<std::size_t>(j)] =
        correction_for(success->alice_bell_outcomes[static_cast<std::size_t>(j)],
                       ChannelKind::PhiPlus);
  }
  label ^= PauliByproduct(std::move(ops)).x_mask();
  return static_cast<int>(label);
}

}  // namespace tsq::protocols
