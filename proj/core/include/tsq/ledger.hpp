#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "tsq/numeric.hpp"

namespace tsq::ledger {

enum class EventKind {
  LocalOp,
  LocalMeasurement,
  RecordWritten,
  ClassicalSend,
  ClassicalReceive,
  ChannelConsumed,
};

const char* to_string(EventKind kind);

struct Event {
  SiteId site = 0;
  double time = 0.0;
  EventKind kind = EventKind::LocalOp;
  std::string payload;                   // outcome repr or free-form note
  std::string message_id;                // ClassicalSend / ClassicalReceive
  std::vector<std::string> depends_on;   // message ids feeding a local op
  std::string channel_id;                // ChannelConsumed
  std::string protocol_tag;
  bool needed_for_reconstruction = false;  // RecordWritten
};

// Append-only record of local events, classical messages, and channel
// consumption for one protocol run. Finalization sorts events by time with
// a stable site tie-break and freezes the transcript.
class Transcript {
 public:
  Transcript() = default;

  void declare_tag(const std::string& tag);
  void append(Event event);
  void finalize(double measurement_time);

  bool finalized() const { return finalized_; }
  double measurement_time() const;
  const std::vector<Event>& events() const { return events_; }
  const std::set<std::string>& declared_tags() const { return tags_; }

  // FNV-1a over the canonical line export; equal digests mean equal
  // event content and order.
  std::uint64_t digest() const;
  // One event per line, JSON objects; the external audit format.
  std::string to_jsonl() const;
  void write_jsonl(std::ostream& os) const;

 private:
  std::vector<Event> events_;
  std::set<std::string> tags_;
  bool finalized_ = false;
  double measurement_time_ = 0.0;
};

struct Verdict {
  bool pass = true;
  std::vector<std::string> violations;
};

// Instantaneity contract: (a) every reconstruction-critical record exists at
// its own site at measurement_time; (b) no classical message received at or
// before measurement_time influences a local operation at measurement_time
// (influence tracked through explicit message-id dependencies).
Verdict check_instantaneity(const Transcript& transcript);

// Exact count of ChannelConsumed events attributed to the tag. Unknown
// (undeclared) tags are a domain error.
int count_channels(const Transcript& transcript, const std::string& protocol_tag);

// Count of ClassicalSend events at or before the cutoff (one event per bit).
int classical_bits_sent_by(const Transcript& transcript, double t_cutoff);

}  // namespace tsq::ledger
