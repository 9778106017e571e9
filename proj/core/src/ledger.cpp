#include "tsq/ledger.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tsq/errors.hpp"

namespace tsq::ledger {
namespace {

using nlohmann::json;

json event_to_json(const Event& e) {
  json j;
  j["site"] = e.site;
  j["time"] = e.time;
  j["kind"] = to_string(e.kind);
  if (!e.payload.empty()) {
    j["payload"] = e.payload;
  }
  if (!e.message_id.empty()) {
    j["message_id"] = e.message_id;
  }
  if (!e.depends_on.empty()) {
    j["depends_on"] = e.depends_on;
  }
  if (!e.channel_id.empty()) {
    j["channel_id"] = e.channel_id;
  }
  if (!e.protocol_tag.empty()) {
    j["protocol_tag"] = e.protocol_tag;
  }
  if (e.needed_for_reconstruction) {
    j["needed_for_reconstruction"] = true;
  }
  return j;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::LocalOp:
      return "LocalOp";
    case EventKind::LocalMeasurement:
      return "LocalMeasurement";
    case EventKind::RecordWritten:
      return "RecordWritten";
    case EventKind::ClassicalSend:
      return "ClassicalSend";
    case EventKind::ClassicalReceive:
      return "ClassicalReceive";
    case EventKind::ChannelConsumed:
      return "ChannelConsumed";
  }
  return "?";
}

void Transcript::declare_tag(const std::string& tag) {
  if (finalized_) {
    throw StateError("transcript already finalized");
  }
  tags_.insert(tag);
}

void Transcript::append(Event event) {
  if (finalized_) {
    throw StateError("transcript already finalized");
  }
  if (!event.protocol_tag.empty()) {
    tags_.insert(event.protocol_tag);
  }
  events_.push_back(std::move(event));
}

void Transcript::finalize(double measurement_time) {
  if (finalized_) {
    throw StateError("transcript already finalized");
  }
  std::stable_sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) {
      return a.time < b.time;
    }
    return a.site < b.site;
  });
  // Every receive pairs with exactly one earlier send.
  std::map<std::string, double> send_times;
  for (const Event& e : events_) {
    if (e.kind == EventKind::ClassicalSend) {
      if (!send_times.emplace(e.message_id, e.time).second) {
        throw ValidationError("duplicate ClassicalSend message id '" + e.message_id + "'");
      }
    }
  }
  std::set<std::string> channel_ids;
  for (const Event& e : events_) {
    if (e.kind == EventKind::ClassicalReceive) {
      auto it = send_times.find(e.message_id);
      if (it == send_times.end()) {
        throw ValidationError("ClassicalReceive without matching send: '" + e.message_id + "'");
      }
      if (e.time <= it->second) {
        throw ValidationError("ClassicalReceive at or before its send: '" + e.message_id + "'");
      }
    }
    if (e.kind == EventKind::ChannelConsumed) {
      if (!channel_ids.insert(e.channel_id).second) {
        throw ValidationError("channel '" + e.channel_id + "' consumed twice");
      }
    }
  }
  measurement_time_ = measurement_time;
  finalized_ = true;
}

double Transcript::measurement_time() const {
  if (!finalized_) {
    throw StateError("transcript not finalized");
  }
  return measurement_time_;
}

std::uint64_t Transcript::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, to_jsonl());
  return h;
}

std::string Transcript::to_jsonl() const {
  std::ostringstream os;
  write_jsonl(os);
  return os.str();
}

void Transcript::write_jsonl(std::ostream& os) const {
  for (const Event& e : events_) {
    os << event_to_json(e).dump() << '\n';
  }
}

Verdict check_instantaneity(const Transcript& transcript) {
  if (!transcript.finalized()) {
    throw StateError("transcript not finalized");
  }
  Verdict verdict;
  const double t = transcript.measurement_time();

  for (const Event& e : transcript.events()) {
    if (e.kind == EventKind::RecordWritten && e.needed_for_reconstruction && e.time != t) {
      std::ostringstream msg;
      msg << "reconstruction record '" << e.payload << "' at site " << e.site
          << " written at time " << e.time << ", not at measurement time";
      verdict.violations.push_back(msg.str());
    }
  }

  std::set<std::string> early_received;
  for (const Event& e : transcript.events()) {
    if (e.kind == EventKind::ClassicalReceive && e.time <= t) {
      early_received.insert(e.message_id);
    }
  }
  for (const Event& e : transcript.events()) {
    if ((e.kind == EventKind::LocalOp || e.kind == EventKind::LocalMeasurement) &&
        e.time == t) {
      for (const std::string& dep : e.depends_on) {
        if (early_received.count(dep) != 0) {
          std::ostringstream msg;
          msg << "operation '" << e.payload << "' at site " << e.site
              << " depends on message '" << dep << "' received at or before measurement time";
          verdict.violations.push_back(msg.str());
        }
      }
    }
  }

  verdict.pass = verdict.violations.empty();
  return verdict;
}

int count_channels(const Transcript& transcript, const std::string& protocol_tag) {
  if (!transcript.finalized()) {
    throw StateError("transcript not finalized");
  }
  if (transcript.declared_tags().count(protocol_tag) == 0) {
    throw DomainError("unknown protocol tag '" + protocol_tag + "'");
  }
  int count = 0;
  for (const Event& e : transcript.events()) {
    if (e.kind == EventKind::ChannelConsumed && e.protocol_tag == protocol_tag) {
      ++count;
    }
  }
  return count;
}

int classical_bits_sent_by(const Transcript& transcript, double t_cutoff) {
  if (!transcript.finalized()) {
    throw StateError("transcript not finalized");
  }
  int count = 0;
  for (const Event& e : transcript.events()) {
    if (e.kind == EventKind::ClassicalSend && e.time <= t_cutoff) {
      ++count;
    }
  }
  return count;
}

}  // namespace tsq::ledger
