#pragma once

#include <deque>
#include <string>
#include <vector>

#include "tsq/pauli.hpp"

namespace tsq::protocols {

// One pre-shared entangled pair connecting two sites. Qubit ids are register
// positions once materialized (-1 until then).
struct ChannelPair {
  std::string id;
  QubitId qubit_a = -1;
  QubitId qubit_b = -1;
  SiteId site_a = 0;
  SiteId site_b = 1;
  ChannelKind kind = ChannelKind::PhiPlus;
  bool consumed = false;
};

// Provisioning registry. Provisioned channels exist as bookkeeping entries;
// their pair state enters a register only when a protocol touches them, so
// unused groups never cost qubits or show up as consumed.
class ChannelPool {
 public:
  explicit ChannelPool(int capacity = 1 << 20);

  ChannelPair& provision(ChannelKind kind, SiteId site_a, SiteId site_b,
                         const std::string& id_hint = "");
  std::vector<ChannelPair*> provision_group(int count, ChannelKind kind, SiteId site_a,
                                            SiteId site_b, const std::string& group_id);

  ChannelPair& get(const std::string& id);
  int provisioned() const { return static_cast<int>(channels_.size()); }
  int consumed() const;
  int capacity() const { return capacity_; }
  const std::deque<ChannelPair>& all() const { return channels_; }

 private:
  int capacity_;
  std::deque<ChannelPair> channels_;  // stable references across provisioning
};

}  // namespace tsq::protocols
