#include "tsq/channels.hpp"

#include "tsq/errors.hpp"

namespace tsq::protocols {

ChannelPool::ChannelPool(int capacity) : capacity_(capacity) {}

ChannelPair& ChannelPool::provision(ChannelKind kind, SiteId site_a, SiteId site_b,
                                    const std::string& id_hint) {
  if (provisioned() >= capacity_) {
    throw ResourceError("channel pool exhausted (capacity " + std::to_string(capacity_) + ")");
  }
  ChannelPair ch;
  // A global serial keeps ids unique even when group hints repeat across runs.
  ch.id = (id_hint.empty() ? "ch" : id_hint) + "#" + std::to_string(channels_.size());
  ch.kind = kind;
  ch.site_a = site_a;
  ch.site_b = site_b;
  channels_.push_back(std::move(ch));
  return channels_.back();
}

std::vector<ChannelPair*> ChannelPool::provision_group(int count, ChannelKind kind,
                                                       SiteId site_a, SiteId site_b,
                                                       const std::string& group_id) {
  std::vector<ChannelPair*> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(&provision(kind, site_a, site_b, group_id + ":" + std::to_string(i)));
  }
  return out;
}

ChannelPair& ChannelPool::get(const std::string& id) {
  for (ChannelPair& ch : channels_) {
    if (ch.id == id) {
      return ch;
    }
  }
  throw DomainError("unknown channel id '" + id + "'");
}

int ChannelPool::consumed() const {
  int n = 0;
  for (const ChannelPair& ch : channels_) {
    if (ch.consumed) {
      ++n;
    }
  }
  return n;
}

}  // namespace tsq::protocols
