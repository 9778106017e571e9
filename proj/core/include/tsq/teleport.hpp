#pragma once

#include <vector>

#include "tsq/channels.hpp"
#include "tsq/measurement.hpp"
#include "tsq/random.hpp"
#include "tsq/state_vector.hpp"

namespace tsq::protocols {

// The pair state a channel contributes to the register: Φ+ or the singlet.
StateVector channel_pair_state(ChannelKind kind);

struct HalfTeleportResult {
  std::vector<BellOutcome> outcomes;
  StateVector state;
};

// Bell-measures each source against the channel half at `source_site`,
// leaving correction(outcome)·(source state) on the far halves. No outcome
// is transmitted and no correction applied; channels are marked consumed.
// Reusing a consumed channel is a resource error.
HalfTeleportResult half_teleport(const StateVector& state, const std::vector<QubitId>& sources,
                                 const std::vector<ChannelPair*>& channels, SiteId source_site,
                                 RandomSource& rng);

// half_teleport followed by the outcome corrections on the far halves; the
// remote state equals the source state up to global phase.
HalfTeleportResult complete_teleport(const StateVector& state, const std::vector<QubitId>& sources,
                                     const std::vector<ChannelPair*>& channels, SiteId source_site,
                                     RandomSource& rng);

// The channel half co-located with / opposite to the given site.
QubitId channel_near(const ChannelPair& ch, SiteId site);
QubitId channel_far(const ChannelPair& ch, SiteId site);

}  // namespace tsq::protocols
