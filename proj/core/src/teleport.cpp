#include "tsq/teleport.hpp"

#include "tsq/errors.hpp"
#include "tsq/pauli.hpp"

namespace tsq::protocols {

StateVector channel_pair_state(ChannelKind kind) {
  if (kind == ChannelKind::PhiPlus) {
    return StateVector(2, {Complex{kInvSqrt2, 0}, Complex{0, 0}, Complex{0, 0},
                           Complex{kInvSqrt2, 0}});
  }
  return singlet_state();
}

QubitId channel_near(const ChannelPair& ch, SiteId site) {
  if (site == ch.site_a) {
    return ch.qubit_a;
  }
  if (site == ch.site_b) {
    return ch.qubit_b;
  }
  throw DomainError("channel '" + ch.id + "' does not touch site " + std::to_string(site));
}

QubitId channel_far(const ChannelPair& ch, SiteId site) {
  const QubitId near = channel_near(ch, site);
  return near == ch.qubit_a ? ch.qubit_b : ch.qubit_a;
}

HalfTeleportResult half_teleport(const StateVector& state, const std::vector<QubitId>& sources,
                                 const std::vector<ChannelPair*>& channels, SiteId source_site,
                                 RandomSource& rng) {
  if (sources.size() != channels.size()) {
    throw DomainError("one fresh channel per source qubit required");
  }
  HalfTeleportResult result;
  result.state = state;
  result.outcomes.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    ChannelPair& ch = *channels[i];
    if (ch.consumed) {
      throw ResourceError("channel '" + ch.id + "' already consumed");
    }
    if (ch.qubit_a < 0 || ch.qubit_b < 0) {
      throw ResourceError("channel '" + ch.id + "' not materialized in the register");
    }
    const QubitId near = channel_near(ch, source_site);
    BellResult r = bell_measure(result.state, {sources[i], near}, rng);
    result.state = std::move(r.state);
    result.outcomes.push_back(r.outcome);
    ch.consumed = true;
  }
  return result;
}

HalfTeleportResult complete_teleport(const StateVector& state, const std::vector<QubitId>& sources,
                                     const std::vector<ChannelPair*>& channels, SiteId source_site,
                                     RandomSource& rng) {
  HalfTeleportResult result = half_teleport(state, sources, channels, source_site, rng);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const ChannelPair& ch = *channels[i];
    const PauliOp fix = correction_for(result.outcomes[i], ch.kind);
    if (!fix.is_identity()) {
      result.state =
          apply_unitary(result.state, pauli_op_matrix(fix), {channel_far(ch, source_site)});
    }
  }
  return result;
}

}  // namespace tsq::protocols
