#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mabravo/aoi.hpp"
#include "mabravo/voronoi.hpp"

namespace mabravo {

// Angular tie threshold for the routing tie-breaks: two angles closer than
// this are "equal" and the lower site id wins.
inline constexpr double kAngleTieEps = 1e-9;

// Routed payload envelope. The hop budget drops by one per forward and a
// message at zero is never forwarded again; with the default budget of one
// hop per site the budget only runs out when neighbor data is stale.
struct Message {
  Point destination_or_root;
  AreaOfInterest aoi;
  unsigned ttl = 0;
  std::vector<std::byte> payload;
};

// Outcome of one unicast step: deliver here, or hand off to a neighbor.
class UnicastDecision {
 public:
  static UnicastDecision deliver() { return UnicastDecision{}; }
  static UnicastDecision forward(SiteId next) {
    UnicastDecision d;
    d.next_ = next;
    return d;
  }
  bool is_deliver() const { return !next_.has_value(); }
  SiteId next() const { return *next_; }

 private:
  std::optional<SiteId> next_;
};

// One unicast routing step toward d, decided from the stepping site's local
// vision alone. Deliver when the site is closer to d than every neighbor.
// Otherwise prefer neighbors not farther from d that share a cell vertex
// inside the AoI, taking the one with the smallest angle between d and the
// neighbor as seen from the site (lowest id on angular ties). When no such
// neighbor exists the AoI crosses a cell side twice: the unique closer
// neighbor whose shared side crosses an AoI edge takes the packet.
UnicastDecision mabravo_d_step(const LocalVision& vision, Point d,
                               const AreaOfInterest& aoi);

// Chooses which common neighbors may veto a transmission when they sit on
// an in-AoI shared vertex. kReceiverDistance admits exactly the competitors
// the receiver's own unicast step would rank (those not farther from d than
// the receiver); it keeps the fan-out dual to mabravo_d_step and is the
// default. kSenderDistance admits only competitors farther from d than the
// sender; it is kept as a compatibility mode and can deliver duplicates
// whenever the angular winner is closer to d than a losing sender (see
// test_routing.cpp for a minimal instance).
enum class CompetitorGuard { kReceiverDistance, kSenderDistance };

// One AoI-cast fan-out step for the cast rooted at d: the neighbors this
// site must copy the message to, in circular-list order. A neighbor is
// selected exactly when this site would be its unicast next hop toward d,
// which each side decides from the shared-side geometry both can see.
std::vector<SiteId> mabravo_r_children(
    const LocalVision& vision, Point d, const AreaOfInterest& aoi,
    CompetitorGuard guard = CompetitorGuard::kReceiverDistance);

}  // namespace mabravo
