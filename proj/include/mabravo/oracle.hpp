#pragma once

#include <map>
#include <set>

#include "mabravo/aoi.hpp"
#include "mabravo/routing.hpp"
#include "mabravo/voronoi.hpp"

namespace mabravo {

// Global-knowledge spanning tree over the in-AoI sites, used only to verify
// and benchmark the distributed protocols.
struct OracleTree {
  SiteId root;
  std::map<SiteId, SiteId> parent;      // child -> parent; the root is absent
  std::map<SiteId, unsigned> depth;     // every in-AoI site, root at 0
};

// Ids of all sites whose cells intersect the AoI.
std::set<SiteId> aoi_members(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi);

// Breadth-first tree over the subgraph induced by the in-AoI sites,
// expanding neighbors in ascending id order. The induced subgraph of a
// convex AoI over a Voronoi overlay is connected; a disconnect is reported
// as a topology inconsistency.
OracleTree oracle_aoicast_tree(const VoronoiDiagram& diagram,
                               const AreaOfInterest& aoi, SiteId root);
OracleTree oracle_aoicast_tree(const VoronoiDiagram& diagram,
                               const std::set<SiteId>& members, SiteId root);

// Minimum hop count between two in-AoI sites using only in-AoI relays.
unsigned oracle_unicast_hops(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi, SiteId from,
                             SiteId to);
unsigned oracle_unicast_hops(const VoronoiDiagram& diagram,
                             const std::set<SiteId>& members, SiteId from,
                             SiteId to);

// Expected parent of every in-AoI site for an AoI-cast rooted at d: the
// forward target of the site's own unicast step toward d. The site owning d
// delivers instead and is absent. Reversing this map is the reference tree
// the distributed AoI-cast must reproduce edge for edge.
std::map<SiteId, SiteId> duality_reference(const VoronoiDiagram& diagram,
                                           const AreaOfInterest& aoi,
                                           Point d);
std::map<SiteId, SiteId> duality_reference(const VoronoiDiagram& diagram,
                                           const AreaOfInterest& aoi,
                                           const std::set<SiteId>& members,
                                           Point d);

}  // namespace mabravo
