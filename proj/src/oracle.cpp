#include "mabravo/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "mabravo/errors.hpp"

namespace mabravo {

std::set<SiteId> aoi_members(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi) {
  std::set<SiteId> members;
  for (const Site& s : diagram.sites())
    if (site_in_aoi(diagram, aoi, s.id)) members.insert(s.id);
  return members;
}

namespace {

std::vector<SiteId> sorted_in_aoi_neighbors(const VoronoiDiagram& diagram,
                                            const std::set<SiteId>& members,
                                            SiteId s) {
  std::vector<SiteId> nbrs = diagram.neighbors(s);
  std::erase_if(nbrs, [&](SiteId n) { return !members.contains(n); });
  std::sort(nbrs.begin(), nbrs.end());
  return nbrs;
}

}  // namespace

OracleTree oracle_aoicast_tree(const VoronoiDiagram& diagram,
                               const AreaOfInterest& aoi, SiteId root) {
  return oracle_aoicast_tree(diagram, aoi_members(diagram, aoi), root);
}

OracleTree oracle_aoicast_tree(const VoronoiDiagram& diagram,
                               const std::set<SiteId>& members, SiteId root) {
  if (!members.contains(root))
    throw std::invalid_argument("oracle_aoicast_tree: root " +
                                std::to_string(root.value) +
                                " is outside the AoI");

  OracleTree tree{root, {}, {}};
  tree.depth[root] = 0;
  std::deque<SiteId> frontier{root};
  while (!frontier.empty()) {
    SiteId cur = frontier.front();
    frontier.pop_front();
    for (SiteId nb : sorted_in_aoi_neighbors(diagram, members, cur)) {
      if (tree.depth.contains(nb)) continue;
      tree.depth[nb] = tree.depth[cur] + 1;
      tree.parent[nb] = cur;
      frontier.push_back(nb);
    }
  }
  if (tree.depth.size() != members.size())
    throw TopologyInconsistency(
        "oracle_aoicast_tree: in-AoI subgraph is disconnected");
  return tree;
}

unsigned oracle_unicast_hops(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi, SiteId from,
                             SiteId to) {
  return oracle_unicast_hops(diagram, aoi_members(diagram, aoi), from, to);
}

unsigned oracle_unicast_hops(const VoronoiDiagram& diagram,
                             const std::set<SiteId>& members, SiteId from,
                             SiteId to) {
  if (!members.contains(from) || !members.contains(to))
    throw std::invalid_argument(
        "oracle_unicast_hops: an endpoint is outside the AoI");

  std::map<SiteId, unsigned> dist;
  dist[from] = 0;
  std::deque<SiteId> frontier{from};
  while (!frontier.empty()) {
    SiteId cur = frontier.front();
    frontier.pop_front();
    if (cur == to) return dist[cur];
    for (SiteId nb : sorted_in_aoi_neighbors(diagram, members, cur)) {
      if (dist.contains(nb)) continue;
      dist[nb] = dist[cur] + 1;
      frontier.push_back(nb);
    }
  }
  throw TopologyInconsistency(
      "oracle_unicast_hops: endpoints are not connected inside the AoI");
}

std::map<SiteId, SiteId> duality_reference(const VoronoiDiagram& diagram,
                                           const AreaOfInterest& aoi,
                                           Point d) {
  return duality_reference(diagram, aoi, aoi_members(diagram, aoi), d);
}

std::map<SiteId, SiteId> duality_reference(const VoronoiDiagram& diagram,
                                           const AreaOfInterest& aoi,
                                           const std::set<SiteId>& members,
                                           Point d) {
  if (!point_in_polygon(d, aoi.region, diagram.tolerance()))
    throw std::invalid_argument(
        "duality_reference: destination is outside the AoI");

  std::map<SiteId, SiteId> parent;
  for (SiteId s : members) {
    UnicastDecision step = mabravo_d_step(local_vision(diagram, s), d, aoi);
    if (!step.is_deliver()) parent[s] = step.next();
  }
  return parent;
}

}  // namespace mabravo
