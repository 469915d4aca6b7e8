#include "mabravo/routing.hpp"

#include <cmath>
#include <string>

#include "mabravo/errors.hpp"

namespace mabravo {

namespace {

// Vertices on the world box never count as inside the AoI: a valid AoI is
// strictly interior to the box.
bool vertex_in_aoi(const CellVertex& v, const AreaOfInterest& aoi,
                   const Tolerance& tol) {
  return !v.on_world_boundary && point_in_polygon(v.position, aoi.region, tol);
}

bool side_crosses_aoi_edge(Point va, Point vb, const AreaOfInterest& aoi,
                           const Tolerance& tol) {
  if (distance(va, vb) <= tol.eps) return false;
  Segment side(va, vb, tol);
  const std::vector<Point>& av = aoi.region.vertices();
  for (std::size_t i = 0, n = av.size(); i < n; ++i) {
    Segment edge(av[i], av[(i + 1) % n], tol);
    if (segment_intersects_segment(edge, side, tol)) return true;
  }
  return false;
}

void check_preconditions(const LocalVision& vision, Point d,
                         const AreaOfInterest& aoi, const char* op) {
  const Tolerance& tol = vision.diagram.tolerance();
  if (!point_in_polygon(d, aoi.region, tol))
    throw ProtocolMisuse(std::string(op) +
                         ": destination point lies outside the AoI");
  if (intersect_convex(vision.diagram.cell(vision.center.id).polygon,
                       aoi.region, tol)
          .is_empty())
    throw ProtocolMisuse(std::string(op) + ": cell of site " +
                         std::to_string(vision.center.id.value) +
                         " does not intersect the AoI");
}

// Strictly smaller angle, or an angular tie won by the lower id.
bool beats(double angle, SiteId id, double best_angle, SiteId best_id) {
  double diff = angle - best_angle;
  if (diff < -kAngleTieEps) return true;
  return std::abs(diff) < kAngleTieEps && id < best_id;
}

}  // namespace

UnicastDecision mabravo_d_step(const LocalVision& vision, Point d,
                               const AreaOfInterest& aoi) {
  check_preconditions(vision, d, aoi, "mabravo_d_step");

  const VoronoiDiagram& dg = vision.diagram;
  const Tolerance& tol = dg.tolerance();
  const Point c = vision.center.position;
  const SiteId cid = vision.center.id;
  const std::vector<SiteId> nbrs = dg.neighbors(cid);
  const double dc = distance(d, c);

  bool closest = true;
  for (SiteId nb : nbrs) {
    if (!(dc < distance(d, dg.site(nb).position))) {
      closest = false;
      break;
    }
  }
  if (closest) return UnicastDecision::deliver();

  // Candidates: neighbors not strictly farther from d whose shared side has
  // an endpoint vertex inside the AoI.
  std::vector<SiteId> candidates;
  for (SiteId nb : nbrs) {
    if (dc < distance(d, dg.site(nb).position)) continue;
    auto verts = dg.shared_vertices(cid, nb);
    if (!vertex_in_aoi(verts[0], aoi, tol) &&
        !vertex_in_aoi(verts[1], aoi, tol))
      continue;
    candidates.push_back(nb);
  }

  if (candidates.empty()) {
    // The AoI crosses one of the cell's sides twice without covering any of
    // its vertices. Exactly one closer neighbor whose shared side crosses an
    // AoI edge must exist; anything else means the topology data is stale.
    std::optional<SiteId> found;
    for (SiteId nb : nbrs) {
      if (!(distance(d, dg.site(nb).position) < dc)) continue;
      auto verts = dg.shared_vertices(cid, nb);
      if (!side_crosses_aoi_edge(verts[0].position, verts[1].position, aoi,
                                 tol))
        continue;
      if (found)
        throw TopologyInconsistency(
            "mabravo_d_step: several side-crossing next hops at site " +
            std::to_string(cid.value));
      found = nb;
    }
    if (!found)
      throw TopologyInconsistency(
          "mabravo_d_step: no next hop found at site " +
          std::to_string(cid.value));
    return UnicastDecision::forward(*found);
  }

  SiteId best = candidates[0];
  double best_angle = angle_at(c, d, dg.site(best).position, tol);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double a = angle_at(c, d, dg.site(candidates[i]).position, tol);
    if (beats(a, candidates[i], best_angle, best)) {
      best = candidates[i];
      best_angle = a;
    }
  }
  return UnicastDecision::forward(best);
}

std::vector<SiteId> mabravo_r_children(const LocalVision& vision, Point d,
                                       const AreaOfInterest& aoi,
                                       CompetitorGuard guard) {
  check_preconditions(vision, d, aoi, "mabravo_r_children");

  const VoronoiDiagram& dg = vision.diagram;
  const Tolerance& tol = dg.tolerance();
  const Point c = vision.center.position;
  const SiteId cid = vision.center.id;
  const double dc = distance(d, c);

  std::vector<SiteId> children;
  for (SiteId nb : dg.neighbors(cid)) {
    const Point np = dg.site(nb).position;
    if (dc > distance(d, np)) continue;  // nb is closer to d: never a child

    auto verts = dg.shared_vertices(cid, nb);
    bool in0 = vertex_in_aoi(verts[0], aoi, tol);
    bool in1 = vertex_in_aoi(verts[1], aoi, tol);

    if (!in0 && !in1) {
      // Neither shared vertex is in the AoI: nb is reached only when the
      // AoI crosses the shared side itself, making this site nb's sole
      // possible unicast hop.
      if (side_crosses_aoi_edge(verts[0].position, verts[1].position, aoi,
                                tol))
        children.push_back(nb);
      continue;
    }

    // A common neighbor on an in-AoI shared vertex competes for nb; it wins
    // on a smaller angle at nb (or an angular tie with a lower id), and
    // then this site stays silent. The guard decides which competitors are
    // admitted to the contest.
    bool excluded = false;
    for (int k = 0; k < 2 && !excluded; ++k) {
      const CellVertex& v = verts[static_cast<std::size_t>(k)];
      if (!(k == 0 ? in0 : in1)) continue;
      std::optional<SiteId> third = v.other_incident(nb);
      if (!third) continue;  // no common neighbor on this end
      const Point tp = dg.site(*third).position;
      if (guard == CompetitorGuard::kReceiverDistance) {
        // Admit competitors nb's own step would rank: not strictly farther
        // from d than nb itself.
        if (distance(tp, d) > distance(d, np)) continue;
      } else {
        // Compatibility mode: admit only competitors farther than this site.
        if (!(distance(tp, d) > dc)) continue;
      }
      double a_rival = angle_at(np, d, tp, tol);
      double a_self = angle_at(np, d, c, tol);
      double diff = a_rival - a_self;
      if (diff < -kAngleTieEps ||
          (std::abs(diff) < kAngleTieEps && *third < cid))
        excluded = true;
    }
    if (!excluded) children.push_back(nb);
  }
  return children;
}

}  // namespace mabravo
