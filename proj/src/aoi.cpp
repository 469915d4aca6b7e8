#include "mabravo/aoi.hpp"

#include <algorithm>
#include <stdexcept>

#include "mabravo/errors.hpp"

namespace mabravo {

AreaOfInterest make_aoi(std::span<const Point> seed_points,
                        const Tolerance& tol) {
  auto hull = gift_wrap(seed_points, tol);
  if (!hull)
    throw std::invalid_argument(
        "AoI seed points have a degenerate hull (collinear or too few)");
  return AreaOfInterest{std::move(*hull)};
}

bool site_in_aoi(const VoronoiDiagram& diagram, const AreaOfInterest& aoi,
                 SiteId s) {
  return !intersect_convex(diagram.cell(s).polygon, aoi.region,
                           diagram.tolerance())
              .is_empty();
}

namespace {

// Ring of the cell polygon where each edge is tagged with its boundary-list
// index, so clipped sub-edges still know which cell side they came from.
TaggedRing cell_ring(const VoronoiCell& cell) {
  TaggedRing ring;
  ring.pts = cell.polygon.vertices();
  std::size_t n = ring.pts.size();
  ring.tags.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    ring.tags[k] = static_cast<int>((k + n - 1) % n);  // side arriving at k
  return ring;
}

Region region_from_ring(const TaggedRing& ring, const Tolerance& tol) {
  if (ring.empty()) return Region{};
  if (ring.size() >= 3) {
    std::vector<Point> pts = ring.pts;
    return Region(ConvexPolygon(std::move(pts), tol));
  }
  std::vector<Point> pts = ring.pts;
  if (pts.size() == 2 && distance(pts[0], pts[1]) <= tol.eps) pts.pop_back();
  return Region::degenerate(std::move(pts));
}

void add_candidate(std::vector<SiteId>& out, const VoronoiCell& cell,
                   int tag) {
  if (tag < 0) return;  // AoI edge, not a cell side
  const auto& nb = cell.boundary[static_cast<std::size_t>(tag)].neighbor;
  if (!nb) return;  // world-box side
  if (std::find(out.begin(), out.end(), *nb) == out.end()) out.push_back(*nb);
}

}  // namespace

InterestGeometry interest_geometry(const VoronoiCell& cell,
                                   const AreaOfInterest& aoi, Point d,
                                   const Tolerance& tol) {
  if (!point_in_polygon(d, aoi.region, tol))
    throw ProtocolMisuse("destination point lies outside the AoI");

  // Carve the cell down to its interest region, remembering per edge
  // whether it is a piece of a cell side (tag >= 0) or of the AoI boundary.
  TaggedRing ring = cell_ring(cell);
  TaggedRing scratch;
  const std::vector<Point>& av = aoi.region.vertices();
  for (std::size_t i = 0, n = av.size(); i < n && !ring.empty(); ++i) {
    HalfPlane hp = HalfPlane::keep_right_of(av[i], av[(i + 1) % n]);
    clip_tagged_ring(ring, hp, kUntaggedEdge, tol, scratch);
  }
  remove_collinear_middles(ring, tol);
  if (ring.empty())
    throw ProtocolMisuse("cell " + std::to_string(cell.owner.value) +
                         " does not intersect the AoI");

  InterestGeometry out{cell.owner, d, region_from_ring(ring, tol), Region{},
                       {}, {}};

  if (out.interest_region.contains(d, tol)) {
    out.shadow_region = out.interest_region;  // delivery: nothing to cross
    return out;
  }

  // Shadow = hull of the interest region's extreme points plus d.
  {
    std::vector<Point> pts(out.interest_region.points().begin(),
                           out.interest_region.points().end());
    pts.push_back(d);
    if (auto hull = gift_wrap(pts, tol)) {
      out.shadow_region = Region(std::move(*hull));
    } else {
      // Everything collinear with d: the shadow is the segment from d to
      // the farthest interest point.
      Point far = pts[0];
      for (const Point& p : pts)
        if (distance(d, p) > distance(d, far)) far = p;
      out.shadow_region = Region::degenerate({d, far});
    }
  }

  const std::size_t n = ring.size();
  if (n < 3) {
    // Degenerate interest contact: no facing chain, but sides carrying the
    // contact still name candidate neighbors.
    for (int tag : ring.tags) add_candidate(out.candidate_neighbors, cell, tag);
    if (n == 2 && ring.tags[0] != kUntaggedEdge)
      out.segments_of_interest.emplace_back(ring.pts[0], ring.pts[1], tol);
    return out;
  }

  // An edge faces d when d lies strictly outside its supporting line. AoI
  // edges never face d (d is inside the AoI), so the facing arc consists of
  // cell-side pieces only. Start the walk at the arc's first edge so the
  // collected segments chain in order even when the arc wraps the ring.
  auto faces_d = [&](std::size_t k) {
    Point a = ring.pts[k];
    Point b = ring.pts[(k + 1) % n];
    return cross(a, b, d) > distance(a, b) * tol.eps;
  };
  std::size_t first = 0;
  while (first < n && !(faces_d(first) && !faces_d((first + n - 1) % n)))
    ++first;
  if (first == n) return out;  // no facing edge within tolerance

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t k = (first + step) % n;
    if (!faces_d(k)) break;
    int tag = ring.tags[(k + 1) % n];  // tag of the edge leaving pts[k]
    if (tag < 0) continue;
    out.segments_of_interest.emplace_back(ring.pts[k], ring.pts[(k + 1) % n],
                                          tol);
    add_candidate(out.candidate_neighbors, cell, tag);
  }
  return out;
}

}  // namespace mabravo
