#pragma once

#include <span>
#include <vector>

#include "mabravo/geometry.hpp"
#include "mabravo/voronoi.hpp"

namespace mabravo {

// Finite convex area of interest, stored clockwise. A site belongs to the
// AoI exactly when its cell intersects this region.
struct AreaOfInterest {
  ConvexPolygon region;
};

// Everything a cell derives about one destination point: the part of the
// cell inside the AoI, the convex shadow that part casts toward the
// destination, the cell sides the shadow leaves through (the segments of
// interest), and the neighbors across those sides.
struct InterestGeometry {
  SiteId cell_owner;
  Point destination;
  Region interest_region;
  Region shadow_region;
  std::vector<Segment> segments_of_interest;
  std::vector<SiteId> candidate_neighbors;
};

// Clockwise hull of the seed points. Degenerate hulls are rejected: an AoI
// must enclose area.
AreaOfInterest make_aoi(std::span<const Point> seed_points,
                        const Tolerance& tol);

// True when the site's cell and the AoI share at least one point (closed
// semantics: touching counts).
bool site_in_aoi(const VoronoiDiagram& diagram, const AreaOfInterest& aoi,
                 SiteId s);

// Derives the interest sets of `cell` toward destination `d`. The cell must
// intersect the AoI and `d` must lie inside the AoI. When `d` lies in the
// cell's interest region the shadow collapses onto it and there are no
// segments of interest (the delivery case).
InterestGeometry interest_geometry(const VoronoiCell& cell,
                                   const AreaOfInterest& aoi, Point d,
                                   const Tolerance& tol);

}  // namespace mabravo
