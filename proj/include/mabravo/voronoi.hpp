#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mabravo/geometry.hpp"

namespace mabravo {

// Unique, totally ordered node identifier. Ties in the routing protocols are
// broken by comparing these.
struct SiteId {
  std::uint32_t value{};
  auto operator<=>(const SiteId&) const = default;
};

struct Site {
  SiteId id;
  Point position;
};

// A corner of a cell. For an interior vertex the two other cell owners
// meeting there are recorded; vertices created by clipping to the world box
// carry the boundary flag instead of a full triple.
struct CellVertex {
  Point position;
  std::array<SiteId, 2> incident{};
  int incident_count = 0;
  bool on_world_boundary = false;

  // The incident site other than `than`, when the vertex has one.
  std::optional<SiteId> other_incident(SiteId than) const {
    for (int k = 0; k < incident_count; ++k)
      if (incident[k] != than) return incident[k];
    return std::nullopt;
  }
  bool has_incident(SiteId s) const {
    return (incident_count > 0 && incident[0] == s) ||
           (incident_count > 1 && incident[1] == s);
  }
};

// One step of a cell's circular boundary list: the side leaving polygon
// vertex k, the cell on its far side (or the world box), and the vertex the
// side ends at, which is also the next side's start.
struct BoundaryEntry {
  Segment side;
  std::optional<SiteId> neighbor;  // nullopt: side lies on the world box
  CellVertex end_vertex;
};

struct VoronoiCell {
  SiteId owner;
  ConvexPolygon polygon;
  std::vector<BoundaryEntry> boundary;  // circular, aligned with polygon order
};

// Voronoi tessellation of a site set, with every cell clipped to the world
// box so that unbounded cells become ordinary polygons.
class VoronoiDiagram {
 public:
  VoronoiDiagram(std::vector<Site> sites, Box world, Tolerance tol,
                 std::vector<VoronoiCell> cells);

  const std::vector<Site>& sites() const { return sites_; }
  const Box& world() const { return world_; }
  const Tolerance& tolerance() const { return tol_; }

  bool has_site(SiteId id) const;
  const Site& site(SiteId id) const;
  const VoronoiCell& cell(SiteId id) const;

  // Owners of cells sharing a side with `id`'s cell, in circular-list order.
  std::vector<SiteId> neighbors(SiteId id) const;

  // The two endpoints of the side between neighbors i and j, in side order.
  // Each true Voronoi vertex identifies its third incident site.
  std::array<CellVertex, 2> shared_vertices(SiteId i, SiteId j) const;

  // The site whose cell contains p (nearest site; lowest id on ties).
  SiteId owner_of(Point p) const;

 private:
  std::size_t index_of(SiteId id) const;

  std::vector<Site> sites_;
  Box world_;
  Tolerance tol_;
  std::vector<VoronoiCell> cells_;                      // parallel to sites_
  std::vector<std::pair<SiteId, std::uint32_t>> byid_;  // sorted id -> index
};

// What a single site knows: itself plus its overlay neighbors' ids and
// positions, and the tessellation it computes from only that. The center's
// own cell in this diagram equals its cell in the full diagram.
struct LocalVision {
  Site center;
  std::vector<Site> known;
  VoronoiDiagram diagram;
};

// Builds the tessellation by cutting the world box with the bisector of
// every other site, cell by cell. Cells are computed independently (OpenMP
// when the diagram is large) and distance-sorted pruning skips bisectors
// that cannot reach a cell. Results match build_diagram_reference.
VoronoiDiagram build_diagram(std::vector<Site> sites, const Box& world,
                             std::optional<Tolerance> tol = std::nullopt);

// Literal serial construction: every cell is clipped against every other
// site in input order, no pruning, no threads. Kept as the reference the
// fast path is tested and benchmarked against.
VoronoiDiagram build_diagram_reference(std::vector<Site> sites,
                                       const Box& world,
                                       std::optional<Tolerance> tol =
                                           std::nullopt);

// Rebuilds the diagram restricted to `id` and its immediate neighbors.
LocalVision local_vision(const VoronoiDiagram& diagram, SiteId id);

}  // namespace mabravo
