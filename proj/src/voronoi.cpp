#include "mabravo/voronoi.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include "mabravo/errors.hpp"

namespace mabravo {

namespace {

double squared_distance(Point a, Point b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

TaggedRing box_ring(const Box& world) {
  TaggedRing ring;
  ring.pts = {{world.min_x, world.min_y},
              {world.min_x, world.max_y},
              {world.max_x, world.max_y},
              {world.max_x, world.min_y}};  // clockwise, y up
  ring.tags.assign(4, kUntaggedEdge);
  return ring;
}

void rotate_to_lowest_vertex(TaggedRing& ring) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ring.size(); ++i) {
    if (ring.pts[i].y < ring.pts[best].y ||
        (ring.pts[i].y == ring.pts[best].y &&
         ring.pts[i].x < ring.pts[best].x))
      best = i;
  }
  std::rotate(ring.pts.begin(),
              ring.pts.begin() + static_cast<std::ptrdiff_t>(best),
              ring.pts.end());
  std::rotate(ring.tags.begin(),
              ring.tags.begin() + static_cast<std::ptrdiff_t>(best),
              ring.tags.end());
}

// Clips the world box down to site i's cell. Tags carry the index of the
// site whose bisector produced each edge. With pruning on, other sites are
// visited nearest first and the loop stops once half the distance to the
// next site exceeds the cell's current reach: such a bisector cannot touch
// the cell, and neither can any later one.
TaggedRing carve_cell(std::size_t i, const std::vector<Site>& sites,
                      const Box& world, const Tolerance& tol, bool prune) {
  TaggedRing ring = box_ring(world);
  TaggedRing scratch;
  const Point center = sites[i].position;

  auto clip_against = [&](std::size_t j) {
    HalfPlane hp = HalfPlane::keep_closer_to(center, sites[j].position);
    clip_tagged_ring(ring, hp, static_cast<int>(j), tol, scratch);
  };

  if (!prune) {
    for (std::size_t j = 0; j < sites.size(); ++j)
      if (j != i) clip_against(j);
    return ring;
  }

  std::vector<std::uint32_t> order;
  order.reserve(sites.size() - 1);
  for (std::size_t j = 0; j < sites.size(); ++j)
    if (j != i) order.push_back(static_cast<std::uint32_t>(j));
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    double da = squared_distance(center, sites[a].position);
    double db = squared_distance(center, sites[b].position);
    if (da != db) return da < db;
    return sites[a].id < sites[b].id;
  });

  for (std::uint32_t j : order) {
    double reach = 0;
    for (const Point& p : ring.pts)
      reach = std::max(reach, distance(center, p));
    if (0.5 * distance(center, sites[j].position) > reach + tol.eps) break;
    clip_against(j);
  }
  return ring;
}

VoronoiCell finalize_cell(std::size_t i, TaggedRing ring,
                          const std::vector<Site>& sites,
                          const Tolerance& tol) {
  remove_collinear_middles(ring, tol);
  if (ring.size() < 3)
    throw TopologyInconsistency("cell of site " +
                                std::to_string(sites[i].id.value) +
                                " degenerated during construction");
  rotate_to_lowest_vertex(ring);

  const std::size_t n = ring.size();
  auto tag_site = [&](int tag) -> std::optional<SiteId> {
    if (tag == kUntaggedEdge) return std::nullopt;
    return sites[static_cast<std::size_t>(tag)].id;
  };

  std::vector<BoundaryEntry> entries;
  entries.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t next = (k + 1) % n;
    std::size_t after = (k + 2) % n;
    CellVertex v;
    v.position = ring.pts[next];
    for (int tag : {ring.tags[next], ring.tags[after]}) {
      if (auto s = tag_site(tag))
        v.incident[static_cast<std::size_t>(v.incident_count++)] = *s;
      else
        v.on_world_boundary = true;
    }
    if (v.incident_count == 2 && v.incident[0] == v.incident[1])
      throw std::invalid_argument(
          "degenerate (cocircular) site configuration at a cell vertex");
    entries.push_back(BoundaryEntry{Segment(ring.pts[k], ring.pts[next], tol),
                                    tag_site(ring.tags[next]), v});
  }
  return VoronoiCell{sites[i].id, ConvexPolygon(std::move(ring.pts), tol),
                     std::move(entries)};
}

void validate_sites(const std::vector<Site>& sites, const Box& world,
                    const Tolerance& tol) {
  if (sites.empty())
    throw std::invalid_argument("diagram needs at least one site");
  if (!(world.width() > 0) || !(world.height() > 0))
    throw std::invalid_argument("degenerate world box");
  double eps2 = tol.eps * tol.eps;
  for (std::size_t a = 0; a < sites.size(); ++a) {
    if (!finite(sites[a].position))
      throw std::invalid_argument("site position must be finite");
    if (!world.contains_strict(sites[a].position))
      throw std::invalid_argument(
          "site " + std::to_string(sites[a].id.value) +
          " is not strictly inside the world box");
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      if (sites[a].id == sites[b].id)
        throw std::invalid_argument("duplicate site id " +
                                    std::to_string(sites[a].id.value));
      if (squared_distance(sites[a].position, sites[b].position) <= eps2)
        throw std::invalid_argument("duplicate site positions");
    }
  }
}

VoronoiDiagram build_impl(std::vector<Site> sites, const Box& world,
                          std::optional<Tolerance> tol_opt, bool fast) {
  Tolerance tol = tol_opt ? *tol_opt : Tolerance::for_box(world);
  validate_sites(sites, world, tol);

  const std::size_t n = sites.size();
  std::vector<std::optional<VoronoiCell>> slots(n);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic, 8) if (fast && n >= 64)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    auto i = static_cast<std::size_t>(ii);
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      slots[i] = finalize_cell(i, carve_cell(i, sites, world, tol, fast),
                               sites, tol);
    } catch (...) {
#pragma omp critical
      {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<VoronoiCell> cells;
  cells.reserve(n);
  for (auto& s : slots) cells.push_back(std::move(*s));
  return VoronoiDiagram(std::move(sites), world, tol, std::move(cells));
}

}  // namespace

VoronoiDiagram::VoronoiDiagram(std::vector<Site> sites, Box world,
                               Tolerance tol, std::vector<VoronoiCell> cells)
    : sites_(std::move(sites)),
      world_(world),
      tol_(tol),
      cells_(std::move(cells)) {
  byid_.reserve(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i)
    byid_.emplace_back(sites_[i].id, static_cast<std::uint32_t>(i));
  std::sort(byid_.begin(), byid_.end());

  // The overlay link relation must be symmetric; an asymmetry means a cell
  // was carved inconsistently.
  for (const Site& s : sites_) {
    for (SiteId nb : neighbors(s.id)) {
      std::vector<SiteId> back = neighbors(nb);
      if (std::find(back.begin(), back.end(), s.id) == back.end())
        throw TopologyInconsistency(
            "asymmetric neighbor relation between sites " +
            std::to_string(s.id.value) + " and " + std::to_string(nb.value));
    }
  }

  // Every interior vertex must be incident to exactly 3 cells. Cocircular
  // configurations (4+ equidistant sites) make neighbor triples ambiguous
  // and are rejected rather than resolved arbitrarily.
  auto sq = [](Point a, Point b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
  };
  for (const VoronoiCell& c : cells_) {
    for (const BoundaryEntry& e : c.boundary) {
      if (e.end_vertex.on_world_boundary) continue;
      const Point v = e.end_vertex.position;
      double nearest2 = std::numeric_limits<double>::infinity();
      for (const Site& s : sites_)
        nearest2 = std::min(nearest2, sq(v, s.position));
      double bound = std::sqrt(nearest2) + tol_.eps;
      double bound2 = bound * bound;
      int incident = 0;
      for (const Site& s : sites_)
        if (sq(v, s.position) <= bound2) ++incident;
      if (incident != 3)
        throw std::invalid_argument(
            "degenerate (cocircular) site configuration: a vertex of cell " +
            std::to_string(c.owner.value) + " touches " +
            std::to_string(incident) + " cells");
    }
  }
}

std::size_t VoronoiDiagram::index_of(SiteId id) const {
  auto it = std::lower_bound(
      byid_.begin(), byid_.end(), id,
      [](const auto& e, SiteId key) { return e.first < key; });
  if (it == byid_.end() || it->first != id)
    throw std::out_of_range("unknown site id " + std::to_string(id.value));
  return it->second;
}

bool VoronoiDiagram::has_site(SiteId id) const {
  auto it = std::lower_bound(
      byid_.begin(), byid_.end(), id,
      [](const auto& e, SiteId key) { return e.first < key; });
  return it != byid_.end() && it->first == id;
}

const Site& VoronoiDiagram::site(SiteId id) const {
  return sites_[index_of(id)];
}

const VoronoiCell& VoronoiDiagram::cell(SiteId id) const {
  return cells_[index_of(id)];
}

std::vector<SiteId> VoronoiDiagram::neighbors(SiteId id) const {
  const VoronoiCell& c = cell(id);
  std::vector<SiteId> out;
  out.reserve(c.boundary.size());
  for (const BoundaryEntry& e : c.boundary)
    if (e.neighbor) out.push_back(*e.neighbor);
  return out;
}

std::array<CellVertex, 2> VoronoiDiagram::shared_vertices(SiteId i,
                                                          SiteId j) const {
  const VoronoiCell& c = cell(i);
  index_of(j);  // surfaces unknown-site errors before the neighbor scan
  const std::size_t n = c.boundary.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (c.boundary[k].neighbor == j) {
      const CellVertex& start = c.boundary[(k + n - 1) % n].end_vertex;
      return {start, c.boundary[k].end_vertex};
    }
  }
  throw std::out_of_range("sites " + std::to_string(i.value) + " and " +
                          std::to_string(j.value) + " are not neighbors");
}

SiteId VoronoiDiagram::owner_of(Point p) const {
  std::size_t best = 0;
  double bd = squared_distance(p, sites_[0].position);
  for (std::size_t i = 1; i < sites_.size(); ++i) {
    double d = squared_distance(p, sites_[i].position);
    if (d < bd || (d == bd && sites_[i].id < sites_[best].id)) {
      bd = d;
      best = i;
    }
  }
  return sites_[best].id;
}

VoronoiDiagram build_diagram(std::vector<Site> sites, const Box& world,
                             std::optional<Tolerance> tol) {
  return build_impl(std::move(sites), world, tol, true);
}

VoronoiDiagram build_diagram_reference(std::vector<Site> sites,
                                       const Box& world,
                                       std::optional<Tolerance> tol) {
  return build_impl(std::move(sites), world, tol, false);
}

LocalVision local_vision(const VoronoiDiagram& diagram, SiteId id) {
  const Site& center = diagram.site(id);
  std::vector<Site> known;
  for (SiteId nb : diagram.neighbors(id)) known.push_back(diagram.site(nb));

  std::vector<Site> members;
  members.reserve(known.size() + 1);
  members.push_back(center);
  members.insert(members.end(), known.begin(), known.end());
  return LocalVision{center, std::move(known),
                     build_diagram(std::move(members), diagram.world(),
                                   diagram.tolerance())};
}

}  // namespace mabravo
