#include "mabravo/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace mabravo {

double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

Tolerance::Tolerance(double e) : eps(e) {
  if (!(e > 0) || !std::isfinite(e))
    throw std::invalid_argument("tolerance must be a positive finite value");
}

Tolerance Tolerance::for_box(const Box& box) {
  return Tolerance(1e-9 * box.diagonal());
}

Segment::Segment(Point a_, Point b_, const Tolerance& tol) : a(a_), b(b_) {
  if (!finite(a) || !finite(b))
    throw std::invalid_argument("segment endpoints must be finite");
  if (distance(a, b) <= tol.eps)
    throw std::invalid_argument("degenerate segment");
}

double point_segment_distance(Point p, const Segment& s) {
  Point d = s.b - s.a;
  double len2 = dot(d, d);
  double t = dot(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

namespace {

// Perpendicular distance from p to the infinite line through a and b,
// signed: positive when p is left of a->b.
double signed_line_distance(Point a, Point b, Point p) {
  return cross(a, b, p) / distance(a, b);
}

// True when the middle point sits within eps of the line through its
// neighbors.
bool collinear_middle(Point a, Point mid, Point c, const Tolerance& tol) {
  double d = distance(a, c);
  if (d <= tol.eps) return true;
  return std::abs(cross(a, c, mid)) / d <= tol.eps;
}

double ring_signed_area(const std::vector<Point>& pts) {
  double s = 0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

std::size_t lowest_vertex_index(const std::vector<Point>& pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].y < pts[best].y ||
        (pts[i].y == pts[best].y && pts[i].x < pts[best].x))
      best = i;
  }
  return best;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices, const Tolerance& tol)
    : verts_(std::move(vertices)) {
  if (verts_.size() < 3)
    throw std::invalid_argument("convex polygon needs at least 3 vertices");
  for (const Point& p : verts_) {
    if (!finite(p))
      throw std::invalid_argument("convex polygon vertex must be finite");
  }
  // Normalize to clockwise before checking turn direction.
  if (ring_signed_area(verts_) > 0) std::reverse(verts_.begin(), verts_.end());

  std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point a = verts_[i];
    Point b = verts_[(i + 1) % n];
    Point c = verts_[(i + 2) % n];
    if (distance(a, b) <= tol.eps)
      throw std::invalid_argument("convex polygon has duplicate vertices");
    if (collinear_middle(a, b, c, tol))
      throw std::invalid_argument(
          "convex polygon has collinear consecutive vertices");
    if (cross(a, b, c) >= 0)
      throw std::invalid_argument("polygon is not convex");
  }
  std::rotate(verts_.begin(), verts_.begin() + lowest_vertex_index(verts_),
              verts_.end());
}

double ConvexPolygon::area() const { return std::abs(ring_signed_area(verts_)); }

Point ConvexPolygon::centroid() const {
  double a6 = 0, cx = 0, cy = 0;
  for (std::size_t i = 0, n = verts_.size(); i < n; ++i) {
    const Point& p = verts_[i];
    const Point& q = verts_[(i + 1) % n];
    double w = p.x * q.y - q.x * p.y;
    a6 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3 * a6), cy / (3 * a6)};
}

Region::Region(ConvexPolygon poly)
    : kind_(Kind::Polygon), poly_(std::move(poly)) {}

Region Region::degenerate(std::vector<Point> pts) {
  Region r;
  r.kind_ = Kind::Degenerate;
  r.degen_ = std::move(pts);
  return r;
}

std::span<const Point> Region::points() const {
  if (kind_ == Kind::Polygon) return poly_->vertices();
  return degen_;
}

bool Region::contains(Point p, const Tolerance& tol) const {
  switch (kind_) {
    case Kind::Empty:
      return false;
    case Kind::Degenerate:
      if (degen_.size() == 1) return distance(p, degen_[0]) <= tol.eps;
      return point_segment_distance(p, Segment(degen_[0], degen_[1], tol)) <=
             tol.eps;
    case Kind::Polygon:
      return point_in_polygon(p, *poly_, tol);
  }
  return false;
}

std::optional<ConvexPolygon> gift_wrap(std::span<const Point> points,
                                       const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("gift_wrap: no points");
  for (const Point& p : points) {
    if (!finite(p))
      throw std::invalid_argument("gift_wrap: non-finite coordinate");
  }

  // Start from the lowest point (then lowest x), which is always extreme.
  std::size_t start = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].y < points[start].y ||
        (points[i].y == points[start].y && points[i].x < points[start].x))
      start = i;
  }

  // March counterclockwise: from the current hull point pick the candidate
  // with every other point to its left, preferring the farthest of
  // near-collinear candidates so mid-edge points drop out. The ring is
  // reversed to clockwise at the end.
  std::vector<Point> hull;
  std::size_t cur = start;
  for (std::size_t guard = 0; guard <= points.size(); ++guard) {
    hull.push_back(points[cur]);
    std::size_t next = cur;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == cur) continue;
      if (next == cur) {
        if (distance(points[i], points[cur]) > tol.eps) next = i;
        continue;
      }
      double turn = cross(points[cur], points[next], points[i]);
      double base = distance(points[cur], points[next]);
      if (turn < -base * tol.eps) {
        next = i;  // i is right of cur->next: hull turns through i
      } else if (std::abs(turn) <= base * tol.eps &&
                 distance(points[cur], points[i]) >
                     distance(points[cur], points[next])) {
        next = i;  // collinear: keep the far endpoint only
      }
    }
    if (next == cur) return std::nullopt;  // all points coincide
    if (next == start) break;
    cur = next;
    if (guard == points.size()) return std::nullopt;  // degenerate input
  }

  if (hull.size() < 3) return std::nullopt;
  std::reverse(hull.begin(), hull.end());
  return ConvexPolygon(std::move(hull), tol);
}

void clip_tagged_ring(TaggedRing& ring, const HalfPlane& hp, int new_edge_tag,
                      const Tolerance& tol, TaggedRing& scratch) {
  std::size_t n = ring.size();
  if (n == 0) return;

  if (n == 1) {
    if (hp.signed_distance(ring.pts[0]) > tol.eps) {
      ring.pts.clear();
      ring.tags.clear();
    }
    return;
  }

  if (n == 2) {
    // Degenerate ring: clip the segment between the two points.
    Point a = ring.pts[0], b = ring.pts[1];
    double da = hp.signed_distance(a), db = hp.signed_distance(b);
    bool ia = da <= tol.eps, ib = db <= tol.eps;
    if (ia && ib) return;
    if (!ia && !ib) {
      ring.pts.clear();
      ring.tags.clear();
      return;
    }
    Point x = a + (b - a) * (da / (da - db));
    if (!ia) ring.pts[0] = x;
    if (!ib) ring.pts[1] = x;
    dedup_ring(ring, tol);
    return;
  }

  scratch.pts.clear();
  scratch.tags.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Point a = ring.pts[(i + n - 1) % n];
    Point b = ring.pts[i];
    int tag = ring.tags[i];
    double da = hp.signed_distance(a);
    double db = hp.signed_distance(b);
    bool ia = da <= tol.eps, ib = db <= tol.eps;
    if (ia && ib) {
      scratch.pts.push_back(b);
      scratch.tags.push_back(tag);
    } else if (ia && !ib) {
      scratch.pts.push_back(a + (b - a) * (da / (da - db)));
      scratch.tags.push_back(tag);
    } else if (!ia && ib) {
      scratch.pts.push_back(a + (b - a) * (da / (da - db)));
      scratch.tags.push_back(new_edge_tag);
      scratch.pts.push_back(b);
      scratch.tags.push_back(tag);
    }
  }
  ring.pts.swap(scratch.pts);
  ring.tags.swap(scratch.tags);
  dedup_ring(ring, tol);
}

void dedup_ring(TaggedRing& ring, const Tolerance& tol) {
  while (ring.size() > 1) {
    bool changed = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      std::size_t j = (i + 1) % ring.size();
      if (distance(ring.pts[i], ring.pts[j]) <= tol.eps) {
        // Dropping pts[j] removes the zero-length edge arriving at it.
        ring.pts.erase(ring.pts.begin() + static_cast<std::ptrdiff_t>(j));
        ring.tags.erase(ring.tags.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
}

void remove_collinear_middles(TaggedRing& ring, const Tolerance& tol) {
  while (ring.size() >= 3) {
    bool changed = false;
    std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      Point a = ring.pts[(i + n - 1) % n];
      Point m = ring.pts[i];
      Point c = ring.pts[(i + 1) % n];
      if (collinear_middle(a, m, c, tol)) {
        ring.pts.erase(ring.pts.begin() + static_cast<std::ptrdiff_t>(i));
        ring.tags.erase(ring.tags.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
}

namespace {

// Shared by clip and intersect: reduce a clipped ring to a polygon when it
// still has area, otherwise report its surviving contact points.
Region ring_to_region(TaggedRing& ring, const Tolerance& tol) {
  dedup_ring(ring, tol);
  if (ring.empty()) return Region{};

  // Strip collinear middles; what remains are the extreme points.
  remove_collinear_middles(ring, tol);

  if (ring.size() >= 3)
    return Region(ConvexPolygon(std::move(ring.pts), tol));
  // A contact segment keeps its two farthest points.
  if (ring.size() == 2 && distance(ring.pts[0], ring.pts[1]) <= tol.eps)
    ring.pts.pop_back();
  return Region::degenerate(std::move(ring.pts));
}

TaggedRing ring_from_polygon(const ConvexPolygon& poly) {
  TaggedRing ring;
  ring.pts = poly.vertices();
  ring.tags.assign(ring.pts.size(), kUntaggedEdge);
  return ring;
}

}  // namespace

std::optional<ConvexPolygon> clip_polygon_by_halfplane(
    const ConvexPolygon& poly, const HalfPlane& boundary,
    const Tolerance& tol) {
  TaggedRing ring = ring_from_polygon(poly);
  TaggedRing scratch;
  clip_tagged_ring(ring, boundary, kUntaggedEdge, tol, scratch);
  Region r = ring_to_region(ring, tol);
  if (!r.is_polygon()) return std::nullopt;
  return r.polygon();
}

Region intersect_convex(const ConvexPolygon& p, const ConvexPolygon& q,
                        const Tolerance& tol) {
  TaggedRing ring = ring_from_polygon(p);
  TaggedRing scratch;
  const std::vector<Point>& qv = q.vertices();
  for (std::size_t i = 0, n = qv.size(); i < n && !ring.empty(); ++i) {
    HalfPlane hp = HalfPlane::keep_right_of(qv[i], qv[(i + 1) % n]);
    clip_tagged_ring(ring, hp, kUntaggedEdge, tol, scratch);
  }
  return ring_to_region(ring, tol);
}

bool segment_intersects_segment(const Segment& s1, const Segment& s2,
                                const Tolerance& tol) {
  double d1 = cross(s1.a, s1.b, s2.a);
  double d2 = cross(s1.a, s1.b, s2.b);
  double d3 = cross(s2.a, s2.b, s1.a);
  double d4 = cross(s2.a, s2.b, s1.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;  // proper crossing
  double m = point_segment_distance(s2.a, s1);
  m = std::min(m, point_segment_distance(s2.b, s1));
  m = std::min(m, point_segment_distance(s1.a, s2));
  m = std::min(m, point_segment_distance(s1.b, s2));
  return m <= tol.eps;
}

bool point_in_polygon(Point pt, const ConvexPolygon& poly,
                      const Tolerance& tol) {
  const std::vector<Point>& v = poly.vertices();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    // Clockwise ring: interior lies right of every edge.
    if (signed_line_distance(v[i], v[(i + 1) % n], pt) > tol.eps) return false;
  }
  return true;
}

double angle_at(Point vertex, Point ray_to_1, Point ray_to_2,
                const Tolerance& tol) {
  Point u = ray_to_1 - vertex;
  Point v = ray_to_2 - vertex;
  if (norm(u) <= tol.eps || norm(v) <= tol.eps)
    throw std::invalid_argument("angle_at: ray endpoint coincides with vertex");
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace mabravo
