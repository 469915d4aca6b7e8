#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace mabravo {

struct Point {
  double x{};
  double y{};
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return a * s; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
// Cross product of (a-o) and (b-o): positive when o->a->b turns left.
inline double cross(Point o, Point a, Point b) { return cross(a - o, b - o); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline bool finite(Point a) { return std::isfinite(a.x) && std::isfinite(a.y); }

double distance(Point p, Point q);

// Axis-aligned world box. All diagrams are clipped to one of these.
struct Box {
  double min_x{}, min_y{}, max_x{}, max_y{};

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
  double area() const { return width() * height(); }
  bool contains_strict(Point p) const {
    return p.x > min_x && p.x < max_x && p.y > min_y && p.y < max_y;
  }
};

// Absolute geometric tolerance in world units. One value is derived from the
// world box and threaded through every predicate of a simulation, so all
// membership and intersection tests agree on what "equal" means.
struct Tolerance {
  double eps;

  explicit Tolerance(double e);
  // 1e-9 of the box diagonal: coordinates live in a known bounded box, so a
  // scaled absolute tolerance is predictable.
  static Tolerance for_box(const Box& box);
};

// Segment between two distinct endpoints.
struct Segment {
  Point a;
  Point b;

  Segment(Point a_, Point b_, const Tolerance& tol);
  Point midpoint() const { return (a + b) * 0.5; }
  double length() const { return distance(a, b); }
};

double point_segment_distance(Point p, const Segment& s);

// Half-plane described by a point on its boundary line and a normal pointing
// away from the kept side. signed_distance(p) <= eps means p is kept.
struct HalfPlane {
  Point anchor;
  Point normal;  // need not be unit length

  double signed_distance(Point p) const {
    return dot(p - anchor, normal) / norm(normal);
  }
  // Perpendicular bisector keeping the side of `keep`.
  static HalfPlane keep_closer_to(Point keep, Point other) {
    return {(keep + other) * 0.5, other - keep};
  }
  // Directed boundary line a->b, keeping everything to its right.
  static HalfPlane keep_right_of(Point a, Point b) {
    Point t = b - a;
    return {a, Point{-t.y, t.x}};
  }
};

// Convex polygon stored as a clockwise vertex ring starting from the
// lexicographically smallest vertex (lowest y, then lowest x). Construction
// validates convexity, rejects consecutive collinear triples under the
// tolerance, and normalizes orientation and starting vertex.
class ConvexPolygon {
 public:
  ConvexPolygon(std::vector<Point> vertices, const Tolerance& tol);

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  Point vertex(std::size_t i) const { return verts_[i % verts_.size()]; }
  double area() const;
  Point centroid() const;

 private:
  std::vector<Point> verts_;
};

// Intersection of convex sets: nothing, a single contact point, a contact
// segment, or a proper polygon. Degenerate contacts count as non-empty under
// the closed-set semantics used throughout.
class Region {
 public:
  enum class Kind { Empty, Degenerate, Polygon };

  Region() = default;
  explicit Region(ConvexPolygon poly);
  static Region degenerate(std::vector<Point> pts);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_polygon() const { return kind_ == Kind::Polygon; }
  const ConvexPolygon& polygon() const { return *poly_; }
  // Extreme points: polygon vertices, the degenerate contact points, or
  // nothing when empty.
  std::span<const Point> points() const;
  bool contains(Point p, const Tolerance& tol) const;
  double area() const { return is_polygon() ? poly_->area() : 0.0; }

 private:
  Kind kind_ = Kind::Empty;
  std::optional<ConvexPolygon> poly_;
  std::vector<Point> degen_;
};

// Convex hull in clockwise order. Interior points and collinear mid-edge
// points are excluded. Fewer than 3 distinct non-collinear points yield
// nullopt: a degenerate hull is not a usable region.
std::optional<ConvexPolygon> gift_wrap(std::span<const Point> points,
                                       const Tolerance& tol);

std::optional<ConvexPolygon> clip_polygon_by_halfplane(
    const ConvexPolygon& poly, const HalfPlane& boundary, const Tolerance& tol);

Region intersect_convex(const ConvexPolygon& p, const ConvexPolygon& q,
                        const Tolerance& tol);

// Closed-segment intersection test: touching endpoints count.
bool segment_intersects_segment(const Segment& s1, const Segment& s2,
                                const Tolerance& tol);

// Closed membership: the boundary belongs to the polygon.
bool point_in_polygon(Point pt, const ConvexPolygon& poly,
                      const Tolerance& tol);

// Unsigned angle in [0, pi] between rays vertex->ray_to_1 and
// vertex->ray_to_2. Ray endpoints must be distinct from the vertex.
double angle_at(Point vertex, Point ray_to_1, Point ray_to_2,
                const Tolerance& tol);

// --- edge-tagged clipping -------------------------------------------------
//
// Ring of points with one tag per edge; tags[k] labels the edge arriving at
// pts[k] from pts[k-1]. Folding half-plane cuts over a tagged ring tracks
// which cut produced each surviving edge, which is how cells learn their
// neighbor per side and how cell/AoI intersections tell cell sides from AoI
// edges apart.

constexpr int kUntaggedEdge = -1;

struct TaggedRing {
  std::vector<Point> pts;
  std::vector<int> tags;

  bool empty() const { return pts.empty(); }
  std::size_t size() const { return pts.size(); }
};

// Clips `ring` in place to the kept side of `hp`; edges newly created along
// the cut line get `new_edge_tag`. `scratch` is reused storage between calls.
void clip_tagged_ring(TaggedRing& ring, const HalfPlane& hp, int new_edge_tag,
                      const Tolerance& tol, TaggedRing& scratch);

// Drops consecutive duplicate points (and the zero-length edges between
// them) from a ring, cyclically.
void dedup_ring(TaggedRing& ring, const Tolerance& tol);

// Removes ring points lying within tolerance of the line through their
// neighbors, together with the edge arriving at them.
void remove_collinear_middles(TaggedRing& ring, const Tolerance& tol);

}  // namespace mabravo
