#pragma once

// Shared helpers for the test suites: independent geometry oracles and
// seeded instance generators. Everything here must stay independent of the
// implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mabravo/geometry.hpp"
#include "mabravo/sim.hpp"
#include "mabravo/voronoi.hpp"

namespace testutil {

using mabravo::Box;
using mabravo::Point;
using mabravo::RandomStream;
using mabravo::Site;
using mabravo::SiteId;

inline std::vector<Point> random_points(RandomStream& rng, std::size_t n,
                                        const Box& box) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({rng.next_in(box.min_x, box.max_x),
                   rng.next_in(box.min_y, box.max_y)});
  return pts;
}

inline std::vector<Site> random_sites(RandomStream& rng, std::size_t n,
                                      const Box& box) {
  std::vector<Site> sites;
  sites.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    sites.push_back(Site{SiteId{static_cast<std::uint32_t>(i)},
                         {rng.next_in(box.min_x, box.max_x),
                          rng.next_in(box.min_y, box.max_y)}});
  return sites;
}

// O(n^3) hull oracle for points in general position (no collinear triples):
// a directed edge (i, j) is on the clockwise hull exactly when every other
// point lies strictly to its right. Returns the hull vertex set, unordered.
inline std::vector<Point> brute_force_hull(const std::vector<Point>& pts) {
  std::vector<Point> hull;
  auto on_hull = [&](std::size_t idx) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == idx) continue;
      bool all_right = true;
      for (std::size_t k = 0; k < pts.size() && all_right; ++k) {
        if (k == i || k == idx) continue;
        if (mabravo::cross(pts[i], pts[idx], pts[k]) >= 0) all_right = false;
      }
      if (all_right) return true;  // edge i -> idx certifies idx
    }
    return false;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (on_hull(i)) hull.push_back(pts[i]);
  return hull;
}

// Exact vertex-set equality; hull vertices are input points passed through
// unchanged, so no tolerance is needed.
inline bool same_point_set(std::vector<Point> a, std::vector<Point> b) {
  auto lex = [](const Point& p, const Point& q) {
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
  return true;
}

// Crossing-number membership oracle, independent of the convex one under
// test. Exact arithmetic, intended for points away from the boundary.
inline bool winding_contains(const std::vector<Point>& poly, Point p) {
  bool inside = false;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

inline double min_edge_distance(const std::vector<Point>& poly, Point p,
                                const mabravo::Tolerance& tol) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    mabravo::Segment e(poly[i], poly[(i + 1) % n], tol);
    best = std::min(best, mabravo::point_segment_distance(p, e));
  }
  return best;
}

inline Box bounding_box(const std::vector<Point>& pts) {
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Point& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

// Monte-Carlo area of the set where pred holds, sampled over `box`.
template <typename Pred>
double monte_carlo_area(RandomStream& rng, const Box& box, std::size_t samples,
                        Pred pred) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Point p{rng.next_in(box.min_x, box.max_x),
            rng.next_in(box.min_y, box.max_y)};
    if (pred(p)) ++hits;
  }
  return box.area() * static_cast<double>(hits) /
         static_cast<double>(samples);
}

// Uniform sample inside a convex polygon: pick a fan triangle by area, then
// a uniform point inside it.
inline Point sample_in_polygon(RandomStream& rng,
                               const mabravo::ConvexPolygon& poly) {
  const std::vector<Point>& v = poly.vertices();
  std::vector<double> cumulative;
  double total = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    total += std::abs(mabravo::cross(v[0], v[i], v[i + 1])) * 0.5;
    cumulative.push_back(total);
  }
  double pick = rng.next_unit() * total;
  std::size_t t = 0;
  while (t + 1 < cumulative.size() && cumulative[t] < pick) ++t;
  const Point& a = v[0];
  const Point& b = v[t + 1];
  const Point& c = v[t + 2];
  double r1 = std::sqrt(rng.next_unit());
  double r2 = rng.next_unit();
  return a * (1 - r1) + b * (r1 * (1 - r2)) + c * (r1 * r2);
}

}  // namespace testutil
