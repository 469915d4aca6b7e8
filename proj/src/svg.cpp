#include "mabravo/svg.hpp"

#include <cstdarg>
#include <cstdio>

namespace mabravo {

namespace {

constexpr double kViewSize = 1000.0;

struct Mapper {
  const Box& world;
  double scale_x, scale_y;

  explicit Mapper(const Box& w)
      : world(w),
        scale_x(kViewSize / w.width()),
        scale_y(kViewSize / w.height()) {}

  // World runs y-up, SVG y-down.
  double x(Point p) const { return (p.x - world.min_x) * scale_x; }
  double y(Point p) const { return (world.max_y - p.y) * scale_y; }
};

void append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

void append_polygon(std::string& out, const Mapper& m,
                    const ConvexPolygon& poly, const char* stroke,
                    double stroke_width) {
  out += "<polygon points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out += ' ';
    append(out, "%.2f,%.2f", m.x(poly.vertex(i)), m.y(poly.vertex(i)));
  }
  append(out, "\" fill=\"none\" stroke=\"%s\" stroke-width=\"%.1f\"/>\n",
         stroke, stroke_width);
}

}  // namespace

std::string render_scene_svg(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi,
                             const UnicastRun& unicast,
                             const std::set<SiteId>& members) {
  Mapper m(diagram.world());
  std::string out;
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
         "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
         kViewSize, kViewSize, kViewSize, kViewSize);
  append(out, "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
         kViewSize, kViewSize);

  // Cells first, so route markers draw on top. Green inside the AoI, blue
  // outside, matching the batch checks' membership.
  for (const Site& s : diagram.sites()) {
    const char* color = members.contains(s.id) ? "green" : "blue";
    append_polygon(out, m, diagram.cell(s.id).polygon, color, 1.0);
  }
  for (const Site& s : diagram.sites())
    append(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"black\"/>\n",
           m.x(s.position), m.y(s.position));

  append_polygon(out, m, aoi.region, "red", 2.0);

  append(out,
         "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
         "stroke=\"magenta\" stroke-width=\"2\"/>\n",
         m.x(unicast.source), m.y(unicast.source), m.x(unicast.dest),
         m.y(unicast.dest));

  for (SiteId s : unicast.route) {
    Point p = diagram.site(s).position;
    append(out,
           "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"8\" fill=\"none\" "
           "stroke=\"cyan\" stroke-width=\"2\"/>\n",
           m.x(p), m.y(p));
  }

  out += "</svg>\n";
  return out;
}

}  // namespace mabravo
