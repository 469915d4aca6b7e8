#pragma once

#include <set>
#include <string>

#include "mabravo/aoi.hpp"
#include "mabravo/sim.hpp"
#include "mabravo/voronoi.hpp"

namespace mabravo {

// Self-contained SVG view of one routing process: cell borders green for
// in-AoI sites and blue for the rest, the AoI border red, the
// source-to-destination segment magenta, and the sites the unicast touched
// circled cyan. Output is byte-stable for identical inputs.
std::string render_scene_svg(const VoronoiDiagram& diagram,
                             const AreaOfInterest& aoi,
                             const UnicastRun& unicast,
                             const std::set<SiteId>& members);

}  // namespace mabravo
