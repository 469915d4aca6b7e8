#pragma once

#include <stdexcept>
#include <string>

namespace mabravo {

// Raised when a routing step is invoked outside its contract, e.g. the
// stepping site's cell does not intersect the AoI or the destination point
// lies outside the AoI.
class ProtocolMisuse : public std::logic_error {
 public:
  explicit ProtocolMisuse(const std::string& what) : std::logic_error(what) {}
};

// Raised when geometry that must hold on a consistent static overlay does
// not, e.g. a degenerate (cocircular) vertex, an asymmetric neighbor
// relation, or a routing fallback that finds no crossing side. On live
// networks this signals stale neighbor data.
class TopologyInconsistency : public std::runtime_error {
 public:
  explicit TopologyInconsistency(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace mabravo
