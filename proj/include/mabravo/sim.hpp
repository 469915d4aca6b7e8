#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mabravo/aoi.hpp"
#include "mabravo/oracle.hpp"
#include "mabravo/routing.hpp"
#include "mabravo/voronoi.hpp"

namespace mabravo {

// Deterministic generator (splitmix64). Doubles come from the top 53 bits,
// so identical seeds replay identical streams on any platform, independent
// of the standard library's distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_unit();  // [0, 1)
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }
  // Stream seed for substream `index` of `master`: networks depend only on
  // (master seed, network index), never on generation order.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t index);

 private:
  std::uint64_t state_;
};

struct ExperimentConfig {
  unsigned num_sites = 100;
  unsigned aoi_seed_points = 10;
  unsigned routes_per_network = 100;
  unsigned num_networks = 100;
  std::uint64_t master_seed = 1;
  Box world{0.0, 0.0, 1000.0, 1000.0};
  std::optional<double> epsilon;  // unset: 1e-9 of the world box diagonal
  bool verify = true;

  void validate() const;  // throws std::invalid_argument
  Tolerance tolerance() const {
    return epsilon ? Tolerance(*epsilon) : Tolerance::for_box(world);
  }
};

// Metrics and verification outcome of one routing process: a unicast from a
// random source point to a random destination point, followed by an
// AoI-cast rooted at that destination.
struct RunRecord {
  unsigned network_index = 0;
  unsigned route_index = 0;
  SiteId start_site{};
  SiteId end_site_or_root{};
  unsigned total_sites = 0;
  unsigned aoi_sites = 0;
  unsigned oracle_unicast_hops = 0;
  double oracle_avg_depth = 0;
  double mabravo_r_avg_depth = 0;
  unsigned mabravo_d_hops = 0;
  unsigned messages_sent = 0;
  std::vector<std::string> violations;  // named check failures; empty = pass

  bool checks_passed() const { return violations.empty(); }
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Empirical distribution: evaluate(x) is the fraction of samples <= x.
class Cdf {
 public:
  explicit Cdf(std::vector<double> samples);  // at least one sample
  double evaluate(double x) const;
  // Smallest sample v with evaluate(v) >= p.
  double quantile(double p) const;
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;  // sorted
};

Cdf build_cdf(std::vector<double> samples);

struct GeneratedNetwork {
  VoronoiDiagram diagram;
  AreaOfInterest aoi;
};

// Sites uniform in the world box; AoI seed points uniform in the centered
// half-size sub-box, hulled. Redraws a degenerate AoI hull from the same
// stream a bounded number of times. Deterministic for a given stream state.
GeneratedNetwork generate_network(RandomStream& rng,
                                  const ExperimentConfig& cfg);

struct UnicastRun {
  Point source;
  Point dest;
  std::vector<SiteId> route;  // visited sites, starting at the source owner
  unsigned hops = 0;          // forwards taken
  bool failed = false;        // hop budget ran out before delivery
};

// Iterates unicast steps from the owner of `source`, each on a freshly
// built local vision, until the message is delivered or the budget (default
// one hop per site) runs out.
UnicastRun run_unicast(const VoronoiDiagram& diagram,
                       const AreaOfInterest& aoi, Point source, Point dest,
                       std::optional<unsigned> ttl = std::nullopt);

struct AoicastRun {
  SiteId root{};
  Point root_point;
  std::map<SiteId, unsigned> receive_count;
  std::map<SiteId, SiteId> parent;   // tree edges, child -> parent
  std::map<SiteId, unsigned> depth;  // root at 0
  unsigned messages_sent = 0;
  std::vector<std::string> violations;  // duplicates / out-of-AoI deliveries
};

// Fans the message out from the owner of `root_point`: every receiving site
// computes its children on a freshly built local vision. Every transmission
// is counted; duplicate or out-of-AoI deliveries are recorded as violations
// and not expanded further.
AoicastRun run_aoicast(const VoronoiDiagram& diagram,
                       const AreaOfInterest& aoi, Point root_point,
                       std::optional<unsigned> ttl = std::nullopt);

// Named correctness checks over one completed process:
//   exactly-once-delivery   every in-AoI site got the message exactly once
//   no-outside-delivery     no other site got it
//   message-count-optimal   transmissions = in-AoI sites - 1
//   duality-consistency     tree edges equal the reversed unicast reference
//   unicast-monotonicity    every unicast hop moved strictly closer to dest
//   unicast-in-aoi-confinement  every unicast relay is in the AoI
// Failures are results, not errors.
std::vector<CheckResult> verify_run(const UnicastRun& unicast,
                                    const AoicastRun& aoicast,
                                    const VoronoiDiagram& diagram,
                                    const AreaOfInterest& aoi,
                                    const std::set<SiteId>* members = nullptr);

struct ProcessArtifacts {
  UnicastRun unicast;
  AoicastRun aoicast;
  RunRecord record;
};

// One full routing process over an already generated network. Route
// endpoints are drawn from `rng` by rejection inside the AoI.
ProcessArtifacts run_process_full(const GeneratedNetwork& net,
                                  RandomStream& rng, unsigned network_index,
                                  unsigned route_index, bool verify,
                                  const std::set<SiteId>& members);
RunRecord run_process(const GeneratedNetwork& net, RandomStream& rng,
                      unsigned network_index, unsigned route_index,
                      bool verify, const std::set<SiteId>& members);

struct BatchResult {
  ExperimentConfig config;
  std::vector<RunRecord> records;  // ordered by (network, route)

  bool all_checks_passed() const;
};

// Runs the whole experiment sweep. Networks are independent and execute in
// parallel (OpenMP); records are merged in (network, route) order, so the
// output does not depend on scheduling.
BatchResult run_batch(const ExperimentConfig& cfg);

// CSV rows (stable column order, one per process) followed by a trailing
// '#'-prefixed summary block with p10/p50/p90 of the hop and depth metrics.
// Identical configurations produce byte-identical output.
std::string write_csv(const BatchResult& result, bool include_summary = true);

}  // namespace mabravo
