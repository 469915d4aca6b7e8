#include "mabravo/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <exception>
#include <stdexcept>

#include "mabravo/errors.hpp"

namespace mabravo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::next_u64() { return splitmix64(state_); }

double RandomStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::derive(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a + index;
  return splitmix64(s);
}

void ExperimentConfig::validate() const {
  if (num_sites < 1 || aoi_seed_points < 1 || routes_per_network < 1 ||
      num_networks < 1)
    throw std::invalid_argument("experiment counts must all be at least 1");
  if (!(world.width() > 0) || !(world.height() > 0))
    throw std::invalid_argument("degenerate world box");
}

Cdf::Cdf(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty())
    throw std::invalid_argument("a CDF needs at least one sample");
  std::sort(samples_.begin(), samples_.end());
}

double Cdf::evaluate(double x) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double Cdf::quantile(double p) const {
  if (p <= 0) return samples_.front();
  auto n = static_cast<double>(samples_.size());
  auto k = static_cast<std::size_t>(std::ceil(p * n));
  if (k == 0) k = 1;
  if (k > samples_.size()) k = samples_.size();
  return samples_[k - 1];
}

Cdf build_cdf(std::vector<double> samples) { return Cdf(std::move(samples)); }

namespace {

Point random_point_strictly_inside(RandomStream& rng, const Box& box) {
  while (true) {
    Point p{rng.next_in(box.min_x, box.max_x),
            rng.next_in(box.min_y, box.max_y)};
    if (box.contains_strict(p)) return p;
  }
}

constexpr int kMaxAoiRedraws = 64;
constexpr int kMaxPointRejections = 4096;
constexpr int kMaxNetworkRedraws = 16;

Point random_point_in_aoi(RandomStream& rng, const AreaOfInterest& aoi,
                          const Tolerance& tol) {
  const std::vector<Point>& v = aoi.region.vertices();
  Box bbox{v[0].x, v[0].y, v[0].x, v[0].y};
  for (const Point& p : v) {
    bbox.min_x = std::min(bbox.min_x, p.x);
    bbox.min_y = std::min(bbox.min_y, p.y);
    bbox.max_x = std::max(bbox.max_x, p.x);
    bbox.max_y = std::max(bbox.max_y, p.y);
  }
  for (int tries = 0; tries < kMaxPointRejections; ++tries) {
    Point p{rng.next_in(bbox.min_x, bbox.max_x),
            rng.next_in(bbox.min_y, bbox.max_y)};
    if (point_in_polygon(p, aoi.region, tol)) return p;
  }
  throw std::runtime_error("could not sample a point inside the AoI");
}

}  // namespace

GeneratedNetwork generate_network(RandomStream& rng,
                                  const ExperimentConfig& cfg) {
  cfg.validate();
  Tolerance tol = cfg.tolerance();

  // AoI seeds stay in the centered half-size sub-box, keeping the AoI far
  // from the world boundary so clipped cells never distort it.
  Box aoi_box{cfg.world.min_x + 0.25 * cfg.world.width(),
              cfg.world.min_y + 0.25 * cfg.world.height(),
              cfg.world.min_x + 0.75 * cfg.world.width(),
              cfg.world.min_y + 0.75 * cfg.world.height()};

  for (int attempt = 0; attempt < kMaxNetworkRedraws; ++attempt) {
    std::vector<Site> sites;
    sites.reserve(cfg.num_sites);
    for (unsigned i = 0; i < cfg.num_sites; ++i)
      sites.push_back(Site{SiteId{i},
                           random_point_strictly_inside(rng, cfg.world)});

    std::optional<AreaOfInterest> aoi;
    for (int redraw = 0; redraw < kMaxAoiRedraws && !aoi; ++redraw) {
      std::vector<Point> seeds;
      seeds.reserve(cfg.aoi_seed_points);
      for (unsigned i = 0; i < cfg.aoi_seed_points; ++i)
        seeds.push_back(random_point_strictly_inside(rng, aoi_box));
      try {
        aoi = make_aoi(seeds, tol);
      } catch (const std::invalid_argument&) {
        // degenerate hull: draw a fresh seed set from the same stream
      }
    }
    if (!aoi)
      throw std::runtime_error(
          "could not draw a non-degenerate AoI hull");

    try {
      return GeneratedNetwork{build_diagram(std::move(sites), cfg.world, tol),
                              std::move(*aoi)};
    } catch (const std::invalid_argument&) {
      // colliding site positions: redraw the whole network
    }
  }
  throw std::runtime_error("could not generate a valid network");
}

UnicastRun run_unicast(const VoronoiDiagram& diagram,
                       const AreaOfInterest& aoi, Point source, Point dest,
                       std::optional<unsigned> ttl) {
  UnicastRun run{source, dest, {}, 0, false};
  Message msg{dest, aoi,
              ttl ? *ttl : static_cast<unsigned>(diagram.sites().size()),
              {}};

  SiteId cur = diagram.owner_of(source);
  run.route.push_back(cur);
  while (true) {
    UnicastDecision step = mabravo_d_step(local_vision(diagram, cur), dest,
                                          aoi);
    if (step.is_deliver()) return run;
    if (msg.ttl == 0) {
      run.failed = true;  // never forward an exhausted message
      return run;
    }
    --msg.ttl;
    cur = step.next();
    run.route.push_back(cur);
    ++run.hops;
  }
}

AoicastRun run_aoicast(const VoronoiDiagram& diagram,
                       const AreaOfInterest& aoi, Point root_point,
                       std::optional<unsigned> ttl) {
  AoicastRun run;
  run.root_point = root_point;
  run.root = diagram.owner_of(root_point);
  unsigned budget =
      ttl ? *ttl : static_cast<unsigned>(diagram.sites().size());

  run.receive_count[run.root] = 1;
  run.depth[run.root] = 0;
  std::deque<SiteId> pending{run.root};
  while (!pending.empty()) {
    SiteId cur = pending.front();
    pending.pop_front();
    if (run.depth[cur] >= budget) {
      run.violations.push_back("ttl-exhausted at site " +
                               std::to_string(cur.value));
      continue;
    }
    for (SiteId child :
         mabravo_r_children(local_vision(diagram, cur), root_point, aoi)) {
      ++run.messages_sent;
      unsigned& count = ++run.receive_count[child];
      if (count > 1) {
        run.violations.push_back("duplicate delivery to site " +
                                 std::to_string(child.value));
        continue;  // recorded, but a duplicate is not expanded again
      }
      run.parent[child] = cur;
      run.depth[child] = run.depth[cur] + 1;
      if (!site_in_aoi(diagram, aoi, child)) {
        run.violations.push_back("delivery outside the AoI to site " +
                                 std::to_string(child.value));
        continue;  // an out-of-AoI receiver cannot step further
      }
      pending.push_back(child);
    }
  }
  return run;
}

std::vector<CheckResult> verify_run(const UnicastRun& unicast,
                                    const AoicastRun& aoicast,
                                    const VoronoiDiagram& diagram,
                                    const AreaOfInterest& aoi,
                                    const std::set<SiteId>* members_in) {
  std::set<SiteId> scanned;
  if (!members_in) scanned = aoi_members(diagram, aoi);
  const std::set<SiteId>& members = members_in ? *members_in : scanned;

  std::vector<CheckResult> results;
  auto add = [&](std::string name, bool ok, std::string detail) {
    results.push_back(CheckResult{std::move(name), ok, std::move(detail)});
  };

  {
    bool ok = true;
    std::string detail;
    for (SiteId s : members) {
      auto it = aoicast.receive_count.find(s);
      unsigned got = it == aoicast.receive_count.end() ? 0 : it->second;
      if (got != 1) {
        ok = false;
        detail = "site " + std::to_string(s.value) + " received " +
                 std::to_string(got) + " times";
        break;
      }
    }
    add("exactly-once-delivery", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& [s, count] : aoicast.receive_count) {
      if (!members.contains(s)) {
        ok = false;
        detail = "site " + std::to_string(s.value) + " is outside the AoI";
        break;
      }
    }
    add("no-outside-delivery", ok, detail);
  }

  {
    unsigned expect = static_cast<unsigned>(members.size()) - 1;
    bool ok = aoicast.messages_sent == expect;
    add("message-count-optimal", ok,
        ok ? "" : std::to_string(aoicast.messages_sent) + " messages for " +
                      std::to_string(members.size()) + " in-AoI sites");
  }

  {
    bool ok = true;
    std::string detail;
    try {
      std::map<SiteId, SiteId> expect =
          duality_reference(diagram, aoi, members, aoicast.root_point);
      if (expect != aoicast.parent) {
        ok = false;
        detail = "tree does not match the reversed unicast reference";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    add("duality-consistency", ok, detail);
  }

  {
    bool ok = !unicast.failed;
    std::string detail = unicast.failed ? "hop budget exhausted" : "";
    for (std::size_t i = 0; ok && i + 1 < unicast.route.size(); ++i) {
      double before =
          distance(diagram.site(unicast.route[i]).position, unicast.dest);
      double after =
          distance(diagram.site(unicast.route[i + 1]).position, unicast.dest);
      if (!(after < before)) {
        ok = false;
        detail = "hop " + std::to_string(i) + " did not move closer";
      }
    }
    add("unicast-monotonicity", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (SiteId s : unicast.route) {
      if (!members.contains(s)) {
        ok = false;
        detail = "relay " + std::to_string(s.value) + " is outside the AoI";
        break;
      }
    }
    add("unicast-in-aoi-confinement", ok, detail);
  }

  return results;
}

ProcessArtifacts run_process_full(const GeneratedNetwork& net,
                                  RandomStream& rng, unsigned network_index,
                                  unsigned route_index, bool verify,
                                  const std::set<SiteId>& members) {
  const VoronoiDiagram& dg = net.diagram;
  const Tolerance& tol = dg.tolerance();

  Point source = random_point_in_aoi(rng, net.aoi, tol);
  Point dest = random_point_in_aoi(rng, net.aoi, tol);

  UnicastRun unicast = run_unicast(dg, net.aoi, source, dest);
  AoicastRun aoicast = run_aoicast(dg, net.aoi, dest);

  RunRecord rec;
  rec.network_index = network_index;
  rec.route_index = route_index;
  rec.start_site = unicast.route.front();
  rec.end_site_or_root = aoicast.root;
  rec.total_sites = static_cast<unsigned>(dg.sites().size());
  rec.aoi_sites = static_cast<unsigned>(members.size());
  rec.mabravo_d_hops = unicast.hops;
  rec.messages_sent = aoicast.messages_sent;

  rec.oracle_unicast_hops =
      oracle_unicast_hops(dg, members, rec.start_site, unicast.route.back());

  OracleTree otree = oracle_aoicast_tree(dg, members, aoicast.root);
  double osum = 0;
  for (const auto& [s, depth] : otree.depth) osum += depth;
  rec.oracle_avg_depth = osum / static_cast<double>(otree.depth.size());

  double msum = 0;
  for (const auto& [s, depth] : aoicast.depth) msum += depth;
  rec.mabravo_r_avg_depth =
      msum / static_cast<double>(aoicast.depth.size());

  rec.violations = aoicast.violations;
  if (unicast.failed) rec.violations.push_back("unicast-ttl-exhausted");
  if (verify) {
    for (const CheckResult& c :
         verify_run(unicast, aoicast, dg, net.aoi, &members)) {
      if (!c.passed)
        rec.violations.push_back(c.name +
                                 (c.detail.empty() ? "" : ": " + c.detail));
    }
  }
  return ProcessArtifacts{std::move(unicast), std::move(aoicast),
                          std::move(rec)};
}

RunRecord run_process(const GeneratedNetwork& net, RandomStream& rng,
                      unsigned network_index, unsigned route_index,
                      bool verify, const std::set<SiteId>& members) {
  return run_process_full(net, rng, network_index, route_index, verify,
                          members)
      .record;
}

bool BatchResult::all_checks_passed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return r.checks_passed(); });
}

BatchResult run_batch(const ExperimentConfig& cfg) {
  cfg.validate();
  BatchResult result{cfg, {}};

  const auto nets = static_cast<long long>(cfg.num_networks);
  std::vector<std::vector<RunRecord>> per_network(cfg.num_networks);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic)
  for (long long ni = 0; ni < nets; ++ni) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      auto n = static_cast<unsigned>(ni);
      RandomStream rng(RandomStream::derive(cfg.master_seed, n));
      GeneratedNetwork net = generate_network(rng, cfg);
      std::set<SiteId> members = aoi_members(net.diagram, net.aoi);
      auto& records = per_network[static_cast<std::size_t>(ni)];
      records.reserve(cfg.routes_per_network);
      for (unsigned r = 0; r < cfg.routes_per_network; ++r)
        records.push_back(run_process(net, rng, n, r, cfg.verify, members));
    } catch (...) {
#pragma omp critical
      {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.records.reserve(static_cast<std::size_t>(cfg.num_networks) *
                         cfg.routes_per_network);
  for (auto& records : per_network)
    for (RunRecord& r : records) result.records.push_back(std::move(r));
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string quantile_line(const char* name, std::vector<double> samples) {
  Cdf cdf = build_cdf(std::move(samples));
  char buf[160];
  std::snprintf(buf, sizeof(buf), "# %s: p10=%g p50=%g p90=%g\n", name,
                cdf.quantile(0.10), cdf.quantile(0.50), cdf.quantile(0.90));
  return buf;
}

}  // namespace

std::string write_csv(const BatchResult& result, bool include_summary) {
  std::string out =
      "network,route,start_site,end_site,total_sites,aoi_sites,"
      "oracle_unicast_hops,oracle_avg_depth,mabravo_r_avg_depth,"
      "mabravo_d_hops,messages_sent,checks_passed\n";

  for (const RunRecord& r : result.records) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%u,%u,%u,%u,%u,%u,%u,", r.network_index,
                  r.route_index, r.start_site.value, r.end_site_or_root.value,
                  r.total_sites, r.aoi_sites, r.oracle_unicast_hops);
    out += buf;
    out += format_double(r.oracle_avg_depth);
    out += ',';
    out += format_double(r.mabravo_r_avg_depth);
    std::snprintf(buf, sizeof(buf), ",%u,%u,", r.mabravo_d_hops,
                  r.messages_sent);
    out += buf;
    out += result.config.verify ? (r.checks_passed() ? "true" : "false")
                                : "skipped";
    out += '\n';
  }

  if (!include_summary || result.records.empty()) return out;

  std::vector<double> ohops, mhops, odepth, mdepth;
  std::size_t failures = 0;
  for (const RunRecord& r : result.records) {
    ohops.push_back(r.oracle_unicast_hops);
    mhops.push_back(r.mabravo_d_hops);
    odepth.push_back(r.oracle_avg_depth);
    mdepth.push_back(r.mabravo_r_avg_depth);
    if (!r.checks_passed()) ++failures;
  }

  out += "# summary\n";
  out +=
      "# avg depth = mean AoI-cast tree depth over delivered sites, root at "
      "0\n";
  out += "# oracle hop/depth metrics use only in-AoI sites as relays\n";
  out += quantile_line("oracle_unicast_hops", std::move(ohops));
  out += quantile_line("mabravo_d_hops", std::move(mhops));
  out += quantile_line("oracle_avg_depth", std::move(odepth));
  out += quantile_line("mabravo_r_avg_depth", std::move(mdepth));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# runs=%zu checks_failed=%zu\n",
                result.records.size(), failures);
  out += buf;
  return out;
}

}  // namespace mabravo
