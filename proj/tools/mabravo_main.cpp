// Command-line front end for the mabravo simulator.
//
// Two modes, selected by the number of positional parameters:
//   3 params:  sites aoi_points seed                   -> graphical mode
//   5 params:  sites aoi_points routes networks seed   -> batch mode
//
// Graphical mode runs one routing process on one freshly generated network,
// writes an SVG scene of it and prints a human-readable summary. Batch mode
// sweeps networks and routes and emits CSV plus a trailing summary block.
// Exit codes: 0 all checks passed, 1 a correctness check failed, 2 usage
// error, 3 output could not be written.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mabravo/oracle.hpp"
#include "mabravo/sim.hpp"
#include "mabravo/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Options {
  std::vector<std::uint64_t> params;
  double world_min = 0.0;
  double world_max = 1000.0;
  double epsilon = 0.0;  // 0: derive from the world box
  std::string out_path;
  bool no_verify = false;
};

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

mabravo::ExperimentConfig base_config(const Options& opt) {
  mabravo::ExperimentConfig cfg;
  cfg.world = mabravo::Box{opt.world_min, opt.world_min, opt.world_max,
                           opt.world_max};
  if (opt.epsilon > 0) cfg.epsilon = opt.epsilon;
  cfg.verify = !opt.no_verify;
  return cfg;
}

int run_graphical(const Options& opt) {
  using namespace mabravo;
  ExperimentConfig cfg = base_config(opt);
  cfg.num_sites = static_cast<unsigned>(opt.params[0]);
  cfg.aoi_seed_points = static_cast<unsigned>(opt.params[1]);
  cfg.master_seed = opt.params[2];
  cfg.routes_per_network = 1;
  cfg.num_networks = 1;
  cfg.validate();

  RandomStream rng(RandomStream::derive(cfg.master_seed, 0));
  GeneratedNetwork net = generate_network(rng, cfg);
  std::set<SiteId> members = aoi_members(net.diagram, net.aoi);
  ProcessArtifacts run =
      run_process_full(net, rng, 0, 0, cfg.verify, members);

  std::string path = opt.out_path.empty() ? "mabravo.svg" : opt.out_path;
  if (!write_file(path, render_scene_svg(net.diagram, net.aoi, run.unicast,
                                         members))) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitIo;
  }

  const RunRecord& rec = run.record;
  std::printf("sites=%u aoi_sites=%u\n", rec.total_sites, rec.aoi_sites);
  std::printf("unicast: start=%u end=%u hops=%u oracle_hops=%u route=[",
              rec.start_site.value, rec.end_site_or_root.value,
              rec.mabravo_d_hops, rec.oracle_unicast_hops);
  for (std::size_t i = 0; i < run.unicast.route.size(); ++i)
    std::printf("%s%u", i ? " " : "", run.unicast.route[i].value);
  std::printf("]\n");
  std::printf("aoicast: messages=%u avg_depth=%.4f oracle_avg_depth=%.4f\n",
              rec.messages_sent, rec.mabravo_r_avg_depth,
              rec.oracle_avg_depth);

  bool ok = true;
  if (cfg.verify) {
    for (const CheckResult& c :
         verify_run(run.unicast, run.aoicast, net.diagram, net.aoi,
                    &members)) {
      std::printf("check %s: %s%s%s\n", c.name.c_str(),
                  c.passed ? "pass" : "FAIL", c.detail.empty() ? "" : " - ",
                  c.detail.c_str());
      ok = ok && c.passed;
    }
  }
  std::printf("svg written to %s\n", path.c_str());
  return ok ? kExitOk : kExitCheckFailure;
}

int run_batch_mode(const Options& opt) {
  using namespace mabravo;
  ExperimentConfig cfg = base_config(opt);
  cfg.num_sites = static_cast<unsigned>(opt.params[0]);
  cfg.aoi_seed_points = static_cast<unsigned>(opt.params[1]);
  cfg.routes_per_network = static_cast<unsigned>(opt.params[2]);
  cfg.num_networks = static_cast<unsigned>(opt.params[3]);
  cfg.master_seed = opt.params[4];
  cfg.validate();

  BatchResult result = run_batch(cfg);
  std::string csv = write_csv(result);
  if (opt.out_path.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  } else if (!write_file(opt.out_path, csv)) {
    std::cerr << "error: cannot write " << opt.out_path << "\n";
    return kExitIo;
  }
  return cfg.verify && !result.all_checks_passed() ? kExitCheckFailure
                                                   : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mabravo: unicast and AoI-cast routing over Voronoi overlays"};
  Options opt;
  app.add_option("params", opt.params,
                 "3 values (sites aoi_points seed) for graphical mode, 5 "
                 "values (sites aoi_points routes networks seed) for batch");
  app.add_option("--world-min", opt.world_min, "world box lower corner");
  app.add_option("--world-max", opt.world_max, "world box upper corner");
  app.add_option("--epsilon", opt.epsilon,
                 "geometric tolerance override (default: 1e-9 of the world "
                 "box diagonal)");
  app.add_option("--out", opt.out_path,
                 "output path (SVG in graphical mode, CSV in batch mode)");
  app.add_flag("--no-verify", opt.no_verify, "skip per-run checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (opt.params.size() != 3 && opt.params.size() != 5) {
    std::cerr << "error: expected 3 (graphical) or 5 (batch) positional "
                 "parameters, got "
              << opt.params.size() << "\n";
    return kExitUsage;
  }
  if (opt.world_max <= opt.world_min) {
    std::cerr << "error: --world-max must exceed --world-min\n";
    return kExitUsage;
  }

  try {
    return opt.params.size() == 3 ? run_graphical(opt) : run_batch_mode(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
