// Timing comparison between the literal serial diagram construction and the
// pruned, OpenMP-parallel one used everywhere else. Both paths must produce
// the same tessellation; this tool checks cheap invariants (cell count,
// total area, overlay edge count) while the unit tests compare cells
// vertex by vertex.
//
// Usage: bench_voronoi [site counts...]   (default: 128 256 512 1024)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mabravo/sim.hpp"
#include "mabravo/voronoi.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::vector<mabravo::Site> random_sites(unsigned n, const mabravo::Box& world,
                                        std::uint64_t seed) {
  mabravo::RandomStream rng(seed);
  std::vector<mabravo::Site> sites;
  sites.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    sites.push_back(mabravo::Site{
        mabravo::SiteId{i},
        {rng.next_in(world.min_x, world.max_x),
         rng.next_in(world.min_y, world.max_y)}});
  }
  return sites;
}

struct Fingerprint {
  std::size_t cells = 0;
  std::size_t overlay_edges = 0;
  double total_area = 0;
};

Fingerprint fingerprint(const mabravo::VoronoiDiagram& dg) {
  Fingerprint fp;
  fp.cells = dg.sites().size();
  for (const mabravo::Site& s : dg.sites()) {
    fp.overlay_edges += dg.neighbors(s.id).size();
    fp.total_area += dg.cell(s.id).polygon.area();
  }
  fp.overlay_edges /= 2;
  return fp;
}

bool matches(const Fingerprint& a, const Fingerprint& b, double area_tol) {
  return a.cells == b.cells && a.overlay_edges == b.overlay_edges &&
         std::abs(a.total_area - b.total_area) <= area_tol;
}

template <typename F>
double time_ms(F&& f) {
  auto t0 = Clock::now();
  f();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<unsigned> sizes;
  for (int i = 1; i < argc; ++i)
    sizes.push_back(static_cast<unsigned>(std::strtoul(argv[i], nullptr, 10)));
  if (sizes.empty()) sizes = {128, 256, 512, 1024};

  const mabravo::Box world{0, 0, 1000, 1000};
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%8s %14s %14s %8s %6s\n", "sites", "reference[ms]",
              "parallel[ms]", "speedup", "match");

  bool all_match = true;
  for (unsigned n : sizes) {
    std::vector<mabravo::Site> sites = random_sites(n, world, 0x5eedULL + n);

    std::optional<mabravo::VoronoiDiagram> ref, fast;
    double t_ref = time_ms(
        [&] { ref = mabravo::build_diagram_reference(sites, world); });
    double t_fast =
        time_ms([&] { fast = mabravo::build_diagram(sites, world); });

    bool ok = matches(fingerprint(*ref), fingerprint(*fast),
                      1e-6 * world.area());
    all_match = all_match && ok;
    std::printf("%8u %14.2f %14.2f %8.2f %6s\n", n, t_ref, t_fast,
                t_ref / t_fast, ok ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
