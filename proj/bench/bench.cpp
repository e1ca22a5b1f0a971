// Serial vs OpenMP timings for the exhaustive kernels. Each pair of runs is
// also checked for identical results.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "ccr/fixtures.hpp"
#include "ccr/median_graph.hpp"
#include "ccr/oracle.hpp"
#include "ccr/rigidity.hpp"
#include "ccr/roller.hpp"

using namespace ccr;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
              same ? "same" : "DIFFERENT");
}

std::vector<std::vector<Vertex>> adjacency_of(const MedianGraph& g) {
  std::vector<std::vector<Vertex>> adj(g.size());
  for (Vertex v = 0; v < g.size(); ++v) adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  return adj;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const auto zzz = CubeComplex::load(fixtures::zzz());
  std::printf("threads %d, repetitions %d\n", omp_get_max_threads(), reps);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  {
    const auto adj = adjacency_of(truncate(zzz, 8).graph);
    std::vector<int> a, b;
    const double s = seconds([&] { a = all_pairs_distances_serial(adj); }, reps);
    const double p = seconds([&] { b = all_pairs_distances(adj); }, reps);
    row("all_pairs_distances (" + std::to_string(adj.size()) + " v)", s, p, a == b);
  }
  {
    const auto g = truncate(zzz, 2).graph;
    MedianValidation a, b;
    const double s = seconds([&] { a = validate_median_graph_serial(g); }, reps);
    const double p = seconds([&] { b = validate_median_graph(g); }, reps);
    row("validate_median_graph (" + std::to_string(g.size()) + " v)", s, p, a.ok() && b.ok());
  }

  const auto sample = LiveOracle::sampled(zzz);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < sample.size(); ++i) pts.push_back(sample.point(i));
  {
    const auto verts = truncation_vertices(zzz, 3);
    std::optional<GromovTable> a, b;
    const double s = seconds([&] { a.emplace(zzz, pts, verts, 3, false); }, reps);
    const double p = seconds([&] { b.emplace(zzz, pts, verts, 3, true); }, reps);
    row("GromovTable (" + std::to_string(pts.size()) + " pts)", s, p, *a == *b);
  }
  {
    BasepointSweepReport a, b;
    const double s = seconds([&] { a = basepoint_sweep_serial(zzz, pts, 3); }, reps);
    const double p = seconds([&] { b = basepoint_sweep(zzz, pts, 3); }, reps);
    row("basepoint_sweep (depth 3)", s, p, a.ok() && b.ok() && a.evaluations == b.evaluations);
  }
  {
    const auto& wide = sample;
    std::vector<std::size_t> id(wide.size());
    std::iota(id.begin(), id.end(), 0);
    MobiusVerdict a, b;
    const double s = seconds([&] { a = is_mobius_serial(id, wide, wide); }, reps);
    const double p = seconds([&] { b = is_mobius(id, wide, wide); }, reps);
    row("is_mobius (" + std::to_string(wide.size()) + " pts)", s, p, a.mobius() && b.mobius());
  }
  return 0;
}
