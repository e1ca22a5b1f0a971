#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "ccr/error.hpp"
#include "ccr/median_graph.hpp"

using namespace ccr;

namespace {

MedianGraph cycle4() { return MedianGraph({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "A"}}); }

MedianGraph path(int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i <= n; ++i) ids.push_back("p" + std::to_string(i));
  for (int i = 0; i < n; ++i) edges.emplace_back(ids[i], ids[i + 1]);
  return MedianGraph(ids, edges);
}

// Grid Pm x Pn.
MedianGraph grid(int m, int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  auto id = [](int i, int j) { return std::to_string(i) + "_" + std::to_string(j); };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      ids.push_back(id(i, j));
      if (i + 1 < m) edges.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < n) edges.emplace_back(id(i, j), id(i, j + 1));
    }
  }
  return MedianGraph(ids, edges);
}

// Q3 cube.
MedianGraph cube() {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int v = 0; v < 8; ++v) ids.push_back("c" + std::to_string(v));
  for (int v = 0; v < 8; ++v) {
    for (int b = 0; b < 3; ++b) {
      if (v < (v ^ (1 << b))) edges.emplace_back(ids[v], ids[v ^ (1 << b)]);
    }
  }
  return MedianGraph(ids, edges);
}

// Independent median search: every vertex on all three geodesic intervals.
std::vector<Vertex> brute_medians(const MedianGraph& g, Vertex a, Vertex b, Vertex c) {
  std::vector<Vertex> out;
  for (Vertex m = 0; m < g.size(); ++m) {
    if (g.distance(a, m) + g.distance(m, b) == g.distance(a, b) &&
        g.distance(b, m) + g.distance(m, c) == g.distance(b, c) &&
        g.distance(a, m) + g.distance(m, c) == g.distance(a, c)) {
      out.push_back(m);
    }
  }
  return out;
}

void check_distance_equals_walls(const MedianGraph& g) {
  WallSystem ws(g);
  for (Vertex a = 0; a < g.size(); ++a) {
    for (Vertex b = 0; b < g.size(); ++b) {
      int sep = 0;
      for (WallId w = 0; w < ws.size(); ++w) sep += ws.separates(w, a, b);
      CHECK(sep == g.distance(a, b));
    }
  }
}

}  // namespace

TEST_CASE("validate: single vertex, 4-cycle, triangle") {
  CHECK(validate_median_graph(MedianGraph({"v"}, {})).ok());
  CHECK(validate_median_graph(cycle4()).ok());
  MedianGraph k3({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  auto r = validate_median_graph(k3);
  REQUIRE(r.status == MedianValidation::Status::NotMedian);
  CHECK(*r.triple == std::array<Vertex, 3>{0, 1, 2});
  CHECK(r.medians_found == 0);
}

TEST_CASE("validate: disconnected reported distinctly") {
  MedianGraph g({"a", "b"}, {});
  CHECK(validate_median_graph(g).status == MedianValidation::Status::Disconnected);
  CHECK(validate_median_graph_serial(g).status == MedianValidation::Status::Disconnected);
}

TEST_CASE("validate: K2,3 has two medians for some triple") {
  MedianGraph g({"a", "b", "x", "y", "z"}, {{"a", "x"}, {"a", "y"}, {"a", "z"}, {"b", "x"}, {"b", "y"}, {"b", "z"}});
  auto r = validate_median_graph(g);
  REQUIRE(r.status == MedianValidation::Status::NotMedian);
  CHECK(r.medians_found >= 2);
}

TEST_CASE("validate agrees with independent median search") {
  std::vector<MedianGraph> graphs = {cycle4(), path(4), grid(3, 3), cube(),
                                     MedianGraph({"a", "b", "c", "d", "e", "f"},
                                                 {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"f", "a"}}),
                                     MedianGraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}})};
  for (const auto& g : graphs) {
    bool all_unique = true;
    for (Vertex a = 0; a < g.size(); ++a)
      for (Vertex b = 0; b < g.size(); ++b)
        for (Vertex c = 0; c < g.size(); ++c) all_unique = all_unique && brute_medians(g, a, b, c).size() == 1;
    CHECK(validate_median_graph(g).ok() == all_unique);
    CHECK(validate_median_graph_serial(g).ok() == all_unique);
  }
}

TEST_CASE("distance examples") {
  auto g = cycle4();
  CHECK(g.distance("A", "A") == 0);
  CHECK(g.distance("A", "C") == 2);
  CHECK_THROWS_AS(g.index_of("Q"), InputError);
}

TEST_CASE("walls: edge, 4-cycle, path") {
  MedianGraph e({"a", "b"}, {{"a", "b"}});
  CHECK(WallSystem(e).size() == 1);
  WallSystem c(cycle4());
  REQUIRE(c.size() == 2);
  CHECK(c.wall(0).edges.size() == 2);
  CHECK(c.wall(1).edges.size() == 2);
  CHECK(transverse(c, 0, 1));
  CHECK_THROWS_AS(transverse(c, 0, 0), PreconditionError);
  WallSystem p(path(3));
  CHECK(p.size() == 3);
  for (WallId a = 0; a < 3; ++a)
    for (WallId b = a + 1; b < 3; ++b) CHECK_FALSE(transverse(p, a, b));
}

TEST_CASE("walls: non partial cube rejected") {
  MedianGraph k3({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  CHECK_THROWS_AS(WallSystem{k3}, InputError);
}

TEST_CASE("property: distance equals number of separating walls; sides convex; partition") {
  for (const auto& g : {cycle4(), path(5), grid(3, 4), cube()}) {
    check_distance_equals_walls(g);
    WallSystem ws(g);
    std::vector<int> owner(g.edges().size(), 0);
    for (const auto& w : ws.walls()) {
      for (auto e : w.edges) ++owner[e];
      CHECK(w.side_minus.size() + w.side_plus.size() == g.size());
      for (Vertex a = 0; a < g.size(); ++a)
        for (Vertex b = 0; b < g.size(); ++b) {
          if (w.side[a] != w.side[b]) continue;
          for (Vertex t : interval(g, a, b)) CHECK(w.side[t] == w.side[a]);
        }
    }
    CHECK(std::all_of(owner.begin(), owner.end(), [](int k) { return k == 1; }));
  }
}

TEST_CASE("interval and median") {
  auto g = cycle4();
  const Vertex A = g.index_of("A"), B = g.index_of("B"), C = g.index_of("C");
  CHECK(interval(g, A, A) == std::vector<Vertex>{A});
  CHECK(median(g, A, B, C) == B);
  CHECK(median(g, A, A, C) == A);
}

TEST_CASE("property: median symmetric and on geodesics") {
  for (const auto& g : {grid(3, 3), cube(), path(4)}) {
    for (Vertex a = 0; a < g.size(); ++a)
      for (Vertex b = 0; b < g.size(); ++b)
        for (Vertex c = 0; c < g.size(); ++c) {
          const Vertex m = median(g, a, b, c);
          CHECK(m == median(g, b, a, c));
          CHECK(m == median(g, c, b, a));
          CHECK(m == median(g, a, c, b));
          CHECK(g.distance(a, b) == g.distance(a, m) + g.distance(m, b));
          CHECK(g.distance(b, c) == g.distance(b, m) + g.distance(m, c));
          CHECK(brute_medians(g, a, b, c) == std::vector<Vertex>{m});
        }
  }
}

TEST_CASE("link data") {
  auto p = path(2);
  auto lp = link_data(p, WallSystem(p), p.index_of("p1"));
  CHECK(lp.link_vertices.size() == 2);
  CHECK(lp.link_edges.empty());
  auto c = cycle4();
  auto lc = link_data(c, WallSystem(c), c.index_of("A"));
  CHECK(lc.link_vertices.size() == 2);
  CHECK(lc.link_edges.size() == 1);
  CHECK(lc.is_cone());
  CHECK(lc.adjacent_walls.size() == 2);
  MedianGraph star({"c", "1", "2", "3", "4"}, {{"c", "1"}, {"c", "2"}, {"c", "3"}, {"c", "4"}});
  auto ls = link_data(star, WallSystem(star), star.index_of("c"));
  CHECK(ls.link_vertices.size() == 4);
  CHECK(ls.link_edges.empty());
  CHECK_FALSE(ls.is_cone());
}

TEST_CASE("straight paths") {
  auto p = path(3);
  WallSystem wp(p);
  std::vector<Vertex> all = {0, 1, 2, 3};
  CHECK(is_straight_path(p, wp, all));
  std::vector<Vertex> one = {0, 1};
  CHECK(is_straight_path(p, wp, one));
  auto c = cycle4();
  WallSystem wc(c);
  std::vector<Vertex> l = {c.index_of("A"), c.index_of("B"), c.index_of("C")};
  CHECK_FALSE(is_straight_path(c, wc, l));
  std::vector<Vertex> back = {0, 1, 0};
  CHECK_THROWS_AS(is_straight_path(p, wp, back), PreconditionError);
}

TEST_CASE("parallel kernels match serial reference") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial;
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    for (int i = 0; i < 2 * n; ++i) {
      const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) edges.emplace_back(ids[a], ids[b]);
    }
    MedianGraph g(ids, edges);
    std::vector<std::vector<Vertex>> adj(g.size());
    for (Vertex v = 0; v < g.size(); ++v) adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    CHECK(all_pairs_distances(adj) == all_pairs_distances_serial(adj));
    auto a = validate_median_graph(g);
    auto b = validate_median_graph_serial(g);
    CHECK(a.status == b.status);
    CHECK(a.triple == b.triple);
    CHECK(a.medians_found == b.medians_found);
  }
}
