#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ccr/error.hpp"
#include "ccr/fixtures.hpp"
#include "ccr/isomorphism.hpp"
#include "ccr/reconstruct.hpp"
#include "ccr/roller.hpp"
#include "fixture_sets.hpp"
#include "properties.hpp"

using namespace ccr;

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

// Boundary map induced by renaming rays.
std::vector<std::size_t> induced(const LiveOracle& ox, const LiveOracle& oy, const std::map<std::string, std::string>& rays) {
  std::vector<std::size_t> f;
  for (const auto& id : ox.points()) f.push_back(oy.index_of(rays.at(id)));
  return f;
}

// Brute-force count of core-graph automorphisms that also preserve ray
// counts per vertex, times the ray permutations. Valid when no core vertex
// is skinny (so the core is canonical).
std::uint64_t brute_automorphisms(const CubeComplex& x) {
  const Factor& f = x.factor(0);
  const MedianGraph& g = f.core();
  std::vector<Vertex> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (Vertex v = 0; v < g.size() && ok; ++v) {
      ok = f.rays_at(v).size() == f.rays_at(perm[v]).size();
      for (Vertex w = 0; w < g.size() && ok; ++w) ok = g.adjacent(v, w) == g.adjacent(perm[v], perm[w]);
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::uint64_t rays = 1;
  for (Vertex v = 0; v < g.size(); ++v)
    for (std::size_t k = 2; k <= f.rays_at(v).size(); ++k) rays *= k;
  return count * rays;
}

}  // namespace

TEST_CASE("isomorphism counts") {
  const auto star = CubeComplex::load(fixtures::star4());
  CHECK(count_isomorphisms(star, star) == 24);
  const auto sq = CubeComplex::load(fixtures::squarecore());
  CHECK(count_isomorphisms(sq, sq) == brute_automorphisms(sq));
  CHECK(count_isomorphisms(sq, sq) == 8);
  CHECK(count_isomorphisms(star, sq) == 0);
  CHECK_FALSE(isomorphic(star, sq));
  for (int l = 1; l <= 4; ++l) {
    const auto b = CubeComplex::load(fixtures::barbell(l));
    // Swap the branches, permute the three rays at each.
    CHECK(count_isomorphisms(b, b) == 2 * 6 * 6);
    for (int m = 1; m <= 4; ++m) {
      CHECK(isomorphic(b, CubeComplex::load(fixtures::barbell(m))) == (l == m));
    }
  }
}

TEST_CASE("exhaustive matching agrees with the normal form") {
  auto set = fixture_sets::eligible_single_factor();
  for (auto& r : fixture_sets::random_eligible(40, 12)) set.push_back(std::move(r));
  for (const auto& a : set)
    for (const auto& b : set) {
      CAPTURE(a.label);
      CAPTURE(b.label);
      CHECK(props::isomorphic_by_matching(a.desc, b.desc) ==
            isomorphic(CubeComplex::load(a.desc), CubeComplex::load(b.desc)));
    }
  const auto b3 = fixtures::barbell(3);
  CHECK(props::isomorphic_by_matching(b3, fixtures::relabel(b3, 4).image));
  CHECK_FALSE(props::isomorphic_by_matching(fixtures::star4(), fixtures::squarecore()));
}

TEST_CASE("isomorphism ignores where the core stops along a ray") {
  // A ray attached one step out along a pendant core vertex is the same
  // complex as the ray attached at the branch point.
  ComplexDescription a = fixtures::star4();
  ComplexDescription b = a;
  b.factors[0].vertices.push_back("t");
  b.factors[0].edges.emplace_back("c", "t");
  b.factors[0].rays[0].second = "t";
  CHECK(isomorphic(CubeComplex::load(a), CubeComplex::load(b)));
}

TEST_CASE("reconstruction examples") {
  const auto star = CubeComplex::load(fixtures::star4());
  auto r = reconstruct(LiveOracle::boundary(star));
  CHECK(r.classes.size() == 1);
  CHECK(r.segments.empty());
  CHECK(r.rays.size() == 4);

  const auto b3 = CubeComplex::load(fixtures::barbell(3));
  r = reconstruct(LiveOracle::boundary(b3));
  REQUIRE(r.classes.size() == 2);
  CHECK(r.distance[0][1] == 3);
  REQUIRE(r.segments.size() == 1);
  CHECK(r.segments[0].length == 3);
  CHECK(r.rays.size() == 6);
  CHECK(std::count_if(r.rays.begin(), r.rays.end(), [](const auto& ray) { return ray.base == 0; }) == 3);

  const auto b1 = CubeComplex::load(fixtures::barbell(1));
  r = reconstruct(LiveOracle::boundary(b1));
  CHECK(r.edges.size() == 1);
  CHECK(r.segments.empty());

  const auto sq = CubeComplex::load(fixtures::squarecore());
  r = reconstruct(LiveOracle::boundary(sq));
  CHECK(r.classes.size() == 4);
  CHECK(r.edges.size() == 4);
  CHECK(r.segments.empty());
  CHECK(r.rays.size() == 4);
}

TEST_CASE("reconstruction round trip") {
  auto set = fixture_sets::eligible_single_factor();
  for (auto& f : fixture_sets::random_eligible(100, 12)) set.push_back(std::move(f));
  for (const auto& [label, desc] : set) {
    CAPTURE(label);
    const auto x = CubeComplex::load(desc);
    const auto o = LiveOracle::boundary(x);
    const RecordedOracle rec(o.name(), o.depth(), o.points(), RecordedOracle::records_of(o));
    const auto r = reconstruct(rec);
    const auto y = CubeComplex::load(r.description());
    CHECK(isomorphic(x, y));
    // Ray ids are kept, so the identity on ids must extend uniquely.
    const auto oy = LiveOracle::boundary(y);
    REQUIRE(oy.points() == o.points());
    const auto f = identity_map(o.size());
    const auto F = extend_isomorphism(f, o, oy);
    CHECK(verify_uniqueness(f, o, oy, F).ok());
  }
}

TEST_CASE("reconstruction rejects products") {
  const auto zzz = CubeComplex::load(fixtures::zzz());
  CHECK_THROWS_AS(reconstruct(LiveOracle::sampled(zzz)), PreconditionError);
}

TEST_CASE("extension: identity and automorphisms") {
  const auto star = CubeComplex::load(fixtures::star4());
  const auto so = LiveOracle::boundary(star);
  auto F = extend_isomorphism(identity_map(4), so, so);
  CHECK(F.apply(star.resolve("(v:c)")) == star.resolve("(v:c)"));
  CHECK(F.apply(star.resolve("(r:x:3)")) == star.resolve("(r:x:3)"));

  // Every permutation of the four ends extends by exactly one of the 24
  // automorphisms.
  std::vector<std::size_t> p = identity_map(4);
  do {
    F = extend_isomorphism(p, so, so);
    const auto u = verify_uniqueness(p, so, so, F);
    CHECK(u.isomorphisms == 24);
    CHECK(u.ok());
  } while (std::next_permutation(p.begin(), p.end()));

  for (int l = 1; l <= 5; ++l) {
    CAPTURE(l);
    const auto b = CubeComplex::load(fixtures::barbell(l));
    const auto bo = LiveOracle::boundary(b);
    auto f = identity_map(bo.size());
    std::swap(f[bo.index_of("x1")], f[bo.index_of("x2")]);
    F = extend_isomorphism(f, bo, bo);
    // The automorphism fixes the core and exchanges the two rays.
    const auto& core = b.factor(0).core();
    for (Vertex v = 0; v < core.size(); ++v) CHECK(F.apply(Point{{Coord::core(v)}}) == Point{{Coord::core(v)}});
    CHECK(F.apply(b.resolve("(r:x1:2)")) == b.resolve("(r:x2:2)"));
    CHECK(verify_uniqueness(f, bo, bo, F).ok());
    const auto id = identity_map(bo.size());
    CHECK(verify_uniqueness(id, bo, bo, extend_isomorphism(id, bo, bo)).ok());

    // A map swapping branches along with all their rays.
    std::vector<std::size_t> g(bo.size());
    for (std::size_t i = 0; i < bo.size(); ++i) {
      std::string s = bo.points()[i];
      s[0] = s[0] == 'x' ? 'y' : 'x';
      g[i] = bo.index_of(s);
    }
    F = extend_isomorphism(g, bo, bo);
    CHECK(F.apply(b.resolve("(v:p)")) == b.resolve("(v:q)"));
    CHECK(verify_uniqueness(g, bo, bo, F).ok());
  }
}

TEST_CASE("extension: relabelled copies") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    const auto desc = fixtures::random_eligible(seed);
    const auto rel = fixtures::relabel(desc, seed * 7 + 1);
    const auto x = CubeComplex::load(desc);
    const auto y = CubeComplex::load(rel.image);
    const auto ox = LiveOracle::boundary(x);
    const auto oy = LiveOracle::boundary(y);
    const auto f = induced(ox, oy, rel.rays);
    const auto F = extend_isomorphism(f, ox, oy);
    const auto& gx = x.factor(0).core();
    const auto& gy = y.factor(0).core();
    for (Vertex v = 0; v < gx.size(); ++v) {
      CHECK(F.apply(Point{{Coord::core(v)}}) == Point{{Coord::core(gy.index_of(rel.vertices.at(gx.id(v))))}});
    }
    CHECK(verify_uniqueness(f, ox, oy, F).ok());
  }
}

TEST_CASE("extension refusals") {
  const auto star = CubeComplex::load(fixtures::star4());
  const auto so = LiveOracle::boundary(star);
  const auto b = CubeComplex::load(fixtures::barbell(2));
  const auto bo = LiveOracle::boundary(b);
  auto f = identity_map(bo.size());
  std::swap(f[bo.index_of("x1")], f[bo.index_of("y1")]);
  CHECK_THROWS_AS(extend_isomorphism(f, bo, bo), PreconditionError);
  CHECK_THROWS_AS(extend_isomorphism({0, 0, 1, 2}, so, so), PreconditionError);
  const auto line = CubeComplex::load(fixtures::line());
  const auto lo = LiveOracle::boundary(line);
  CHECK_THROWS_AS(extend_isomorphism({0, 1}, lo, lo), PreconditionError);
}
