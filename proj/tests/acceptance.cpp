// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "brute_model.hpp"
#include "ccr/error.hpp"
#include "ccr/fixtures.hpp"
#include "ccr/io.hpp"
#include "ccr/isomorphism.hpp"
#include "ccr/oracle.hpp"
#include "ccr/reconstruct.hpp"
#include "ccr/rigidity.hpp"
#include "ccr/roller.hpp"
#include "ccr/skinny.hpp"
#include "fixture_sets.hpp"
#include "properties.hpp"

using namespace ccr;

namespace {

// Every complex whose oracle was built during the run, for the final
// depth D vs D+1 comparison.
std::vector<ComplexDescription> g_seen;
// Summary of what a passing criterion covered.
std::string g_note;

std::string fail(const std::string& s) { return s.empty() ? "unspecified failure" : s; }

std::vector<Point> resolve_all(const CubeComplex& x, std::initializer_list<const char*> names) {
  std::vector<Point> out;
  for (const char* n : names) out.push_back(x.resolve(n));
  return out;
}

// Runs f on all 24 orderings of p.
bool all_orderings(std::vector<Point> p, const std::function<bool(const std::vector<Point>&)>& f) {
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    if (!f({p[perm[0]], p[perm[1]], p[perm[2]], p[perm[3]]})) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

// ---------------------------------------------------------------------------

std::string figure_one() {
  const auto star = CubeComplex::load(fixtures::star4());
  const auto sp = resolve_all(star, {"x", "y", "z", "z'"});
  if (!all_orderings(sp, [&](const auto& q) { return cross_ratio(star, q[0], q[1], q[2], q[3]).value == ExtendedInt(0); }))
    return "star: some ordering has cr != 0";
  const Point c = star.parse_point("(v:c)");
  if (median_bar(star, sp[0], sp[1], sp[2]) != c || median_bar(star, sp[0], sp[1], sp[3]) != c)
    return "star: medians are not c";
  if (!is_opposite_direct(star, sp[0], sp[1], sp[2])) return "star: x and y not opposite through z";
  const auto so = LiveOracle::boundary(star);
  if (!is_opposite_oracle(so, so.index_of("x"), so.index_of("y"), so.index_of("z")).opposite)
    return "star: oracle test disagrees on x, y through z";

  const auto zzz = CubeComplex::load(fixtures::zzz());
  const auto zp = resolve_all(zzz, {"x", "y", "z", "z'"});
  if (!all_orderings(zp, [&](const auto& q) { return cross_ratio(zzz, q[0], q[1], q[2], q[3]).value == ExtendedInt(0); }))
    return "zzz: some ordering has cr != 0";
  if (median_bar(zzz, zp[0], zp[1], zp[2]) == median_bar(zzz, zp[0], zp[1], zp[3]))
    return "zzz: m(x,y,z) equals m(x,y,z')";
  if (is_opposite_direct(zzz, zp[0], zp[1], zp[2])) return "zzz: x and y opposite through z";
  return "";
}

std::string basepoint_independence() {
  struct Case {
    ComplexDescription desc;
    bool sampled;
  };
  std::vector<Case> cases{{fixtures::star4(), false}, {fixtures::line(), false}, {fixtures::squarecore(), false},
                          {fixtures::bare_square(), false}, {fixtures::zzz(), true}};
  for (int l = 1; l <= 5; ++l) cases.push_back({fixtures::barbell(l), false});
  std::size_t evaluations = 0;
  for (const auto& [desc, sampled] : cases) {
    const auto x = CubeComplex::load(desc);
    std::vector<Point> pts;
    if (sampled) {
      const auto o = LiveOracle::sampled(x);
      for (std::size_t i = 0; i < o.size(); ++i) pts.push_back(o.point(i));
      if (pts.size() != 29) return desc.name + ": expected 29 sampled points, got " + std::to_string(pts.size());
    } else {
      pts = enumerate_boundary(x, 0).points;
    }
    const auto report = basepoint_sweep(x, pts, 3);
    if (!report.ok()) return desc.name + ": " + report.detail;
    evaluations += report.evaluations;

    // Wall formula against the reference model on the named points.
    std::vector<Point> small = pts;
    if (sampled) small = resolve_all(x, {"x", "y", "z", "z'"});
    const brute::Oracle model(desc, 3);
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& c : small)
          for (const auto& d : small) {
            if (!is_admissible(x, a, b, c, d)) continue;
            const auto r = [&](const Point& p) { return brute::raw(x, p); };
            const auto p1 = model.walls_between({r(a), r(c)}, {r(b), r(d)});
            const auto p2 = model.walls_between({r(a), r(d)}, {r(b), r(c)});
            ExtendedInt expect = p1.infinite   ? ExtendedInt::plus_infinity()
                                 : p2.infinite ? ExtendedInt::minus_infinity()
                                               : ExtendedInt(p1.n - p2.n);
            CrossRatioOptions opts;
            opts.depth = 3;
            if (cross_ratio(x, a, b, c, d, opts).value != expect) {
              return desc.name + ": cr differs from the reference model at (" + x.format(a) + "," + x.format(b) +
                     "," + x.format(c) + "," + x.format(d) + ")";
            }
          }
  }
  if (evaluations == 0) return "no evaluations";
  g_note = std::to_string(evaluations) + " basepoint evaluations";
  return "";
}

std::string identity_suite() {
  std::vector<ComplexDescription> set{fixtures::star4(), fixtures::squarecore()};
  for (int l = 1; l <= 5; ++l) set.push_back(fixtures::barbell(l));
  std::size_t total = 0;
  for (const auto& desc : set) {
    const auto x = CubeComplex::load(desc);
    std::size_t checked = 0;
    const std::string r = props::check_identities(x, enumerate_boundary(x, 0).points, &checked);
    if (!r.empty()) return desc.name + ": " + r;
    if (checked == 0) return desc.name + ": no admissible tuples";
    total += checked;
  }
  g_note = std::to_string(total) + " identity instances";
  return "";
}

std::vector<fixture_sets::Named> single_factor_set() {
  auto set = fixture_sets::eligible_single_factor();
  for (auto& r : fixture_sets::random_eligible(1, 20)) set.push_back(std::move(r));
  return set;
}

std::string characterizations() {
  for (const auto& [label, desc] : single_factor_set()) {
    g_seen.push_back(desc);
    const auto x = CubeComplex::load(desc);
    const auto o = LiveOracle::boundary(x);
    const std::size_t n = o.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (is_straight_pair_oracle(o, a, b) != is_straight_pair_direct(x, o.point(a), o.point(b)))
          return label + ": straight pair disagreement at " + o.points()[a] + ", " + o.points()[b];
        for (std::size_t c = 0; c < n; ++c) {
          if (a == b || b == c || a == c) continue;
          if (is_opposite_oracle(o, a, b, c).opposite != is_opposite_direct(x, o.point(a), o.point(b), o.point(c)))
            return label + ": opposition disagreement at " + o.points()[a] + ", " + o.points()[b] + ", " +
                   o.points()[c];
        }
      }
    for (std::size_t a = 0; a < n; ++a) {
      if (is_straight_point_oracle(o, a) != is_straight_point_direct(x, o.point(a)))
        return label + ": straight point disagreement at " + o.points()[a];
    }
    const auto dec = classify_vertices(x);
    const auto straight = straight_points(o);
    for (Vertex v : dec.fat) {
      const auto& ends = dec.ray_ends.at(v);
      for (std::size_t a = 0; a < n; ++a) {
        const bool direct = std::find(ends.begin(), ends.end(), o.point(a).coords[0].index) != ends.end();
        bool oracle = false;
        for (std::size_t b = 0; b < n && !oracle; ++b)
          for (std::size_t c = 0; c < n && !oracle; ++c) {
            if (median_bar(x, o.point(a), o.point(b), o.point(c)) != Point{{Coord::core(v)}}) continue;
            oracle = is_skinny_ray_oracle(o, a, b, c, straight);
          }
        if (direct != oracle) return label + ": skinny ray disagreement at " + o.points()[a];
      }
    }
  }
  return "";
}

std::string round_trip() {
  std::vector<fixture_sets::Named> set{{"star4", fixtures::star4()},
                                       {"barbell1", fixtures::barbell(1)},
                                       {"barbell2", fixtures::barbell(2)},
                                       {"barbell5", fixtures::barbell(5)},
                                       {"squarecore", fixtures::squarecore()}};
  for (auto& r : fixture_sets::random_eligible(1, 50)) set.push_back(std::move(r));
  for (const auto& [label, desc] : set) {
    g_seen.push_back(desc);
    const auto& f = desc.factors.at(0);
    if (label.rfind("random", 0) == 0 && (f.vertices.size() > 16 || f.rays.size() > 8))
      return label + ": random complex exceeds the size bounds";
    const auto x = CubeComplex::load(desc);
    const std::string dump = format_oracle(LiveOracle::boundary(x));
    const auto rec = reconstruct(parse_oracle(dump));
    const auto back = rec.description();
    if (!props::isomorphic_by_matching(desc, back)) return label + ": reconstruction not isomorphic (matching)";
    if (!isomorphic(x, CubeComplex::load(back))) return label + ": reconstruction not isomorphic (normal form)";
  }
  g_note = std::to_string(set.size()) + " complexes";
  return "";
}

std::string theorem_pipeline() {
  std::size_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::string label = "seed " + std::to_string(seed);
    const auto desc = fixtures::random_eligible(seed);
    const auto rel = fixtures::relabel(desc, seed * 31 + 5);
    g_seen.push_back(desc);
    g_seen.push_back(rel.image);
    const auto x = CubeComplex::load(desc);
    const auto y = CubeComplex::load(rel.image);
    const auto ox = LiveOracle::boundary(x);
    const auto oy = LiveOracle::boundary(y);
    std::vector<std::size_t> f;
    for (const auto& id : ox.points()) f.push_back(oy.index_of(rel.rays.at(id)));

    const auto m = is_mobius(f, ox, oy);
    if (!m.forward_ok || !m.bijective() || m.inverse_ok != std::optional<bool>(true))
      return label + ": induced map is not a Mobius bijection";
    const auto F = extend_isomorphism(f, ox, oy);
    const auto& gx = x.factor(0).core();
    const auto& gy = y.factor(0).core();
    for (Vertex v = 0; v < gx.size(); ++v) {
      if (F.apply(Point{{Coord::core(v)}}) != Point{{Coord::core(gy.index_of(rel.vertices.at(gx.id(v))))}})
        return label + ": extension differs from the relabeling at " + gx.id(v);
    }
    for (std::size_t i = 0; i < ox.size(); ++i) {
      if (F.apply(ox.point(i)) != oy.point(f[i])) return label + ": extension does not restrict to f at " + ox.points()[i];
    }
    const auto u = verify_uniqueness(f, ox, oy, F);
    if (!u.ok()) return label + ": " + std::to_string(u.extending) + " extending isomorphisms";
    ++pairs;
  }
  g_note = std::to_string(pairs) + " pairs";
  return pairs >= 20 ? "" : "too few pairs";
}

std::string negative_controls() {
  const auto bar = CubeComplex::load(fixtures::barbell(3));
  const auto bo = LiveOracle::boundary(bar);
  std::vector<std::size_t> swap(bo.size());
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[bo.index_of("x1")], swap[bo.index_of("y1")]);
  const auto v = is_mobius(swap, bo, bo);
  if (v.forward_ok || !v.counterexample) return "barbell swap accepted as Mobius";
  const auto& ce = *v.counterexample;
  if (ce.image_admissible && ce.domain_crt == ce.image_crt) return "counterexample does not fail";
  // The tuple (x1,y1,x2,y2) itself has cr 3 against -3 after the swap.
  const auto i = [&](const char* s) { return bo.index_of(s); };
  const auto before = cross_ratio(bar, bo.point(i("x1")), bo.point(i("y1")), bo.point(i("x2")), bo.point(i("y2")));
  const auto after = cross_ratio(bar, bo.point(i("y1")), bo.point(i("x1")), bo.point(i("x2")), bo.point(i("y2")));
  if (before.value != ExtendedInt(3) || after.value != ExtendedInt(-3)) return "barbell cr values are not 3 and -3";
  try {
    extend_isomorphism(swap, bo, bo);
    return "barbell swap extended";
  } catch (const PreconditionError&) {
  }

  const auto star = CubeComplex::load(fixtures::star4());
  const auto zzz = CubeComplex::load(fixtures::zzz());
  const auto so = LiveOracle::boundary(star);
  const auto zo = LiveOracle::sampled(zzz);
  std::vector<std::size_t> emb;
  for (const auto& p : so.points()) emb.push_back(zo.index_of(p));
  const auto e = is_mobius(emb, so, zo);
  if (!e.forward_ok || !e.injective || e.surjective) return "star to zzz is not a non-surjective Mobius injection";
  try {
    extend_isomorphism(emb, so, zo);
    return "star to zzz extended";
  } catch (const PreconditionError&) {
  }
  return "";
}

// Every crt reported for the complexes seen above, recomputed one level
// deeper, plus the global wall-count stabilization counters.
std::string stabilization() {
  g_seen.push_back(fixtures::zzz());
  std::size_t records = 0;
  for (const auto& desc : g_seen) {
    const auto x = CubeComplex::load(desc);
    const bool product = x.factor_count() > 1;
    const auto lo = product ? LiveOracle::sampled(x) : LiveOracle::boundary(x);
    const auto hi = product ? LiveOracle::sampled(x, 0, lo.depth() + 1) : LiveOracle::boundary(x, lo.depth() + 1);
    const auto a = RecordedOracle::records_of(lo);
    const auto b = RecordedOracle::records_of(hi);
    if (a.size() != b.size()) return desc.name + ": record counts differ";
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].admissible != b[k].admissible || a[k].crt != b[k].crt)
        return desc.name + ": crt changes from depth " + std::to_string(lo.depth()) + " to " +
               std::to_string(hi.depth());
    }
    records += a.size();
  }
  const auto s = stabilization_stats();
  if (s.checks == 0 || records == 0) return "nothing was checked";
  if (s.failures != 0) return std::to_string(s.failures) + " of " + std::to_string(s.checks) + " wall counts unstable";
  g_note = std::to_string(records) + " crt records, " + std::to_string(s.checks) + " wall counts";
  return "";
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  reset_stabilization_stats();
  const std::vector<Criterion> criteria{
      {1, "star and zzz examples", 1, figure_one},
      {2, "basepoint independence", 10, basepoint_independence},
      {3, "cross ratio identities", 10, identity_suite},
      {4, "characterization equivalences", 30, characterizations},
      {5, "reconstruction round trip", 120, round_trip},
      {6, "extension pipeline", 120, theorem_pipeline},
      {7, "negative controls", 5, negative_controls},
      {8, "stabilization", 600, stabilization},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    g_note.clear();
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && secs > c.limit_seconds) detail = "time limit exceeded";
    const bool ok = detail.empty();
    all = all && ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f s, limit %.0f s", secs, c.limit_seconds);
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << " (" << buf << ")";
    if (!ok) std::cout << ": " << detail;
    if (ok && !g_note.empty()) std::cout << ": " << g_note;
    std::cout << "\n" << std::flush;
  }
  return all ? 0 : 1;
}
