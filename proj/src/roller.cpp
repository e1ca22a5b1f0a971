#include "ccr/roller.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

#include "ccr/error.hpp"

namespace ccr {

namespace {

std::atomic<std::uint64_t> g_checks{0};
std::atomic<std::uint64_t> g_failures{0};

std::uint32_t mentioned_depth(std::span<const Coord> coords) {
  std::uint32_t d = 0;
  for (const Coord& c : coords) {
    if (c.kind == CoordKind::Ray) d = std::max(d, c.depth);
  }
  return d;
}

int effective_depth(int depth, std::span<const Coord> coords) {
  return std::max(depth, static_cast<int>(mentioned_depth(coords)));
}

int end_ray(const Coord& c) { return c.kind == CoordKind::End ? static_cast<int>(c.index) : -1; }

// The tail of ray r (walls deeper than the truncation) separates A from B iff
// the points ending on r are exactly one of the two sets.
bool tail_separates(std::span<const Coord> a, std::span<const Coord> b) {
  auto one_way = [](std::span<const Coord> s, std::span<const Coord> t) {
    const int r = end_ray(s.front());
    if (r < 0) return false;
    return std::all_of(s.begin(), s.end(), [&](const Coord& c) { return end_ray(c) == r; }) &&
           std::none_of(t.begin(), t.end(), [&](const Coord& c) { return end_ray(c) == r; });
  };
  return one_way(a, b) || one_way(b, a);
}

std::uint64_t truncation_count(const Factor& f, std::span<const Coord> a, std::span<const Coord> b, int depth) {
  const FactorTruncation& t = f.truncation(depth);
  std::vector<Vertex> va;
  std::vector<Vertex> vb;
  for (const Coord& c : a) va.push_back(t.locate(c));
  for (const Coord& c : b) vb.push_back(t.locate(c));
  std::uint64_t n = 0;
  for (WallId w = 0; w < t.walls.size(); ++w) {
    const std::int8_t s = t.walls.side(w, va.front());
    const bool ok = std::all_of(va.begin(), va.end(), [&](Vertex v) { return t.walls.side(w, v) == s; }) &&
                    std::all_of(vb.begin(), vb.end(), [&](Vertex v) { return t.walls.side(w, v) == -s; });
    if (ok) ++n;
  }
  return n;
}

std::vector<Coord> project(std::span<const Point> pts, std::size_t factor) {
  std::vector<Coord> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(p.coords[factor]);
  return out;
}

void require_points(const CubeComplex& x, std::span<const Point> pts) {
  for (const Point& p : pts) x.validate(p);
}

std::vector<Point> product_points(const std::vector<std::vector<Coord>>& per_factor) {
  std::vector<Point> out;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  for (const auto& choices : per_factor) {
    if (choices.empty()) return out;
  }
  while (true) {
    Point p;
    for (std::size_t i = 0; i < per_factor.size(); ++i) p.coords.push_back(per_factor[i][idx[i]]);
    out.push_back(std::move(p));
    std::size_t i = per_factor.size();
    while (i > 0) {
      --i;
      if (++idx[i] < per_factor[i].size()) break;
      idx[i] = 0;
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

}  // namespace

int default_depth(const CubeComplex& x, std::span<const Point> points) {
  return static_cast<int>(CubeComplex::max_depth(points)) + x.core_diameter() + 1;
}

StabilizationStats stabilization_stats() { return {g_checks.load(), g_failures.load()}; }

void reset_stabilization_stats() {
  g_checks = 0;
  g_failures = 0;
}

Count walls_between_at_depth(const CubeComplex& x, std::span<const Point> a, std::span<const Point> b,
                             int depth) {
  if (a.empty() || b.empty()) throw PreconditionError("walls_between needs nonempty point sets");
  if (depth < 1) throw PreconditionError("depth must be at least 1");
  require_points(x, a);
  require_points(x, b);
  std::uint64_t total = 0;
  bool infinite = false;
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const auto ca = project(a, i);
    const auto cb = project(b, i);
    std::vector<Coord> all = ca;
    all.insert(all.end(), cb.begin(), cb.end());
    total += truncation_count(x.factor(i), ca, cb, effective_depth(depth, all));
    if (tail_separates(ca, cb)) infinite = true;
  }
  return infinite ? Count::infinite() : Count(total);
}

Count walls_between(const CubeComplex& x, std::span<const Point> a, std::span<const Point> b,
                    const CountOptions& opts) {
  if (a.empty() || b.empty()) throw PreconditionError("walls_between needs nonempty point sets");
  require_points(x, a);
  require_points(x, b);
  std::vector<Point> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  const int depth = opts.depth.value_or(default_depth(x, all));
  if (depth < 1) throw PreconditionError("depth must be at least 1");

  std::uint64_t total = 0;
  bool infinite = false;
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const Factor& f = x.factor(i);
    const auto ca = project(a, i);
    const auto cb = project(b, i);
    const auto ci = project(all, i);
    const int d = effective_depth(depth, ci);
    const std::uint64_t n0 = truncation_count(f, ca, cb, d);
    const std::uint64_t n1 = truncation_count(f, ca, cb, d + 1);
    const bool tail = tail_separates(ca, cb);
    ++g_checks;
    if (tail ? !(n1 > n0) : n1 != n0) {
      ++g_failures;
      throw InternalError("wall count did not stabilise in factor " + std::to_string(i) + " at depth " +
                          std::to_string(d) + ": " + std::to_string(n0) + " vs " + std::to_string(n1) +
                          (tail ? " (tail infinite)" : " (tail finite)"));
    }
    total += n0;
    infinite = infinite || tail;
  }
  return infinite ? Count::infinite() : Count(total);
}

Count gromov_product(const CubeComplex& x, const Point& p, const Point& q, const Point& v,
                     const CountOptions& opts) {
  if (!v.is_vertex()) throw PreconditionError("Gromov product basepoint must be a vertex");
  const Point a[] = {v};
  const Point b[] = {p, q};
  CountOptions o = opts;
  if (!o.depth) {
    const Point all[] = {p, q, v};
    o.depth = default_depth(x, all);
  }
  return walls_between(x, a, b, o);
}

Point median_bar(const CubeComplex& x, const Point& p, const Point& q, const Point& r) {
  x.validate(p);
  x.validate(q);
  x.validate(r);
  Point m;
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const Factor& f = x.factor(i);
    const Coord& a = p.coords[i];
    const Coord& b = q.coords[i];
    const Coord& c = r.coords[i];
    std::optional<Coord> on_ray;
    for (const Coord* s : {&a, &b, &c}) {
      if (s->kind == CoordKind::Core) continue;
      const RayIndex ray = s->index;
      std::array<std::uint32_t, 3> d = {f.depth_along(a, ray), f.depth_along(b, ray), f.depth_along(c, ray)};
      std::sort(d.begin(), d.end());
      if (d[1] == 0) continue;
      on_ray = d[1] == std::numeric_limits<std::uint32_t>::max() ? Coord::end(ray) : Coord::ray(ray, d[1]);
      break;
    }
    if (on_ray) {
      m.coords.push_back(*on_ray);
    } else {
      m.coords.push_back(Coord::core(median(f.core(), f.anchor(a), f.anchor(b), f.anchor(c))));
    }
  }
  return m;
}

std::array<Count, 3> pairing_sums(const CubeComplex& x, const Point& p, const Point& q, const Point& r,
                                  const Point& s, const Point& v, const CountOptions& opts) {
  CountOptions o = opts;
  if (!o.depth) {
    const Point all[] = {p, q, r, s, v};
    o.depth = default_depth(x, all);
  }
  auto g = [&](const Point& a, const Point& b) { return gromov_product(x, a, b, v, o); };
  return {g(p, q) + g(r, s), g(p, r) + g(q, s), g(p, s) + g(q, r)};
}

bool is_admissible(const CubeComplex& x, const Point& p, const Point& q, const Point& r, const Point& s) {
  const auto sums = pairing_sums(x, p, q, r, s, x.origin());
  return std::count_if(sums.begin(), sums.end(), [](Count c) { return c.is_infinite(); }) <= 1;
}

namespace {

// Four points followed by every basepoint of the truncation.
struct BasepointFrame {
  std::vector<Point> points;
  std::size_t basepoints = 0;
};

BasepointFrame frame(const CubeComplex& x, std::span<const Point> four, int depth) {
  BasepointFrame fr;
  fr.points.assign(four.begin(), four.end());
  auto verts = truncation_vertices(x, depth);
  fr.basepoints = verts.size();
  fr.points.insert(fr.points.end(), verts.begin(), verts.end());
  return fr;
}

}  // namespace

CrossRatioResult cross_ratio(const CubeComplex& x, const Point& p, const Point& q, const Point& r,
                             const Point& s, const CrossRatioOptions& opts) {
  const Point four[] = {p, q, r, s};
  CrossRatioResult res;
  res.depth = opts.depth.value_or(default_depth(x, four));
  res.admissible = is_admissible(x, p, q, r, s);
  if (!res.admissible && !opts.allow_extended) throw PreconditionError("tuple is not admissible");

  const CountOptions co{res.depth};
  const Point xz[] = {p, r};
  const Point yw[] = {q, s};
  const Point xw[] = {p, s};
  const Point yz[] = {q, r};
  res.pairing_xz_yw = walls_between(x, xz, yw, co);
  res.pairing_xw_yz = walls_between(x, xw, yz, co);
  if (res.pairing_xz_yw.is_infinite() && res.pairing_xw_yz.is_infinite()) {
    throw PreconditionError("both pairing counts are infinite");
  }
  res.value = ExtendedInt::difference(res.pairing_xz_yw, res.pairing_xw_yz);

  if (res.admissible && opts.check_all_basepoints) {
    const BasepointFrame fr = frame(x, four, res.depth);
    const WallCounter wc(x, fr.points, res.depth);
    auto g = [&](std::size_t i, std::size_t j, std::size_t v) {
      const std::size_t a[] = {v};
      const std::size_t b[] = {i, j};
      return wc.between(a, b);
    };
    for (std::size_t k = 0; k < fr.basepoints; ++k) {
      const std::size_t v = 4 + k;
      const Count s1 = g(0, 2, v) + g(1, 3, v);
      const Count s2 = g(0, 3, v) + g(1, 2, v);
      if (s1.is_infinite() && s2.is_infinite()) {
        throw InternalError("basepoint formula undefined at " + x.format(fr.points[v]));
      }
      const ExtendedInt at_v = ExtendedInt::difference(s1, s2);
      if (!(at_v == res.value)) {
        throw InternalError("cross ratio at basepoint " + x.format(fr.points[v]) + " is " + at_v.to_string() +
                            ", wall formula gives " + res.value.to_string());
      }
      ++res.basepoints_checked;
    }
  }
  return res;
}

CrtTriple crt(const CubeComplex& x, const Point& p, const Point& q, const Point& r, const Point& s,
              const CrossRatioOptions& opts) {
  const Point four[] = {p, q, r, s};
  const int depth = opts.depth.value_or(default_depth(x, four));
  const auto sums = pairing_sums(x, p, q, r, s, x.origin(), CountOptions{depth});
  const CrtTriple t = CrtTriple::from_sums(sums[0], sums[1], sums[2]);
  if (opts.check_all_basepoints) {
    const BasepointFrame fr = frame(x, four, depth);
    const WallCounter wc(x, fr.points, depth);
    auto g = [&](std::size_t i, std::size_t j, std::size_t v) {
      const std::size_t a[] = {v};
      const std::size_t b[] = {i, j};
      return wc.between(a, b);
    };
    for (std::size_t k = 0; k < fr.basepoints; ++k) {
      const std::size_t v = 4 + k;
      const CrtTriple at_v = CrtTriple::from_sums(g(0, 1, v) + g(2, 3, v), g(0, 2, v) + g(1, 3, v),
                                                  g(0, 3, v) + g(1, 2, v));
      if (!(at_v == t)) {
        throw InternalError("crt at basepoint " + x.format(fr.points[v]) + " is " + at_v.to_string() +
                            ", at the origin " + t.to_string());
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Truncations and boundary enumeration

namespace {

std::vector<std::vector<Coord>> factor_vertex_coords(const CubeComplex& x, int depth) {
  std::vector<std::vector<Coord>> per;
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const Factor& f = x.factor(i);
    std::vector<Coord> cs;
    for (Vertex v = 0; v < f.core().size(); ++v) cs.push_back(Coord::core(v));
    for (RayIndex r = 0; r < f.ray_count(); ++r) {
      for (int k = 1; k <= depth; ++k) cs.push_back(Coord::ray(r, static_cast<std::uint32_t>(k)));
    }
    std::sort(cs.begin(), cs.end());
    per.push_back(std::move(cs));
  }
  return per;
}

}  // namespace

std::vector<Point> truncation_vertices(const CubeComplex& x, int depth) {
  if (depth < 0) throw PreconditionError("depth must be nonnegative");
  return product_points(factor_vertex_coords(x, depth));
}

Truncation truncate(const CubeComplex& x, int depth) {
  if (depth < 1) throw PreconditionError("truncation depth must be at least 1");
  std::vector<Point> verts = truncation_vertices(x, depth);
  std::vector<std::string> ids;
  ids.reserve(verts.size());
  for (const Point& p : verts) ids.push_back(x.format(p));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    for (const Point& q : x.neighbors(verts[a])) {
      if (!(verts[a] < q)) continue;
      if (!std::binary_search(verts.begin(), verts.end(), q)) continue;
      edges.emplace_back(ids[a], x.format(q));
    }
  }
  Truncation t{MedianGraph(ids, edges), {}};
  t.markers.resize(verts.size());
  for (std::size_t a = 0; a < verts.size(); ++a) t.markers[t.graph.index_of(ids[a])] = verts[a];
  return t;
}

BoundaryEnumeration enumerate_boundary(const CubeComplex& x, int depth) {
  BoundaryEnumeration out;
  if (x.single_factor()) {
    const Factor& f = x.factor(0);
    for (RayIndex r = 0; r < f.ray_count(); ++r) out.points.push_back(Point{{Coord::end(r)}});
    out.complete = true;
    return out;
  }
  auto per = factor_vertex_coords(x, std::max(depth, 0));
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    for (RayIndex r = 0; r < x.factor(i).ray_count(); ++r) per[i].push_back(Coord::end(r));
    std::sort(per[i].begin(), per[i].end());
  }
  for (Point& p : product_points(per)) {
    if (p.is_boundary()) out.points.push_back(std::move(p));
  }
  out.complete = false;
  return out;
}

// ---------------------------------------------------------------------------
// Kernels

WallCounter::WallCounter(const CubeComplex& x, std::span<const Point> points, int depth) {
  require_points(x, points);
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const auto coords = project(points, i);
    const FactorTruncation& t = x.factor(i).truncation(effective_depth(depth, coords));
    FactorMasks fm;
    fm.words = (t.walls.size() + 63) / 64;
    fm.plus.assign(points.size() * fm.words, 0);
    fm.end_ray.resize(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const Vertex v = t.locate(coords[p]);
      for (WallId w = 0; w < t.walls.size(); ++w) {
        if (t.walls.side(w, v) > 0) fm.plus[p * fm.words + w / 64] |= std::uint64_t{1} << (w % 64);
      }
      fm.end_ray[p] = end_ray(coords[p]);
    }
    factors_.push_back(std::move(fm));
  }
}

Count WallCounter::between(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
  std::uint64_t total = 0;
  bool infinite = false;
  for (const FactorMasks& fm : factors_) {
    for (std::size_t w = 0; w < fm.words; ++w) {
      std::uint64_t a_plus = ~std::uint64_t{0};
      std::uint64_t a_minus = ~std::uint64_t{0};
      std::uint64_t b_plus = ~std::uint64_t{0};
      std::uint64_t b_minus = ~std::uint64_t{0};
      for (std::size_t p : a) {
        a_plus &= fm.plus[p * fm.words + w];
        a_minus &= ~fm.plus[p * fm.words + w];
      }
      for (std::size_t p : b) {
        b_plus &= fm.plus[p * fm.words + w];
        b_minus &= ~fm.plus[p * fm.words + w];
      }
      total += static_cast<std::uint64_t>(std::popcount((a_plus & b_minus) | (a_minus & b_plus)));
    }
    auto one_way = [&](std::span<const std::size_t> s, std::span<const std::size_t> t) {
      const int r = fm.end_ray[s.front()];
      if (r < 0) return false;
      return std::all_of(s.begin(), s.end(), [&](std::size_t p) { return fm.end_ray[p] == r; }) &&
             std::none_of(t.begin(), t.end(), [&](std::size_t p) { return fm.end_ray[p] == r; });
    };
    if (one_way(a, b) || one_way(b, a)) infinite = true;
  }
  return infinite ? Count::infinite() : Count(total);
}

GromovTable::GromovTable(const CubeComplex& x, std::span<const Point> points, std::span<const Point> basepoints,
                         int depth, bool parallel)
    : n_(points.size()), b_(basepoints.size()), values_(n_ * n_ * b_) {
  for (const Point& v : basepoints) {
    if (!v.is_vertex()) throw PreconditionError("Gromov product basepoint must be a vertex");
  }
  std::vector<Point> all(points.begin(), points.end());
  all.insert(all.end(), basepoints.begin(), basepoints.end());
  const WallCounter wc(x, all, depth);
  const auto count = static_cast<std::int64_t>(b_);
  auto fill = [&](std::int64_t base) {
    const std::size_t v = n_ + static_cast<std::size_t>(base);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const std::size_t a[] = {v};
        const std::size_t b[] = {i, j};
        const Count c = wc.between(a, b);
        const std::int64_t raw = c.is_infinite() ? kInfinite : static_cast<std::int64_t>(c.value());
        values_[(static_cast<std::size_t>(base) * n_ + i) * n_ + j] = raw;
        values_[(static_cast<std::size_t>(base) * n_ + j) * n_ + i] = raw;
      }
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t base = 0; base < count; ++base) fill(base);
  } else {
    for (std::int64_t base = 0; base < count; ++base) fill(base);
  }
}

Count GromovTable::at(std::size_t base, std::size_t i, std::size_t j) const {
  const std::int64_t r = raw(base, i, j);
  return r == kInfinite ? Count::infinite() : Count(static_cast<std::uint64_t>(r));
}

namespace {

constexpr std::int64_t kInf = GromovTable::kInfinite;

std::int64_t add(std::int64_t a, std::int64_t b) { return (a == kInf || b == kInf) ? kInf : a + b; }

struct TupleOutcome {
  bool admissible = false;
  std::size_t evaluations = 0;
  std::optional<std::string> failure;
};

TupleOutcome check_tuple(const GromovTable& g, const WallCounter& wc, std::size_t i, std::size_t j, std::size_t k,
                         std::size_t l) {
  TupleOutcome out;
  const std::int64_t s[3] = {add(g.raw(0, i, j), g.raw(0, k, l)), add(g.raw(0, i, k), g.raw(0, j, l)),
                             add(g.raw(0, i, l), g.raw(0, j, k))};
  const int infinite = (s[0] == kInf) + (s[1] == kInf) + (s[2] == kInf);
  if (infinite > 1) return out;
  out.admissible = true;

  const std::size_t ik[] = {i, k};
  const std::size_t jl[] = {j, l};
  const std::size_t il[] = {i, l};
  const std::size_t jk[] = {j, k};
  const Count p = wc.between(ik, jl);
  const Count q = wc.between(il, jk);
  if (p.is_infinite() && q.is_infinite()) {
    out.failure = "both pairing counts infinite on an admissible tuple";
    return out;
  }
  const ExtendedInt value = ExtendedInt::difference(p, q);
  for (std::size_t b = 0; b < g.basepoints(); ++b) {
    const std::int64_t s1 = add(g.raw(b, i, k), g.raw(b, j, l));
    const std::int64_t s2 = add(g.raw(b, i, l), g.raw(b, j, k));
    ++out.evaluations;
    if (s1 == kInf && s2 == kInf) {
      out.failure = "basepoint formula undefined at basepoint " + std::to_string(b);
      return out;
    }
    ExtendedInt at_b;
    if (s1 == kInf) {
      at_b = ExtendedInt::plus_infinity();
    } else if (s2 == kInf) {
      at_b = ExtendedInt::minus_infinity();
    } else {
      at_b = ExtendedInt(s1 - s2);
    }
    if (!(at_b == value)) {
      out.failure = "basepoint " + std::to_string(b) + " gives " + at_b.to_string() + ", wall formula gives " +
                    value.to_string();
      return out;
    }
  }
  return out;
}

BasepointSweepReport sweep(const CubeComplex& x, std::span<const Point> points, int depth, bool parallel) {
  BasepointSweepReport rep;
  const std::vector<Point> base = truncation_vertices(x, depth);
  rep.basepoints = base.size();
  const GromovTable g(x, points, base, depth, parallel);
  const WallCounter wc(x, points, depth);
  const std::size_t n = points.size();
  rep.tuples = n * n * n * n;

  std::size_t admissible = 0;
  std::size_t evaluations = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::string detail;
  const auto outer = static_cast<std::int64_t>(n * n);

  auto body = [&](std::int64_t ij, std::size_t& adm, std::size_t& evals, auto&& report) {
    const std::size_t i = static_cast<std::size_t>(ij) / n;
    const std::size_t j = static_cast<std::size_t>(ij) % n;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        const TupleOutcome o = check_tuple(g, wc, i, j, k, l);
        adm += o.admissible;
        evals += o.evaluations;
        if (o.failure) report(((i * n + j) * n + k) * n + l, *o.failure);
      }
    }
  };

  if (parallel) {
#pragma omp parallel reduction(+ : admissible, evaluations)
    {
      std::size_t adm = 0;
      std::size_t evals = 0;
#pragma omp for schedule(dynamic)
      for (std::int64_t ij = 0; ij < outer; ++ij) {
        body(ij, adm, evals, [&](std::size_t key, const std::string& why) {
#pragma omp critical(ccr_sweep_failure)
          if (key < best) {
            best = key;
            detail = why;
          }
        });
      }
      admissible += adm;
      evaluations += evals;
    }
  } else {
    for (std::int64_t ij = 0; ij < outer; ++ij) {
      body(ij, admissible, evaluations, [&](std::size_t key, const std::string& why) {
        if (key < best) {
          best = key;
          detail = why;
        }
      });
    }
  }

  rep.admissible = admissible;
  rep.evaluations = evaluations;
  if (best != std::numeric_limits<std::size_t>::max()) {
    rep.failure = std::array<std::size_t, 4>{best / (n * n * n), (best / (n * n)) % n, (best / n) % n, best % n};
    rep.detail = detail;
  }
  return rep;
}

}  // namespace

BasepointSweepReport basepoint_sweep(const CubeComplex& x, std::span<const Point> points, int depth) {
  return sweep(x, points, depth, true);
}

BasepointSweepReport basepoint_sweep_serial(const CubeComplex& x, std::span<const Point> points, int depth) {
  return sweep(x, points, depth, false);
}

}  // namespace ccr
