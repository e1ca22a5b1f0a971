#include "ccr/rigidity.hpp"

#include <algorithm>
#include <limits>

#include "ccr/error.hpp"
#include "ccr/roller.hpp"

namespace ccr {

bool separates(const CubeComplex& x, const WallDescriptor& w, const Point& m, const Point& p) {
  const Factor& f = x.factor(w.factor);
  const Coord& cm = m.coords[w.factor];
  const Coord& cp = p.coords[w.factor];
  if (!w.on_ray) return f.core_walls().separates(w.index, f.anchor(cm), f.anchor(cp));
  const bool far_m = f.depth_along(cm, w.index) >= w.depth;
  const bool far_p = f.depth_along(cp, w.index) >= w.depth;
  return far_m != far_p;
}

std::vector<WallDescriptor> adjacent_walls_toward(const CubeComplex& x, const Point& m, const Point& p) {
  std::vector<WallDescriptor> out;
  for (const WallDescriptor& w : adjacent_walls(x, m)) {
    if (separates(x, w, m, p)) out.push_back(w);
  }
  return out;
}

bool is_opposite_direct(const CubeComplex& x, const Point& p, const Point& q, const Point& r) {
  const Point m = median_bar(x, p, q, r);
  if (!m.is_vertex()) return false;
  const auto wp = adjacent_walls_toward(x, m, p);
  const auto wq = adjacent_walls_toward(x, m, q);
  for (const WallDescriptor& a : wp) {
    for (const WallDescriptor& b : wq) {
      if (a == b) throw InternalError("median is separated from both points by one wall");
      if (transverse(x, a, b)) return false;
    }
  }
  return true;
}

bool is_straight_pair_direct(const CubeComplex& x, const Point& p, const Point& q) {
  std::optional<std::size_t> moving;
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    const Coord& a = p.coords[i];
    const Coord& b = q.coords[i];
    if (a == b) {
      if (!a.is_vertex()) return false;  // the interval stays at infinity in this factor
      continue;
    }
    if (moving) return false;
    moving = i;
  }
  if (!moving) return false;
  const Factor& f = x.factor(*moving);
  const Coord& a = p.coords[*moving];
  const Coord& b = q.coords[*moving];
  if (a.kind != CoordKind::End || b.kind != CoordKind::End) return false;
  const Vertex u = f.ray_attach(a.index);
  const Vertex v = f.ray_attach(b.index);
  return interval(f.core(), u, v).size() == static_cast<std::size_t>(f.core().distance(u, v)) + 1;
}

bool is_straight_point_direct(const CubeComplex& x, const Point& p) {
  (void)x;
  return std::count_if(p.coords.begin(), p.coords.end(), [](const Coord& c) { return c.kind == CoordKind::End; }) == 1;
}

// ---------------------------------------------------------------------------

void require_pairwise_admissible(const CrossRatioOracle& o, std::size_t a, std::size_t b, std::size_t c) {
  const std::array<std::array<std::size_t, 2>, 3> pairs{{{a, b}, {a, c}, {b, c}}};
  for (const auto& [i, j] : pairs) {
    if (!o.admissible(i, i, j, j)) {
      throw PreconditionError("(" + o.points()[i] + "," + o.points()[i] + "," + o.points()[j] + "," +
                              o.points()[j] + ") is not admissible");
    }
  }
}

OppositeVerdict is_opposite_oracle(const CrossRatioOracle& o, std::size_t x1, std::size_t x2, std::size_t y) {
  require_pairwise_admissible(o, x1, x2, y);
  for (std::size_t z = 0; z < o.size(); ++z) {
    if (o.crt(x1, x2, y, z).is_witness_pattern()) return {false, z};
  }
  return {true, std::nullopt};
}

bool is_straight_pair_oracle(const CrossRatioOracle& o, std::size_t x, std::size_t y) {
  if (!o.admissible(x, x, y, y)) return false;
  const std::size_t n = o.size();
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t w = 0; w < n; ++w) {
      if (o.crt(x, y, z, w).is_witness_pattern()) return false;
    }
  }
  return true;
}

bool is_straight_point_oracle(const CrossRatioOracle& o, std::size_t x) {
  for (std::size_t y = 0; y < o.size(); ++y) {
    if (y != x && is_straight_pair_oracle(o, x, y)) return true;
  }
  return false;
}

std::vector<std::size_t> straight_points(const CrossRatioOracle& o) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < o.size(); ++x) {
    if (is_straight_point_oracle(o, x)) out.push_back(x);
  }
  return out;
}

bool is_skinny_ray_oracle(const CrossRatioOracle& o, std::size_t x, std::size_t y, std::size_t z,
                          const std::vector<std::size_t>& straight) {
  if (x == y || x == z || y == z) return false;
  if (!is_opposite_oracle(o, x, y, z).opposite) return false;
  for (std::size_t w : straight) {
    if (w == x) continue;
    if (o.crt(x, y, z, w)[2] != Count(0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

void require_admissible(const CrossRatioOracle& o, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  if (!o.admissible(a, b, c, d)) {
    throw PreconditionError("(" + o.points()[a] + "," + o.points()[b] + "," + o.points()[c] + "," + o.points()[d] +
                            ") is not admissible");
  }
}

std::optional<std::uint64_t> shift(Count raw, Count canonical) {
  if (raw.is_infinite() != canonical.is_infinite()) throw InternalError("crt shift changes finiteness");
  if (raw.is_infinite()) return std::nullopt;
  if (raw.value() < canonical.value()) throw InternalError("negative crt shift");
  return raw.value() - canonical.value();
}

}  // namespace

MedianProducts recover_products_at_median(const CrossRatioOracle& o, const OppositeTriple& t, std::size_t u) {
  require_admissible(o, t.x1, t.x2, t.x, u);
  const CrtTriple c = o.crt(t.x1, t.x2, t.x, u);
  return {c[0], c[1], c[2]};
}

Count recover_pair_product(const CrossRatioOracle& o, const OppositeTriple& t, std::size_t u, std::size_t v) {
  if (u == v) return Count::infinite();
  require_admissible(o, t.x1, t.x2, u, v);
  const MedianProducts pu = recover_products_at_median(o, t, u);
  const MedianProducts pv = recover_products_at_median(o, t, v);
  const Count b = pu.x1_u + pv.x2_u;  // (x1.u) + (x2.v)
  const Count c = pv.x1_u + pu.x2_u;  // (x1.v) + (x2.u)
  const CrtTriple k = o.crt(t.x1, t.x2, u, v);
  const auto nb = shift(b, k[1]);
  const auto nc = shift(c, k[2]);
  if (nb && nc && *nb != *nc) {
    throw InternalError("inconsistent crt shift for (" + o.points()[u] + "," + o.points()[v] + "): " +
                        std::to_string(*nb) + " vs " + std::to_string(*nc));
  }
  if (!nb && !nc) throw InternalError("both pairing sums are infinite in an admissible tuple");
  const std::uint64_t n = nb ? *nb : *nc;
  if (k[0].is_infinite()) return Count::infinite();
  return Count(k[0].value() + n);
}

std::uint64_t median_class_distance(const CrossRatioOracle& o, const OppositeTriple& t1, const OppositeTriple& t2) {
  const Count a = recover_pair_product(o, t1, t2.x1, t2.x2);
  const Count b = recover_pair_product(o, t1, t2.x1, t2.x);
  const Count c = recover_pair_product(o, t1, t2.x2, t2.x);
  if (a.is_infinite() || b.is_infinite() || c.is_infinite()) {
    throw PreconditionError("a Gromov product needed for the median distance is infinite");
  }
  const std::uint64_t bv = b.value();
  const std::uint64_t cv = c.value();
  return a.value() + (bv > cv ? bv - cv : cv - bv);
}

// ---------------------------------------------------------------------------

namespace {

struct Sweep {
  std::uint64_t key = std::numeric_limits<std::uint64_t>::max();
  std::optional<MobiusFailure> failure;
};

std::optional<MobiusFailure> check_tuple(const std::vector<std::size_t>& f, const CrossRatioOracle& from,
                                         const CrossRatioOracle& to, const Quad& q) {
  if (!from.admissible(q)) return std::nullopt;
  const Quad img{f[q[0]], f[q[1]], f[q[2]], f[q[3]]};
  MobiusFailure m;
  m.tuple = q;
  m.domain_crt = from.crt(q);
  m.image_admissible = to.admissible(img);
  if (m.image_admissible) {
    m.image_crt = to.crt(img);
    if (m.image_crt == m.domain_crt) return std::nullopt;
  }
  return m;
}

std::uint64_t tuple_key(const Quad& q, std::size_t n) {
  const bool distinct = q[0] != q[1] && q[0] != q[2] && q[0] != q[3] && q[1] != q[2] && q[1] != q[3] && q[2] != q[3];
  const std::uint64_t nn = n;
  const std::uint64_t linear = ((q[0] * nn + q[1]) * nn + q[2]) * nn + q[3];
  return (distinct ? 0 : nn * nn * nn * nn) + linear;
}

std::optional<MobiusFailure> sweep(const std::vector<std::size_t>& f, const CrossRatioOracle& from,
                                   const CrossRatioOracle& to, bool parallel) {
  const std::size_t n = from.size();
  const long long outer = static_cast<long long>(n * n);
  Sweep best;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long ab = 0; ab < outer; ++ab) {
    const std::size_t a = static_cast<std::size_t>(ab) / n;
    const std::size_t b = static_cast<std::size_t>(ab) % n;
    Sweep local;
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t d = 0; d < n; ++d) {
        const Quad q{a, b, c, d};
        const std::uint64_t key = tuple_key(q, n);
        if (key >= local.key) continue;
        if (auto m = check_tuple(f, from, to, q)) {
          local.key = key;
          local.failure = m;
        }
      }
    }
    if (local.failure) {
#pragma omp critical(ccr_mobius_sweep)
      if (local.key < best.key) best = local;
    }
  }
  return best.failure;
}

MobiusVerdict mobius(const std::vector<std::size_t>& f, const CrossRatioOracle& from, const CrossRatioOracle& to,
                     bool parallel) {
  if (f.size() != from.size()) throw PreconditionError("map is not total on the domain points");
  std::vector<int> hits(to.size(), 0);
  for (std::size_t v : f) {
    if (v >= to.size()) throw PreconditionError("map sends a point outside the target");
    ++hits[v];
  }
  MobiusVerdict out;
  out.injective = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  out.surjective = std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; });
  out.counterexample = sweep(f, from, to, parallel);
  out.forward_ok = !out.counterexample;
  if (out.bijective()) {
    std::vector<std::size_t> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[f[i]] = i;
    out.inverse_counterexample = sweep(g, to, from, parallel);
    out.inverse_ok = !out.inverse_counterexample;
  }
  return out;
}

}  // namespace

MobiusVerdict is_mobius(const std::vector<std::size_t>& f, const CrossRatioOracle& from, const CrossRatioOracle& to) {
  return mobius(f, from, to, true);
}

MobiusVerdict is_mobius_serial(const std::vector<std::size_t>& f, const CrossRatioOracle& from,
                               const CrossRatioOracle& to) {
  return mobius(f, from, to, false);
}

std::string describe(const MobiusFailure& m, const CrossRatioOracle& from, const CrossRatioOracle& to,
                     const std::vector<std::size_t>& f) {
  auto tuple = [](const CrossRatioOracle& o, const Quad& q) {
    return "(" + o.points()[q[0]] + "," + o.points()[q[1]] + "," + o.points()[q[2]] + "," + o.points()[q[3]] + ")";
  };
  const Quad img{f[m.tuple[0]], f[m.tuple[1]], f[m.tuple[2]], f[m.tuple[3]]};
  std::string s = tuple(from, m.tuple) + " -> " + tuple(to, img) + ": " + m.domain_crt.to_string();
  if (!m.image_admissible) return s + " maps to a non-admissible tuple";
  return s + " vs " + m.image_crt.to_string();
}

}  // namespace ccr
