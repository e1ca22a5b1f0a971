#include "ccr/lines.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ccr/error.hpp"

namespace ccr {

namespace {

std::size_t differing_factor(const CubeComplex& x, const Point& a, const Point& b) {
  if (!x.adjacent(a, b)) {
    throw PreconditionError("vertices " + x.format(a) + " and " + x.format(b) + " are not adjacent");
  }
  for (std::size_t i = 0; i < x.factor_count(); ++i) {
    if (a.coords[i] != b.coords[i]) return i;
  }
  throw InternalError("adjacent points do not differ");
}

// The tail continues outward from `c` along ray r: c is the attach vertex or
// already on r.
bool tail_starts_at(const Factor& f, const Coord& c, RayIndex r) {
  if (c.kind == CoordKind::Core) return f.ray_attach(r) == c.index;
  return c.kind == CoordKind::Ray && c.index == r;
}

std::uint32_t tail_start_depth(const Coord& c) { return c.kind == CoordKind::Ray ? c.depth : 0; }

bool is_outward_step(const Coord& from, const Coord& to) {
  if (to.kind != CoordKind::Ray) return false;
  if (from.kind == CoordKind::Core) return to.depth == 1;
  return from.kind == CoordKind::Ray && from.index == to.index && to.depth == from.depth + 1;
}

}  // namespace

WallDescriptor wall_of_edge(const CubeComplex& x, const Point& a, const Point& b) {
  const std::size_t i = differing_factor(x, a, b);
  const Factor& f = x.factor(i);
  const Coord& ca = a.coords[i];
  const Coord& cb = b.coords[i];
  WallDescriptor w;
  w.factor = i;
  if (ca.kind == CoordKind::Core && cb.kind == CoordKind::Core) {
    w.index = f.core_walls().wall_of_edge(f.core().edge_index(ca.index, cb.index));
    return w;
  }
  const Coord& deeper = (ca.kind == CoordKind::Ray && (cb.kind != CoordKind::Ray || ca.depth > cb.depth)) ? ca : cb;
  w.on_ray = true;
  w.index = deeper.index;
  w.depth = deeper.depth;
  return w;
}

std::vector<WallDescriptor> adjacent_walls(const CubeComplex& x, const Point& v) {
  std::vector<WallDescriptor> out;
  for (const Point& n : x.neighbors(v)) out.push_back(wall_of_edge(x, v, n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool transverse(const CubeComplex& x, const WallDescriptor& w1, const WallDescriptor& w2) {
  if (w1 == w2) throw PreconditionError("a wall is not transverse to itself");
  if (w1.factor != w2.factor) return true;
  if (w1.on_ray || w2.on_ray) return false;
  return transverse(x.factor(w1.factor).core_walls(), w1.index, w2.index);
}

Point ray_end(const SymbolicRay& r) {
  Point p = r.prefix.back();
  p.coords[r.factor] = Coord::end(r.ray);
  return p;
}

std::vector<WallDescriptor> prefix_walls(const CubeComplex& x, const SymbolicRay& r) {
  if (r.prefix.empty()) throw PreconditionError("ray has an empty prefix");
  for (const Point& p : r.prefix) {
    x.validate(p);
    if (!p.is_vertex()) throw PreconditionError("ray prefix contains a boundary point");
  }
  if (r.factor >= x.factor_count() || r.ray >= x.factor(r.factor).ray_count()) {
    throw PreconditionError("ray tail names an unknown ray");
  }
  const Coord& last = r.prefix.back().coords[r.factor];
  if (!tail_starts_at(x.factor(r.factor), last, r.ray)) {
    throw PreconditionError("ray tail does not start at the end of the prefix");
  }
  std::vector<WallDescriptor> walls;
  std::set<WallDescriptor> seen;
  for (std::size_t i = 0; i + 1 < r.prefix.size(); ++i) {
    const WallDescriptor w = wall_of_edge(x, r.prefix[i], r.prefix[i + 1]);
    if (!seen.insert(w).second) throw PreconditionError("ray is not a geodesic: a wall is crossed twice");
    walls.push_back(w);
  }
  const std::uint32_t k0 = tail_start_depth(last);
  for (const WallDescriptor& w : walls) {
    if (w.factor == r.factor && w.on_ray && w.index == r.ray && w.depth > k0) {
      throw PreconditionError("ray is not a geodesic: the tail recrosses a prefix wall");
    }
  }
  return walls;
}

std::vector<WallDescriptor> base_adjacent_walls(const CubeComplex& x, const SymbolicRay& r) {
  const std::vector<WallDescriptor> crossed = prefix_walls(x, r);
  const std::vector<WallDescriptor> at_base = adjacent_walls(x, r.prefix.front());
  const std::uint32_t k0 = tail_start_depth(r.prefix.back().coords[r.factor]);
  std::vector<WallDescriptor> out;
  for (const WallDescriptor& w : at_base) {
    const bool in_prefix = std::find(crossed.begin(), crossed.end(), w) != crossed.end();
    const bool in_tail = w.factor == r.factor && w.on_ray && w.index == r.ray && w.depth > k0;
    if (in_prefix || in_tail) out.push_back(w);
  }
  return out;
}

bool is_line_union(const CubeComplex& x, const SymbolicRay& r1, const SymbolicRay& r2) {
  if (r1.prefix.empty() || r2.prefix.empty() || r1.prefix.front() != r2.prefix.front()) {
    throw PreconditionError("rays have different base vertices");
  }
  const auto w1 = base_adjacent_walls(x, r1);
  const auto w2 = base_adjacent_walls(x, r2);
  std::vector<WallDescriptor> common;
  std::set_intersection(w1.begin(), w1.end(), w2.begin(), w2.end(), std::back_inserter(common));
  return common.empty();
}

namespace {

// Extends from path.back() until a ray tail is entered; returns the tail.
std::pair<std::size_t, RayIndex> extend_end(const CubeComplex& x, std::vector<Point>& path,
                                            std::vector<WallDescriptor>& crossed) {
  for (std::size_t guard = 0; guard < 1000000; ++guard) {
    const Point e = path.back();
    std::vector<std::pair<std::string, Point>> cands;
    for (const Point& n : x.neighbors(e)) cands.emplace_back(x.format(n), n);
    std::sort(cands.begin(), cands.end());
    bool moved = false;
    for (const auto& [id, n] : cands) {
      const WallDescriptor w = wall_of_edge(x, e, n);
      if (std::find(crossed.begin(), crossed.end(), w) != crossed.end()) continue;
      if (std::any_of(crossed.begin(), crossed.end(), [&](const WallDescriptor& c) { return transverse(x, c, w); })) {
        continue;
      }
      const std::size_t f = w.factor;
      if (is_outward_step(e.coords[f], n.coords[f])) return {f, n.coords[f].index};
      crossed.push_back(w);
      path.push_back(n);
      moved = true;
      break;
    }
    if (!moved) {
      throw PreconditionError("straight extension is stuck at " + x.format(e) + " (extremal vertex)");
    }
  }
  throw InternalError("straight extension did not terminate");
}

}  // namespace

StraightLine extend_to_straight_line(const CubeComplex& x, const Point& a, const Point& b) {
  std::vector<WallDescriptor> crossed = {wall_of_edge(x, a, b)};
  std::vector<Point> a_side = {a};
  std::vector<Point> b_side = {b};
  StraightLine line;

  const Coord& ca = a.coords[crossed[0].factor];
  const Coord& cb = b.coords[crossed[0].factor];
  if (is_outward_step(ca, cb)) {
    // The edge already lies on a ray: the b-end is that ray's tail.
    auto [f, r] = extend_end(x, a_side, crossed);
    line.away = SymbolicRay{a_side, f, r};
    line.through = SymbolicRay{{a, b}, crossed[0].factor, cb.index};
    return line;
  }
  auto [fa, ra] = extend_end(x, a_side, crossed);
  line.away = SymbolicRay{a_side, fa, ra};
  auto [fb, rb] = extend_end(x, b_side, crossed);
  std::vector<Point> through = {a};
  through.insert(through.end(), b_side.begin(), b_side.end());
  line.through = SymbolicRay{through, fb, rb};
  return line;
}

std::vector<WallDescriptor> line_walls(const CubeComplex& x, const StraightLine& line) {
  auto away = prefix_walls(x, line.away);
  std::reverse(away.begin(), away.end());
  const auto through = prefix_walls(x, line.through);
  away.insert(away.end(), through.begin(), through.end());
  return away;
}

}  // namespace ccr
