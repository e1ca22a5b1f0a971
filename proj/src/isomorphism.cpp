#include "ccr/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ccr/error.hpp"
#include "ccr/rigidity.hpp"
#include "ccr/roller.hpp"

namespace ccr {

NormalForm normal_form(const CubeComplex& x) {
  NormalForm n;
  n.dec = classify_vertices(x);
  n.fat = n.dec.fat;
  const std::size_t k = n.fat.size();
  std::map<Vertex, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[n.fat[i]] = i;
  n.adjacent.assign(k, std::vector<bool>(k, false));
  for (const auto& [u, v] : n.dec.fat_edges) {
    n.adjacent[index[u]][index[v]] = true;
    n.adjacent[index[v]][index[u]] = true;
  }
  n.segment_lengths.assign(k, std::vector<std::vector<std::size_t>>(k));
  for (const SkinnySegment& s : n.dec.segments) {
    const std::size_t i = index[s.u];
    const std::size_t j = index[s.v];
    n.segment_lengths[i][j].push_back(s.length());
    if (i != j) n.segment_lengths[j][i].push_back(s.length());
  }
  for (auto& row : n.segment_lengths)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  n.ray_count.assign(k, 0);
  const std::size_t rays = x.factor(0).ray_count();
  n.ray_base.assign(rays, 0);
  n.ray_prefix.assign(rays, 0);
  for (const SkinnyRay& r : n.dec.rays) {
    const std::size_t i = index[r.base];
    ++n.ray_count[i];
    n.ray_base[r.ray] = i;
    n.ray_prefix[r.ray] = r.core_prefix.size();
  }
  return n;
}

namespace {

struct Matcher {
  const NormalForm& a;
  const NormalForm& b;
  std::vector<std::size_t> map;
  std::vector<bool> used;
  std::vector<std::vector<std::size_t>> out;

  bool local_match(std::size_t i, std::size_t j) const {
    if (a.ray_count[i] != b.ray_count[j]) return false;
    if (a.segment_lengths[i][i] != b.segment_lengths[j][j]) return false;
    const auto deg = [](const NormalForm& n, std::size_t v) {
      return std::count(n.adjacent[v].begin(), n.adjacent[v].end(), true);
    };
    if (deg(a, i) != deg(b, j)) return false;
    std::vector<std::size_t> la;
    std::vector<std::size_t> lb;
    for (const auto& c : a.segment_lengths[i]) la.insert(la.end(), c.begin(), c.end());
    for (const auto& c : b.segment_lengths[j]) lb.insert(lb.end(), c.begin(), c.end());
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    return la == lb;
  }

  void run(std::size_t i) {
    if (i == a.fat.size()) {
      out.push_back(map);
      return;
    }
    for (std::size_t j = 0; j < b.fat.size(); ++j) {
      if (used[j] || !local_match(i, j)) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) {
        ok = a.adjacent[i][p] == b.adjacent[j][map[p]] && a.segment_lengths[i][p] == b.segment_lengths[j][map[p]];
      }
      if (!ok) continue;
      used[j] = true;
      map[i] = j;
      run(i + 1);
      used[j] = false;
    }
  }
};

std::uint64_t factorial(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

std::vector<std::vector<std::size_t>> fat_isomorphisms(const NormalForm& a, const NormalForm& b) {
  if (a.fat.size() != b.fat.size() || a.ray_base.size() != b.ray_base.size()) return {};
  Matcher m{a, b, std::vector<std::size_t>(a.fat.size()), std::vector<bool>(b.fat.size(), false), {}};
  m.run(0);
  return std::move(m.out);
}

std::uint64_t count_isomorphisms(const CubeComplex& x, const CubeComplex& y) {
  const NormalForm a = normal_form(x);
  const NormalForm b = normal_form(y);
  // Each fat bijection extends by permuting rays at a vertex and parallel
  // segments of equal length.
  std::uint64_t per = 1;
  for (std::size_t c : a.ray_count) per *= factorial(c);
  for (std::size_t i = 0; i < a.fat.size(); ++i) {
    for (std::size_t j = i; j < a.fat.size(); ++j) {
      const auto& lens = a.segment_lengths[i][j];
      for (std::size_t s = 0; s < lens.size();) {
        std::size_t e = s;
        while (e < lens.size() && lens[e] == lens[s]) ++e;
        per *= factorial(e - s);
        s = e;
      }
    }
  }
  return per * fat_isomorphisms(a, b).size();
}

bool isomorphic(const CubeComplex& x, const CubeComplex& y) { return count_isomorphisms(x, y) > 0; }

Point CubicalMap::apply(const Point& p) const {
  const Coord& c = p.coords.at(0);
  switch (c.kind) {
    case CoordKind::Core:
      return core_image.at(c.index);
    case CoordKind::End:
      return Point{{Coord::end(ray_image.at(c.index))}};
    case CoordKind::Ray:
      break;
  }
  const std::size_t t = x_prefix.at(c.index) + c.depth;
  const auto& yp = y_prefix.at(c.index);
  if (t <= yp.size()) return Point{{Coord::core(yp[t - 1])}};
  return Point{{Coord::ray(ray_image[c.index], static_cast<std::uint32_t>(t - yp.size()))}};
}

CubicalMap assemble_map(const CubeComplex& x, const CubeComplex& y, const NormalForm& nx, const NormalForm& ny,
                        const std::vector<std::size_t>& fat_map, const std::vector<RayIndex>& ray_map) {
  CubicalMap m;
  m.x = &x;
  m.y = &y;
  m.ray_image = ray_map;
  const std::size_t rays = nx.ray_base.size();
  if (ray_map.size() != rays || ny.ray_base.size() != rays) throw PreconditionError("ray counts differ");
  for (RayIndex r = 0; r < rays; ++r) {
    if (fat_map[nx.ray_base[r]] != ny.ray_base[ray_map[r]]) {
      throw PreconditionError("ray " + x.factor(0).ray_id(r) + " and its image leave non-corresponding vertices");
    }
  }
  std::vector<std::optional<Point>> image(x.factor(0).core().size());
  for (std::size_t i = 0; i < nx.fat.size(); ++i) image[nx.fat[i]] = Point{{Coord::core(ny.fat[fat_map[i]])}};

  for (const SkinnySegment& s : nx.dec.segments) {
    const Vertex fu = ny.fat[fat_map[std::find(nx.fat.begin(), nx.fat.end(), s.u) - nx.fat.begin()]];
    const Vertex fv = ny.fat[fat_map[std::find(nx.fat.begin(), nx.fat.end(), s.v) - nx.fat.begin()]];
    const SkinnySegment* match = nullptr;
    for (const SkinnySegment& t : ny.dec.segments) {
      const bool ends = (t.u == fu && t.v == fv) || (t.u == fv && t.v == fu);
      if (ends && t.length() == s.length()) match = &t;
    }
    if (!match) throw PreconditionError("a segment has no counterpart");
    std::vector<Vertex> target = match->interior;
    if (match->u != fu) std::reverse(target.begin(), target.end());
    for (std::size_t k = 0; k < s.interior.size(); ++k) image[s.interior[k]] = Point{{Coord::core(target[k])}};
  }

  std::vector<const SkinnyRay*> y_ray(rays, nullptr);
  for (const SkinnyRay& r : ny.dec.rays) y_ray[r.ray] = &r;
  m.x_prefix.assign(rays, 0);
  m.y_prefix.assign(rays, {});
  for (const SkinnyRay& r : nx.dec.rays) {
    m.x_prefix[r.ray] = r.core_prefix.size();
    m.y_prefix[r.ray] = y_ray[ray_map[r.ray]]->core_prefix;
  }
  for (const SkinnyRay& r : nx.dec.rays) {
    const auto& yp = m.y_prefix[r.ray];
    for (std::size_t t = 1; t <= r.core_prefix.size(); ++t) {
      image[r.core_prefix[t - 1]] = t <= yp.size()
                                        ? Point{{Coord::core(yp[t - 1])}}
                                        : Point{{Coord::ray(ray_map[r.ray], static_cast<std::uint32_t>(t - yp.size()))}};
    }
  }
  for (const auto& p : image) {
    if (!p) throw InternalError("core vertex left unmapped");
    m.core_image.push_back(*p);
  }
  return m;
}

std::vector<RayIndex> ray_map_of(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy) {
  const CubeComplex& x = ox.complex();
  const CubeComplex& y = oy.complex();
  if (!x.single_factor() || !y.single_factor()) throw PreconditionError("ray maps need single-factor complexes");
  if (f.size() != ox.size() || ox.size() != x.factor(0).ray_count()) {
    throw PreconditionError("map is not a map between full boundaries");
  }
  std::vector<RayIndex> out(x.factor(0).ray_count());
  std::vector<bool> seen(out.size(), false);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Coord& a = ox.point(i).coords[0];
    const Coord& b = oy.point(f[i]).coords[0];
    if (a.kind != CoordKind::End || b.kind != CoordKind::End) throw PreconditionError("oracle point is not a ray end");
    out[a.index] = b.index;
    seen[a.index] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
    throw PreconditionError("map misses a ray end");
  }
  return out;
}

namespace {

std::string refused(const std::string& why) { return "extension refused: " + why; }

void require_eligible(const CubeComplex& x) {
  if (!x.single_factor()) throw PreconditionError(refused(x.name() + " is a product"));
  if (!x.eligibility().eligible()) throw PreconditionError(refused(x.name() + " is not eligible"));
}

}  // namespace

CubicalMap extend_isomorphism(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy) {
  const CubeComplex& x = ox.complex();
  const CubeComplex& y = oy.complex();
  require_eligible(x);
  require_eligible(y);
  const MobiusVerdict verdict = is_mobius(f, ox, oy);
  if (!verdict.injective) throw PreconditionError(refused("map is not injective"));
  if (!verdict.surjective) throw PreconditionError(refused("map is not surjective"));
  if (!verdict.mobius()) throw PreconditionError(refused("map is not Mobius"));
  const std::vector<RayIndex> ray_map = ray_map_of(f, ox, oy);

  const NormalForm nx = normal_form(x);
  const NormalForm ny = normal_form(y);
  const std::size_t k = nx.fat.size();
  if (ny.fat.size() != k) throw InternalError("fat vertex counts differ under a Mobius bijection");

  // F(v) = median in Y of the images of an opposite triple with median v.
  std::vector<std::optional<std::size_t>> fat_map(k);
  const std::size_t n = ox.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        const Point m = median_bar(x, ox.point(a), ox.point(b), ox.point(c));
        if (!m.is_vertex() || m.coords[0].kind != CoordKind::Core) continue;
        const auto fi = std::find(nx.fat.begin(), nx.fat.end(), m.coords[0].index);
        if (fi == nx.fat.end()) continue;
        if (!is_opposite_direct(x, ox.point(a), ox.point(b), ox.point(c))) continue;
        const Point mf = median_bar(y, oy.point(f[a]), oy.point(f[b]), oy.point(f[c]));
        const auto fj = mf.coords[0].kind == CoordKind::Core
                            ? std::find(ny.fat.begin(), ny.fat.end(), mf.coords[0].index)
                            : ny.fat.end();
        if (fj == ny.fat.end()) throw InternalError("image median " + y.format(mf) + " is not a fat vertex");
        const std::size_t i = static_cast<std::size_t>(fi - nx.fat.begin());
        const std::size_t j = static_cast<std::size_t>(fj - ny.fat.begin());
        if (fat_map[i] && *fat_map[i] != j) throw InternalError("opposite triples at one vertex disagree on its image");
        fat_map[i] = j;
      }
  std::vector<std::size_t> fm(k);
  std::vector<bool> hit(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (!fat_map[i]) {
      throw InternalError("fat vertex " + x.factor(0).core().id(nx.fat[i]) + " is not the median of an opposite triple");
    }
    fm[i] = *fat_map[i];
    if (hit[fm[i]]) throw InternalError("two fat vertices share an image");
    hit[fm[i]] = true;
  }
  const MedianGraph& gx = x.factor(0).core();
  const MedianGraph& gy = y.factor(0).core();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (gx.distance(nx.fat[i], nx.fat[j]) != gy.distance(ny.fat[fm[i]], ny.fat[fm[j]])) {
        throw InternalError("F is not an isometry on fat vertices");
      }
    }

  CubicalMap map;
  try {
    map = assemble_map(x, y, nx, ny, fm, ray_map);
  } catch (const PreconditionError& e) {
    throw InternalError(std::string("F does not extend: ") + e.what());
  }

  // Graph isomorphism on a truncation deep enough to see every ray prefix.
  std::size_t deepest = 0;
  for (std::size_t p : nx.ray_prefix) deepest = std::max(deepest, p);
  for (std::size_t p : ny.ray_prefix) deepest = std::max(deepest, p);
  const int depth = static_cast<int>(deepest) + 2;
  const std::vector<Point> verts = truncation_vertices(x, depth);
  std::vector<Point> images;
  for (const Point& v : verts) images.push_back(map.apply(v));
  std::set<Point> distinct(images.begin(), images.end());
  if (distinct.size() != images.size()) throw InternalError("F is not injective");
  for (Vertex v = 0; v < gy.size(); ++v) {
    if (!distinct.count(Point{{Coord::core(v)}})) throw InternalError("F misses core vertex " + gy.id(v));
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (x.neighbors(verts[i]).size() != y.neighbors(images[i]).size()) throw InternalError("F changes a degree");
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (x.adjacent(verts[i], verts[j]) != y.adjacent(images[i], images[j])) {
        throw InternalError("F does not preserve adjacency at " + x.format(verts[i]) + ", " + x.format(verts[j]));
      }
    }
  }

  // The boundary map of F is f: ends go to ends and medians to medians.
  for (std::size_t a = 0; a < n; ++a) {
    if (map.apply(ox.point(a)) != oy.point(f[a])) throw InternalError("F does not induce f on the boundary");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Point m = median_bar(x, ox.point(a), ox.point(b), ox.point(c));
        if (!m.is_vertex()) continue;
        if (map.apply(m) != median_bar(y, oy.point(f[a]), oy.point(f[b]), oy.point(f[c]))) {
          throw InternalError("F does not carry medians to image medians");
        }
      }
  }
  return map;
}

UniquenessReport verify_uniqueness(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy,
                                   const CubicalMap& map) {
  const CubeComplex& x = ox.complex();
  const CubeComplex& y = oy.complex();
  UniquenessReport out;
  out.isomorphisms = count_isomorphisms(x, y);
  const NormalForm nx = normal_form(x);
  const NormalForm ny = normal_form(y);
  const std::vector<RayIndex> ray_map = ray_map_of(f, ox, oy);
  for (const auto& fm : fat_isomorphisms(nx, ny)) {
    bool compatible = true;
    for (RayIndex r = 0; r < ray_map.size() && compatible; ++r) {
      compatible = fm[nx.ray_base[r]] == ny.ray_base[ray_map[r]];
    }
    if (!compatible) continue;
    ++out.extending;
    out.matches = assemble_map(x, y, nx, ny, fm, ray_map) == map;
  }
  if (out.extending != 1) out.matches = false;
  return out;
}

}  // namespace ccr
