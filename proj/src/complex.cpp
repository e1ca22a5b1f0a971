#include "ccr/complex.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>

#include "ccr/error.hpp"

namespace ccr {

namespace {

constexpr std::uint32_t kEndDepth = std::numeric_limits<std::uint32_t>::max();

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char ch : id) {
    if (ch == ':' || ch == ',' || ch == '(' || ch == ')' || ch == '=' || ch == '#' ||
        static_cast<unsigned char>(ch) <= ' ') {
      return false;
    }
  }
  return true;
}

void require_id(std::string_view id, std::string_view what) {
  if (!valid_id(id)) throw InputError("invalid " + std::string(what) + " id '" + std::string(id) + "'");
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

bool Point::is_vertex() const {
  return std::all_of(coords.begin(), coords.end(), [](const Coord& c) { return c.is_vertex(); });
}

// ---------------------------------------------------------------------------
// FactorTruncation

Vertex FactorTruncation::locate(const Coord& c) const {
  switch (c.kind) {
    case CoordKind::Core:
      return core_vertex[c.index];
    case CoordKind::Ray:
      if (c.depth == 0) throw PreconditionError("ray coordinate with depth 0");
      if (c.depth > static_cast<std::uint32_t>(depth)) {
        throw PreconditionError("ray vertex at depth " + std::to_string(c.depth) +
                                " lies outside the depth-" + std::to_string(depth) + " truncation");
      }
      return ray_vertex[c.index][c.depth - 1];
    case CoordKind::End:
      return ray_vertex[c.index].back();
  }
  throw InternalError("bad coordinate kind");
}

namespace {

std::unique_ptr<FactorTruncation> build_truncation(const Factor& f, int depth) {
  if (depth < 1) throw PreconditionError("truncation depth must be at least 1");
  const MedianGraph& core = f.core();
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<Coord> coords;
  auto ray_name = [&](RayIndex r, int k) {
    return "r:" + f.ray_id(r) + ":" + std::to_string(k);
  };
  for (Vertex v = 0; v < core.size(); ++v) {
    ids.push_back("v:" + core.id(v));
    coords.push_back(Coord::core(v));
  }
  for (const Edge& e : core.edges()) edges.emplace_back("v:" + core.id(e.u), "v:" + core.id(e.v));
  for (RayIndex r = 0; r < f.ray_count(); ++r) {
    for (int k = 1; k <= depth; ++k) {
      ids.push_back(ray_name(r, k));
      coords.push_back(Coord::ray(r, static_cast<std::uint32_t>(k)));
      edges.emplace_back(k == 1 ? "v:" + core.id(f.ray_attach(r)) : ray_name(r, k - 1), ray_name(r, k));
    }
  }

  MedianGraph graph(ids, edges);
  WallSystem walls(graph);
  auto t = std::make_unique<FactorTruncation>(
      FactorTruncation{depth, std::move(graph), std::move(walls), {}, {}, {}, {}, {}});
  t->markers.resize(t->graph.size());
  t->core_vertex.resize(core.size());
  t->ray_vertex.assign(f.ray_count(), std::vector<Vertex>(static_cast<std::size_t>(depth)));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Vertex tv = t->graph.index_of(ids[i]);
    const Coord& c = coords[i];
    t->markers[tv] = c;
    if (c.kind == CoordKind::Core) {
      t->core_vertex[c.index] = tv;
    } else {
      t->ray_vertex[c.index][c.depth - 1] = tv;
    }
  }

  t->core_wall_of.assign(t->walls.size(), std::nullopt);
  t->ray_wall_of.assign(t->walls.size(), std::nullopt);
  for (WallId w = 0; w < t->walls.size(); ++w) {
    const Edge& e = t->graph.edges()[t->walls.wall(w).edges.front()];
    const Coord& a = t->markers[e.u];
    const Coord& b = t->markers[e.v];
    if (a.kind == CoordKind::Core && b.kind == CoordKind::Core) {
      t->core_wall_of[w] = f.core_walls().wall_of_edge(core.edge_index(a.index, b.index));
    } else {
      const Coord& deeper = (a.kind == CoordKind::Ray && (b.kind != CoordKind::Ray || a.depth > b.depth)) ? a : b;
      t->ray_wall_of[w] = FactorTruncation::RayWall{deeper.index, deeper.depth};
    }
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Factor

struct Factor::Cache {
  std::shared_mutex mutex;
  std::map<int, std::unique_ptr<FactorTruncation>> by_depth;
};

namespace {

MedianGraph checked_core(const FactorDescription& desc, std::size_t position) {
  const std::string where = "factor " + std::to_string(position) + ": ";
  try {
    for (const auto& v : desc.vertices) require_id(v, "vertex");
    MedianGraph g(desc.vertices, desc.edges);
    const MedianValidation report = validate_median_graph(g);
    if (report.status == MedianValidation::Status::Disconnected) throw InputError("core is disconnected");
    if (!report.ok()) {
      const auto& t = *report.triple;
      throw InputError("core is not a median graph: triple (" + g.id(t[0]) + "," + g.id(t[1]) + "," +
                       g.id(t[2]) + ") has " + std::to_string(report.medians_found) + " medians");
    }
    return g;
  } catch (const InputError& e) {
    throw InputError(where + e.what());
  }
}

}  // namespace

Factor::Factor(const FactorDescription& desc, std::size_t position)
    : core_(checked_core(desc, position)), core_walls_(core_), cache_(std::make_unique<Cache>()) {
  std::vector<std::pair<std::string, std::string>> rays = desc.rays;
  std::sort(rays.begin(), rays.end());
  rays_at_.resize(core_.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const auto& [id, at] = rays[i];
    require_id(id, "ray");
    if (i > 0 && rays[i - 1].first == id) {
      throw InputError("factor " + std::to_string(position) + ": duplicate ray id '" + id + "'");
    }
    auto v = core_.find(at);
    if (!v) {
      throw InputError("factor " + std::to_string(position) + ": ray '" + id +
                       "' attached to unknown vertex '" + at + "'");
    }
    ray_ids_.push_back(id);
    ray_attach_.push_back(*v);
    rays_at_[*v].push_back(static_cast<RayIndex>(i));
  }
}

Factor::Factor(Factor&&) noexcept = default;
Factor& Factor::operator=(Factor&&) noexcept = default;
Factor::~Factor() = default;

std::optional<RayIndex> Factor::find_ray(std::string_view id) const {
  auto it = std::lower_bound(ray_ids_.begin(), ray_ids_.end(), id);
  if (it == ray_ids_.end() || *it != id) return std::nullopt;
  return static_cast<RayIndex>(it - ray_ids_.begin());
}

bool Factor::is_line() const {
  if (ray_ids_.size() != 2) return false;
  for (Vertex v = 0; v < core_.size(); ++v) {
    if (degree(v) != 2) return false;
  }
  return true;
}

Vertex Factor::anchor(const Coord& c) const {
  return c.kind == CoordKind::Core ? c.index : ray_attach_[c.index];
}

std::uint32_t Factor::depth_along(const Coord& c, RayIndex r) const {
  if (c.kind == CoordKind::Core || c.index != r) return 0;
  return c.kind == CoordKind::End ? kEndDepth : c.depth;
}

std::vector<Coord> Factor::neighbors(const Coord& c) const {
  std::vector<Coord> out;
  switch (c.kind) {
    case CoordKind::Core:
      for (Vertex u : core_.neighbors(c.index)) out.push_back(Coord::core(u));
      for (RayIndex r : rays_at_[c.index]) out.push_back(Coord::ray(r, 1));
      break;
    case CoordKind::Ray:
      out.push_back(c.depth == 1 ? Coord::core(ray_attach_[c.index]) : Coord::ray(c.index, c.depth - 1));
      out.push_back(Coord::ray(c.index, c.depth + 1));
      break;
    case CoordKind::End:
      throw PreconditionError("a ray end has no neighbours");
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Factor::adjacent(const Coord& a, const Coord& b) const {
  if (!a.is_vertex() || !b.is_vertex()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

const FactorTruncation& Factor::truncation(int depth) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->by_depth.find(depth);
    if (it != cache_->by_depth.end()) return *it->second;
  }
  auto built = build_truncation(*this, depth);
  std::unique_lock lock(cache_->mutex);
  auto [it, inserted] = cache_->by_depth.try_emplace(depth, std::move(built));
  return *it->second;
}

std::string Factor::format(const Coord& c) const {
  switch (c.kind) {
    case CoordKind::Core: return "v:" + core_.id(c.index);
    case CoordKind::Ray: return "r:" + ray_ids_[c.index] + ":" + std::to_string(c.depth);
    case CoordKind::End: return "end:" + ray_ids_[c.index];
  }
  return {};
}

void Factor::validate(const Coord& c) const {
  if (c.kind == CoordKind::Core) {
    if (c.index >= core_.size()) throw InputError("core vertex index out of range");
    return;
  }
  if (c.index >= ray_ids_.size()) throw InputError("ray index out of range");
  if (c.kind == CoordKind::Ray && c.depth == 0) throw InputError("ray depth must be at least 1");
}

// ---------------------------------------------------------------------------
// CubeComplex

CubeComplex CubeComplex::load(const ComplexDescription& desc) {
  CubeComplex x;
  x.name_ = desc.name;
  if (desc.factors.empty()) throw InputError("complex must have at least one factor");
  for (std::size_t i = 0; i < desc.factors.size(); ++i) x.factors_.emplace_back(desc.factors[i], i);

  std::set<std::string> seen;
  for (const auto& alias : desc.points) {
    require_id(alias.name, "point");
    if (!seen.insert(alias.name).second) throw InputError("duplicate point alias '" + alias.name + "'");
    try {
      x.aliases_.emplace_back(alias.name, x.from_raw(alias.coords));
    } catch (const InputError& e) {
      throw InputError("point '" + alias.name + "': " + e.what());
    }
  }
  std::sort(x.aliases_.begin(), x.aliases_.end());

  EligibilityReport& report = x.eligibility_;
  std::size_t non_point = 0;
  std::size_t line_factors = 0;
  for (std::size_t i = 0; i < x.factors_.size(); ++i) {
    const Factor& f = x.factors_[i];
    if (f.is_point()) continue;
    ++non_point;
    if (f.is_line()) ++line_factors;
    const FactorTruncation& t = f.truncation(1);
    for (Vertex v = 0; v < f.core().size(); ++v) {
      if (link_data(t.graph, t.walls, t.core_vertex[v]).is_cone()) {
        report.extremal_vertices.emplace_back(i, f.core().id(v));
      }
    }
  }
  report.is_point = non_point == 0;
  report.is_line = non_point == 1 && line_factors == 1;
  return x;
}

int CubeComplex::core_diameter() const {
  int d = 0;
  for (const Factor& f : factors_) d = std::max(d, f.core().diameter());
  return d;
}

Point CubeComplex::origin() const {
  Point p;
  p.coords.assign(factors_.size(), Coord::core(0));
  return p;
}

std::uint32_t CubeComplex::max_depth(std::span<const Point> points) {
  std::uint32_t d = 0;
  for (const Point& p : points) {
    for (const Coord& c : p.coords) {
      if (c.kind == CoordKind::Ray) d = std::max(d, c.depth);
    }
  }
  return d;
}

std::string CubeComplex::format(const Point& p) const {
  std::string s = "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) s += ",";
    s += factors_[i].format(p.coords[i]);
  }
  return s + ")";
}

Point CubeComplex::from_raw(const std::vector<RawCoord>& raw) const {
  if (raw.size() != factors_.size()) {
    throw InputError("expected " + std::to_string(factors_.size()) + " coordinates, got " +
                     std::to_string(raw.size()));
  }
  Point p;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Factor& f = factors_[i];
    const RawCoord& rc = raw[i];
    if (rc.kind == CoordKind::Core) {
      auto v = f.core().find(rc.id);
      if (!v) throw InputError("unknown vertex '" + rc.id + "' in factor " + std::to_string(i));
      p.coords.push_back(Coord::core(*v));
      continue;
    }
    auto r = f.find_ray(rc.id);
    if (!r) throw InputError("unknown ray '" + rc.id + "' in factor " + std::to_string(i));
    if (rc.kind == CoordKind::Ray) {
      if (rc.depth == 0) throw InputError("ray depth must be at least 1");
      p.coords.push_back(Coord::ray(*r, rc.depth));
    } else {
      p.coords.push_back(Coord::end(*r));
    }
  }
  return p;
}

std::vector<RawCoord> parse_raw_point(std::string_view text) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw InputError("malformed point '" + s + "'");
  }
  std::vector<RawCoord> raw;
  std::string_view body(s);
  body = body.substr(1, body.size() - 2);
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    const std::string item = trim(body.substr(start, comma - start));
    RawCoord rc;
    if (item.rfind("v:", 0) == 0) {
      rc.kind = CoordKind::Core;
      rc.id = item.substr(2);
    } else if (item.rfind("end:", 0) == 0) {
      rc.kind = CoordKind::End;
      rc.id = item.substr(4);
    } else if (item.rfind("r:", 0) == 0) {
      const std::size_t colon = item.rfind(':');
      if (colon <= 2) throw InputError("malformed ray coordinate '" + item + "'");
      rc.kind = CoordKind::Ray;
      rc.id = item.substr(2, colon - 2);
      const std::string digits = item.substr(colon + 1);
      if (digits.empty() || digits.size() > 9 ||
          !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw InputError("malformed ray depth in '" + item + "'");
      }
      rc.depth = static_cast<std::uint32_t>(std::stoul(digits));
    } else {
      throw InputError("malformed coordinate '" + item + "'");
    }
    if (!valid_id(rc.id)) throw InputError("malformed coordinate '" + item + "'");
    raw.push_back(std::move(rc));
    start = comma + 1;
  }
  return raw;
}

Point CubeComplex::parse_point(std::string_view text) const { return from_raw(parse_raw_point(text)); }

std::string CubeComplex::name_of(const Point& p) const {
  for (const auto& [name, q] : aliases_) {
    if (q == p) return name;
  }
  if (single_factor() && p.coords[0].kind == CoordKind::End) return factors_[0].ray_id(p.coords[0].index);
  return format(p);
}

Point CubeComplex::resolve(std::string_view name) const {
  const std::string s = trim(name);
  for (const auto& [alias, p] : aliases_) {
    if (alias == s) return p;
  }
  if (!s.empty() && s.front() == '(') return parse_point(s);
  if (single_factor()) {
    if (auto r = factors_[0].find_ray(s)) return Point{{Coord::end(*r)}};
  }
  throw InputError("unresolved point name '" + s + "'");
}

void CubeComplex::validate(const Point& p) const {
  if (p.coords.size() != factors_.size()) throw InputError("point has the wrong number of coordinates");
  for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i].validate(p.coords[i]);
}

bool CubeComplex::adjacent(const Point& a, const Point& b) const {
  if (!a.is_vertex() || !b.is_vertex()) return false;
  std::size_t differing = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (a.coords[i] != b.coords[i]) {
      ++differing;
      at = i;
    }
  }
  return differing == 1 && factors_[at].adjacent(a.coords[at], b.coords[at]);
}

std::vector<Point> CubeComplex::neighbors(const Point& p) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const Coord& c : factors_[i].neighbors(p.coords[i])) {
      Point q = p;
      q.coords[i] = c;
      out.push_back(std::move(q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ComplexDescription CubeComplex::description() const {
  ComplexDescription d;
  d.name = name_;
  for (const Factor& f : factors_) {
    FactorDescription fd;
    fd.vertices = f.core().ids();
    for (const Edge& e : f.core().edges()) fd.edges.emplace_back(f.core().id(e.u), f.core().id(e.v));
    for (RayIndex r = 0; r < f.ray_count(); ++r) fd.rays.emplace_back(f.ray_id(r), f.core().id(f.ray_attach(r)));
    d.factors.push_back(std::move(fd));
  }
  for (const auto& [name, p] : aliases_) {
    PointAlias a;
    a.name = name;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Coord& c = p.coords[i];
      const Factor& f = factors_[i];
      if (c.kind == CoordKind::Core) {
        a.coords.push_back({c.kind, f.core().id(c.index), 0});
      } else {
        a.coords.push_back({c.kind, f.ray_id(c.index), c.depth});
      }
    }
    d.points.push_back(std::move(a));
  }
  return d;
}

}  // namespace ccr
