#pragma once

// Finitely described CAT(0) cube complexes: finite products of factors, each
// factor a finite median-graph core with skinny rays glued on at core
// vertices. Points of the Roller compactification are per-factor coordinate
// tuples.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccr/median_graph.hpp"

namespace ccr {

using RayIndex = std::uint32_t;

enum class CoordKind : std::uint8_t { Core, Ray, End };

/// One factor coordinate: a core vertex, the depth-k vertex of a ray (k >= 1),
/// or the end at infinity of a ray.
struct Coord {
  CoordKind kind = CoordKind::Core;
  std::uint32_t index = 0;  // core vertex (Core) or factor-local ray (Ray, End)
  std::uint32_t depth = 0;  // >= 1 for Ray, 0 otherwise

  static Coord core(Vertex v) { return {CoordKind::Core, v, 0}; }
  static Coord ray(RayIndex r, std::uint32_t depth) { return {CoordKind::Ray, r, depth}; }
  static Coord end(RayIndex r) { return {CoordKind::End, r, 0}; }

  bool is_vertex() const { return kind != CoordKind::End; }
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// A vertex of X (no End coordinate) or a point of the Roller boundary.
struct Point {
  std::vector<Coord> coords;

  bool is_vertex() const;
  bool is_boundary() const { return !is_vertex(); }
  friend auto operator<=>(const Point&, const Point&) = default;
};

// ---------------------------------------------------------------------------
// Raw descriptions, as produced by the file parser and the fixture builders.

struct FactorDescription {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, std::string>> rays;  // (ray id, attach vertex)
};

struct RawCoord {
  CoordKind kind = CoordKind::Core;
  std::string id;  // core vertex id or ray id
  std::uint32_t depth = 0;
};

struct PointAlias {
  std::string name;
  std::vector<RawCoord> coords;
};

struct ComplexDescription {
  std::string name;
  std::vector<FactorDescription> factors;
  std::vector<PointAlias> points;
};

/// "(v:a,r:x:2,end:y)" as raw coordinates. Throws InputError.
std::vector<RawCoord> parse_raw_point(std::string_view text);

// ---------------------------------------------------------------------------

/// A factor cut at ray depth D: the core plus the first D vertices of every
/// ray, with its walls and a marker per truncation vertex.
struct FactorTruncation {
  struct RayWall {
    RayIndex ray;
    std::uint32_t depth;  // the wall between depths depth-1 and depth
  };

  int depth = 0;
  MedianGraph graph;
  WallSystem walls;
  std::vector<Coord> markers;                  // truncation vertex -> coordinate
  std::vector<Vertex> core_vertex;             // core vertex -> truncation vertex
  std::vector<std::vector<Vertex>> ray_vertex;  // [ray][k-1] -> truncation vertex
  std::vector<std::optional<WallId>> core_wall_of;   // truncation wall -> core wall
  std::vector<std::optional<RayWall>> ray_wall_of;   // truncation wall -> ray wall

  /// Truncation vertex representing `c`; an End is represented by the
  /// depth-D stub of its ray. Throws PreconditionError for a ray vertex
  /// deeper than D.
  Vertex locate(const Coord& c) const;
};

class Factor {
 public:
  Factor(const FactorDescription& desc, std::size_t position);
  Factor(Factor&&) noexcept;
  Factor& operator=(Factor&&) noexcept;
  ~Factor();

  const MedianGraph& core() const { return core_; }
  const WallSystem& core_walls() const { return core_walls_; }

  std::size_t ray_count() const { return ray_ids_.size(); }
  const std::string& ray_id(RayIndex r) const { return ray_ids_[r]; }
  const std::vector<std::string>& ray_ids() const { return ray_ids_; }
  std::optional<RayIndex> find_ray(std::string_view id) const;
  Vertex ray_attach(RayIndex r) const { return ray_attach_[r]; }
  std::span<const RayIndex> rays_at(Vertex v) const { return rays_at_[v]; }

  /// Core degree plus attached rays.
  std::size_t degree(Vertex v) const { return core_.degree(v) + rays_at_[v].size(); }
  bool is_point() const { return core_.size() == 1 && ray_ids_.empty(); }
  /// The factor is a bi-infinite path: every core vertex has degree 2 and
  /// there are exactly two rays.
  bool is_line() const;

  /// Core vertex under a coordinate (the attach vertex for ray coordinates).
  Vertex anchor(const Coord& c) const;
  /// Position of a coordinate along ray r: 0 when not on r, UINT32_MAX for
  /// the end of r.
  std::uint32_t depth_along(const Coord& c, RayIndex r) const;

  /// Neighbouring vertex coordinates of a vertex coordinate, sorted.
  std::vector<Coord> neighbors(const Coord& c) const;
  bool adjacent(const Coord& a, const Coord& b) const;

  /// Cached truncation; population is idempotent and thread-safe.
  const FactorTruncation& truncation(int depth) const;

  std::string format(const Coord& c) const;
  void validate(const Coord& c) const;

 private:
  struct Cache;

  MedianGraph core_;
  WallSystem core_walls_;
  std::vector<std::string> ray_ids_;
  std::vector<Vertex> ray_attach_;
  std::vector<std::vector<RayIndex>> rays_at_;
  std::unique_ptr<Cache> cache_;
};

struct EligibilityReport {
  /// (factor, core vertex id) for every extremal core vertex. A product
  /// vertex is extremal iff one of its coordinates is.
  std::vector<std::pair<std::size_t, std::string>> extremal_vertices;
  bool is_line = false;
  bool is_point = false;

  bool eligible() const { return extremal_vertices.empty() && !is_line && !is_point; }
};

class CubeComplex {
 public:
  /// Validates every core (median property, partial cube) and every ray and
  /// alias. Throws InputError naming the first problem.
  static CubeComplex load(const ComplexDescription& desc);

  const std::string& name() const { return name_; }
  std::size_t factor_count() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  bool single_factor() const { return factors_.size() == 1; }
  const EligibilityReport& eligibility() const { return eligibility_; }
  const std::vector<std::pair<std::string, Point>>& aliases() const { return aliases_; }

  /// Largest core diameter over all factors.
  int core_diameter() const;
  /// Smallest core vertex in every factor.
  Point origin() const;

  /// Largest finite ray depth appearing in the points (0 if none).
  static std::uint32_t max_depth(std::span<const Point> points);

  /// "(v:c,r:x:2,end:y)".
  std::string format(const Point& p) const;
  /// Parses the coordinate-tuple syntax produced by format().
  Point parse_point(std::string_view text) const;
  /// Alias name, else the ray id for a single-factor ray end, else format().
  std::string name_of(const Point& p) const;
  /// Alias, single-factor ray id, or coordinate tuple.
  Point resolve(std::string_view name) const;

  Point from_raw(const std::vector<RawCoord>& raw) const;
  void validate(const Point& p) const;

  bool adjacent(const Point& a, const Point& b) const;
  std::vector<Point> neighbors(const Point& p) const;

  /// Round-trips to the raw form (sorted, deterministic).
  ComplexDescription description() const;

 private:
  std::string name_;
  std::vector<Factor> factors_;
  std::vector<std::pair<std::string, Point>> aliases_;
  EligibilityReport eligibility_;
};

}  // namespace ccr
