#pragma once

// Walls of the (infinite) complex, geodesic rays given symbolically, and
// straight lines through an edge.

#include <compare>
#include <cstdint>
#include <vector>

#include "ccr/complex.hpp"

namespace ccr {

/// Names one wall of X: a core wall of a factor, or the ray wall between
/// depths depth-1 and depth of a ray.
struct WallDescriptor {
  std::size_t factor = 0;
  bool on_ray = false;
  std::uint32_t index = 0;  // core wall or ray
  std::uint32_t depth = 0;  // ray walls only, >= 1

  friend auto operator<=>(const WallDescriptor&, const WallDescriptor&) = default;
};

/// Wall dual to the edge {a, b}. Throws PreconditionError unless adjacent.
WallDescriptor wall_of_edge(const CubeComplex& x, const Point& a, const Point& b);

/// Walls of the edges incident to a vertex, sorted.
std::vector<WallDescriptor> adjacent_walls(const CubeComplex& x, const Point& v);

/// Walls of different factors always cross; a ray wall crosses nothing in its
/// own factor; core walls use the four-quadrant test. Throws for w1 == w2.
bool transverse(const CubeComplex& x, const WallDescriptor& w1, const WallDescriptor& w2);

/// A geodesic ray: a finite vertex path followed by the outward tail of a
/// ray, starting at the last prefix vertex.
struct SymbolicRay {
  std::vector<Point> prefix;  // nonempty; prefix.front() is the base
  std::size_t factor = 0;
  RayIndex ray = 0;

  friend bool operator==(const SymbolicRay&, const SymbolicRay&) = default;
};

/// Boundary point the ray converges to.
Point ray_end(const SymbolicRay& r);

/// Walls crossed by the finite prefix, in order. Throws PreconditionError
/// when the ray is not a geodesic (non-adjacent steps, a repeated wall, or a
/// tail that does not leave the prefix end outward).
std::vector<WallDescriptor> prefix_walls(const CubeComplex& x, const SymbolicRay& r);

/// Walls adjacent to the base that the ray crosses, sorted.
std::vector<WallDescriptor> base_adjacent_walls(const CubeComplex& x, const SymbolicRay& r);

/// The union of two geodesic rays with a common base is a geodesic line iff
/// they cross disjoint sets of walls adjacent to the base. Throws
/// PreconditionError for different bases or non-geodesic input.
bool is_line_union(const CubeComplex& x, const SymbolicRay& r1, const SymbolicRay& r2);

/// A bi-infinite line as two rays based at the first edge endpoint: `away`
/// leaves the edge, `through` starts with the edge.
struct StraightLine {
  SymbolicRay away;
  SymbolicRay through;
};

/// Greedy straight extension of the edge {a, b}: at each end take the first
/// neighbour (by formatted id) whose wall is neither crossed nor transverse
/// to a crossed wall, the a-end first. Throws PreconditionError naming the
/// vertex where no step is possible (an extremal vertex).
StraightLine extend_to_straight_line(const CubeComplex& x, const Point& a, const Point& b);

/// Walls of the line, in order from the end of `away` to the end of `through`,
/// restricted to the finite part (tails excluded).
std::vector<WallDescriptor> line_walls(const CubeComplex& x, const StraightLine& line);

}  // namespace ccr
