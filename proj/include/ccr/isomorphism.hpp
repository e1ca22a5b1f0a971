#pragma once

// Isomorphisms of single-factor complexes through their fat/skinny normal
// form, and the extension of a boundary Mobius bijection to a cubical
// isomorphism.

#include <cstdint>
#include <string>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/oracle.hpp"
#include "ccr/skinny.hpp"

namespace ccr {

/// Fat vertices with their adjacency, segment lengths and ray ends. Two
/// eligible single-factor complexes are isomorphic iff their normal forms
/// are related by a fat bijection.
struct NormalForm {
  Decomposition dec;
  std::vector<Vertex> fat;                         // = dec.fat
  std::vector<std::vector<bool>> adjacent;         // fat index pairs
  std::vector<std::vector<std::vector<std::size_t>>> segment_lengths;  // [i][j], sorted
  std::vector<std::size_t> ray_count;              // per fat index
  std::vector<std::size_t> ray_base;               // per ray: fat index of its base
  std::vector<std::size_t> ray_prefix;             // per ray: skinny core vertices before it
};

NormalForm normal_form(const CubeComplex& x);

/// Every bijection of fat vertices (as fat index maps) that preserves fat
/// edges, segment lengths and ray counts.
std::vector<std::vector<std::size_t>> fat_isomorphisms(const NormalForm& a, const NormalForm& b);

/// Number of 1-skeleton isomorphisms X -> Y.
std::uint64_t count_isomorphisms(const CubeComplex& x, const CubeComplex& y);
bool isomorphic(const CubeComplex& x, const CubeComplex& y);

/// A vertex map X -> Y given on core vertices, with rays carried along by
/// position: the t-th vertex out from a fat base on X's ray r goes to the
/// t-th vertex out on Y's ray ray_image[r].
struct CubicalMap {
  const CubeComplex* x = nullptr;
  const CubeComplex* y = nullptr;
  std::vector<Point> core_image;      // per core vertex of X
  std::vector<RayIndex> ray_image;    // per ray of X
  std::vector<std::size_t> x_prefix;  // per ray of X
  std::vector<std::vector<Vertex>> y_prefix;  // per ray of X: core prefix of the image ray in Y

  /// Image of a vertex or a boundary point of X.
  Point apply(const Point& p) const;
  friend bool operator==(const CubicalMap& a, const CubicalMap& b) {
    return a.core_image == b.core_image && a.ray_image == b.ray_image;
  }
};

/// The map determined by a fat bijection and a ray bijection whose bases
/// are compatible. Throws PreconditionError when they are not.
CubicalMap assemble_map(const CubeComplex& x, const CubeComplex& y, const NormalForm& nx, const NormalForm& ny,
                        const std::vector<std::size_t>& fat_map, const std::vector<RayIndex>& ray_map);

/// Extends a Mobius bijection between the boundary oracles of X and Y.
/// Fat vertices go to image medians of opposite triples, segments and rays
/// follow. Throws PreconditionError ("extension refused") unless X and Y are
/// eligible single-factor complexes and f is a Mobius bijection; throws
/// InternalError when the result fails verification (isometry on fat
/// vertices, rays matched at corresponding bases, graph isomorphism on a
/// truncation, medians carried to image medians).
CubicalMap extend_isomorphism(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy);

struct UniquenessReport {
  std::uint64_t isomorphisms = 0;   // all isomorphisms X -> Y
  std::size_t extending = 0;        // those whose boundary map is f
  bool matches = false;             // the single extending one equals F

  bool ok() const { return extending == 1 && matches; }
};

/// Enumerates isomorphisms X -> Y and keeps those inducing f on the boundary.
UniquenessReport verify_uniqueness(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy,
                                   const CubicalMap& map);

/// Ray index map X -> Y for a boundary-oracle index map.
std::vector<RayIndex> ray_map_of(const std::vector<std::size_t>& f, const LiveOracle& ox, const LiveOracle& oy);

}  // namespace ccr
