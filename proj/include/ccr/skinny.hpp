#pragma once

// Skinny/fat decomposition of a single-factor complex. A vertex is skinny
// when it has degree 2 (core edges plus attached rays); the skinny vertices
// form segments between fat vertices and rays leaving fat vertices.

#include <map>
#include <vector>

#include "ccr/complex.hpp"

namespace ccr {

struct SkinnySegment {
  Vertex u = 0;                   // fat endpoints, u <= v
  Vertex v = 0;
  std::vector<Vertex> interior;   // skinny core vertices from u to v
  std::size_t length() const { return interior.size() + 1; }
  friend auto operator<=>(const SkinnySegment&, const SkinnySegment&) = default;
};

struct SkinnyRay {
  Vertex base = 0;                // fat vertex
  std::vector<Vertex> core_prefix;  // skinny core vertices before the ray proper
  RayIndex ray = 0;
  friend auto operator<=>(const SkinnyRay&, const SkinnyRay&) = default;
};

struct Decomposition {
  std::vector<Vertex> fat;                         // sorted
  std::vector<Vertex> skinny_core;                 // sorted
  std::vector<std::pair<Vertex, Vertex>> fat_edges;  // core edges between fat vertices
  std::vector<SkinnySegment> segments;             // sorted
  std::vector<SkinnyRay> rays;                     // sorted by (base, prefix, ray)
  std::map<Vertex, std::vector<RayIndex>> ray_ends;  // per fat vertex (possibly empty)
};

/// Throws PreconditionError for a product, for a complex isomorphic to the
/// line, and for a core cycle with no fat vertex.
Decomposition classify_vertices(const CubeComplex& x);

}  // namespace ccr
