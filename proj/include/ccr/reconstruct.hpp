#pragma once

// Rebuilds a single-factor complex from cross-ratio data alone.

#include <cstdint>
#include <string>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/oracle.hpp"
#include "ccr/rigidity.hpp"

namespace ccr {

struct ReconstructedComplex {
  struct Segment {
    std::size_t u = 0;  // fat indices, u < v
    std::size_t v = 0;
    std::uint64_t length = 0;
  };
  struct Ray {
    std::size_t base = 0;  // fat index
    std::string id;        // boundary id
  };

  std::string name;
  int depth = 0;
  std::vector<std::size_t> straight;                  // oracle indices
  std::vector<std::vector<OppositeTriple>> classes;   // per fat vertex, sorted; front() is the representative
  std::vector<std::vector<std::uint64_t>> distance;   // between fat vertices
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Segment> segments;
  std::vector<Ray> rays;                              // sorted by id

  /// Fat vertices "F<i>", segment interiors "F<i>_F<j>_<k>", rays named by
  /// boundary id.
  ComplexDescription description() const;
  static std::string fat_name(std::size_t i);
};

/// Straight points, opposite triples among them, classes of triples with
/// zero median distance, distances between classes, then fat edges,
/// segments and rays. Throws PreconditionError when the oracle is not that
/// of an eligible single-factor complex (a non-straight point, no opposite
/// triple) and InternalError on inconsistent data: failed class
/// transitivity, asymmetric distances, a triangle inequality violation, a
/// point with zero or several ray bases, or an output that is not a median
/// graph with the recovered distances.
ReconstructedComplex reconstruct(const CrossRatioOracle& o);

}  // namespace ccr
