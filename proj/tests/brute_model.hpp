#pragma once

// Reference model for tests. Builds the depth-D truncation of a complex
// straight from its raw description, computes distances by its own BFS and
// walls as classes of edges with identical halfspace signatures. Shares no
// code with the library beyond the description structs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccr/complex.hpp"

namespace brute {

using Label = std::vector<std::string>;  // per factor: "v:<id>" or "r:<ray>:<k>"

struct Model {
  Model(const ccr::ComplexDescription& desc, int depth);

  int depth;
  std::vector<Label> labels;
  std::map<Label, int> index;
  std::vector<std::vector<int>> adj;
  std::vector<int> dist;  // n*n
  std::vector<std::vector<std::int8_t>> walls;  // per wall: side per vertex

  int n() const { return static_cast<int>(labels.size()); }
  int d(int a, int b) const { return dist[static_cast<std::size_t>(a) * labels.size() + b]; }
  /// Ends are clamped to the depth-D stub.
  int vertex_of(const std::vector<ccr::RawCoord>& p) const;
  long walls_between(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> medians(int a, int b, int c) const;
};

/// Count as a pair: value, infinite flag. Infinite iff the count grows from
/// depth D to D+1.
struct Value {
  long n = 0;
  bool infinite = false;
  bool operator==(const Value&) const = default;
};

Value walls_between(const ccr::ComplexDescription& desc, const std::vector<std::vector<ccr::RawCoord>>& a,
                    const std::vector<std::vector<ccr::RawCoord>>& b, int depth);

Value gromov(const ccr::ComplexDescription& desc, const std::vector<ccr::RawCoord>& x,
             const std::vector<ccr::RawCoord>& y, const std::vector<ccr::RawCoord>& v, int depth);

/// Models at depth D and D+1, built once.
struct Oracle {
  Oracle(const ccr::ComplexDescription& desc, int depth) : lo(desc, depth), hi(desc, depth + 1) {}
  Value walls_between(const std::vector<std::vector<ccr::RawCoord>>& a,
                      const std::vector<std::vector<ccr::RawCoord>>& b) const;
  Value gromov(const std::vector<ccr::RawCoord>& x, const std::vector<ccr::RawCoord>& y,
               const std::vector<ccr::RawCoord>& v) const;
  Model lo;
  Model hi;
};

/// Library point to raw coordinates (for feeding the model).
std::vector<ccr::RawCoord> raw(const ccr::CubeComplex& x, const ccr::Point& p);

}  // namespace brute
