#pragma once

// Wall counting, Gromov products, medians and the cross ratio on the Roller
// compactification of a CubeComplex.
//
// Counts are computed per factor on a finite truncation (rays cut at depth
// D) plus a rule for the infinitely many walls beyond D. Every public count
// is recomputed at depth D+1 and the two results are checked for agreement.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/count.hpp"

namespace ccr {

/// max ray depth mentioned + largest core diameter + 1.
int default_depth(const CubeComplex& x, std::span<const Point> points);

struct CountOptions {
  std::optional<int> depth;  // default_depth() when absent
};

/// Number of walls with all of A on one side and all of B on the other.
/// Throws InternalError when the depth-D and depth-(D+1) computations
/// disagree.
Count walls_between(const CubeComplex& x, std::span<const Point> a, std::span<const Point> b,
                    const CountOptions& opts = {});

/// Same count at one fixed depth, without the stability check.
Count walls_between_at_depth(const CubeComplex& x, std::span<const Point> a, std::span<const Point> b,
                             int depth);

struct StabilizationStats {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};
StabilizationStats stabilization_stats();
void reset_stabilization_stats();

/// (x.y)_v = #W(v | x, y). Throws PreconditionError unless v is a vertex.
Count gromov_product(const CubeComplex& x, const Point& p, const Point& q, const Point& v,
                     const CountOptions& opts = {});

/// Median of three points of the compactification, computed per factor.
Point median_bar(const CubeComplex& x, const Point& p, const Point& q, const Point& r);

/// The three pairing sums (x.y)+(z.w), (x.z)+(y.w), (x.w)+(y.z) at basepoint v.
std::array<Count, 3> pairing_sums(const CubeComplex& x, const Point& p, const Point& q, const Point& r,
                                  const Point& s, const Point& v, const CountOptions& opts = {});

/// At most one of the three pairing sums is infinite.
bool is_admissible(const CubeComplex& x, const Point& p, const Point& q, const Point& r, const Point& s);

struct CrossRatioOptions {
  std::optional<int> depth;
  /// Accept non-admissible tuples whose two pairing counts are not both
  /// infinite. Off by default.
  bool allow_extended = false;
  /// Evaluate the basepoint formula at every truncation vertex.
  bool check_all_basepoints = true;
};

struct CrossRatioResult {
  ExtendedInt value;             // wall formula
  Count pairing_xz_yw;           // #W(x,z | y,w)
  Count pairing_xw_yz;           // #W(x,w | y,z)
  bool admissible = false;
  std::size_t basepoints_checked = 0;
  int depth = 0;
};

/// cr(x,y,z,w) = #W(x,z|y,w) - #W(x,w|y,z), cross-checked against
/// (x.z)_v + (y.w)_v - (x.w)_v - (y.z)_v at every basepoint of the
/// truncation. Throws PreconditionError for a non-admissible tuple (unless
/// allowed) or when both pairing counts are infinite, InternalError on any
/// disagreement.
CrossRatioResult cross_ratio(const CubeComplex& x, const Point& p, const Point& q, const Point& r,
                             const Point& s, const CrossRatioOptions& opts = {});

/// Canonical cross ratio triple, checked identical at every basepoint when
/// opts.check_all_basepoints is set.
CrtTriple crt(const CubeComplex& x, const Point& p, const Point& q, const Point& r, const Point& s,
              const CrossRatioOptions& opts = {});

struct Truncation {
  MedianGraph graph;
  std::vector<Point> markers;  // graph vertex -> point of X
};

/// Product of the factor truncations at depth D. Vertex ids are the
/// formatted points.
Truncation truncate(const CubeComplex& x, int depth);

/// Vertices of the depth-D truncation, sorted.
std::vector<Point> truncation_vertices(const CubeComplex& x, int depth);

struct BoundaryEnumeration {
  std::vector<Point> points;  // sorted
  bool complete = true;
};

/// One point per ray for a single factor. For a product: every boundary
/// point whose vertex coordinates lie within depth D (partial).
BoundaryEnumeration enumerate_boundary(const CubeComplex& x, int depth);

// ---------------------------------------------------------------------------
// Table kernels for exhaustive sweeps.

/// Gromov products of every point pair at every basepoint, with the per
/// factor side masks of a fixed truncation. Entries equal
/// gromov_product() at that depth.
class GromovTable {
 public:
  static constexpr std::int64_t kInfinite = -1;

  GromovTable(const CubeComplex& x, std::span<const Point> points, std::span<const Point> basepoints,
              int depth, bool parallel = true);

  std::size_t points() const { return n_; }
  std::size_t basepoints() const { return b_; }
  /// kInfinite for +inf.
  std::int64_t raw(std::size_t base, std::size_t i, std::size_t j) const {
    return values_[(base * n_ + i) * n_ + j];
  }
  Count at(std::size_t base, std::size_t i, std::size_t j) const;
  bool operator==(const GromovTable& other) const { return values_ == other.values_; }

 private:
  std::size_t n_ = 0;
  std::size_t b_ = 0;
  std::vector<std::int64_t> values_;
};

/// #W(A|B) for index sets into a fixed point list, at one fixed depth, via
/// per-point side bitmasks.
class WallCounter {
 public:
  WallCounter(const CubeComplex& x, std::span<const Point> points, int depth);

  Count between(std::span<const std::size_t> a, std::span<const std::size_t> b) const;

 private:
  struct FactorMasks {
    std::size_t words = 0;
    std::vector<std::uint64_t> plus;  // points * words
    std::vector<int> end_ray;         // per point, -1 unless the coordinate is a ray end
  };
  std::vector<FactorMasks> factors_;
};

struct BasepointSweepReport {
  std::size_t tuples = 0;
  std::size_t admissible = 0;
  std::size_t evaluations = 0;
  std::size_t basepoints = 0;
  /// First failing ordered tuple by linear index, with a description.
  std::optional<std::array<std::size_t, 4>> failure;
  std::string detail;

  bool ok() const { return !failure.has_value(); }
};

/// For every ordered admissible 4-tuple of `points`, evaluates the basepoint
/// formula at every vertex of the depth-D truncation and compares each value
/// with the wall formula.
BasepointSweepReport basepoint_sweep(const CubeComplex& x, std::span<const Point> points, int depth);
BasepointSweepReport basepoint_sweep_serial(const CubeComplex& x, std::span<const Point> points, int depth);

}  // namespace ccr
