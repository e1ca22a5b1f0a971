#pragma once

// Cross-ratio oracles: a finite set of boundary points with admissibility
// and crt, either computed from a complex or read from a recorded table.
// Everything downstream of an oracle sees boundary data only.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/count.hpp"
#include "ccr/roller.hpp"

namespace ccr {

using Quad = std::array<std::size_t, 4>;

class CrossRatioOracle {
 public:
  enum class Provenance { Live, Recorded };

  virtual ~CrossRatioOracle() = default;

  virtual Provenance provenance() const = 0;
  virtual const std::string& name() const = 0;
  virtual int depth() const = 0;
  /// Boundary point ids, sorted.
  virtual const std::vector<std::string>& points() const = 0;
  virtual CrtTriple crt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const = 0;
  virtual bool admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const = 0;

  std::size_t size() const { return points().size(); }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws InputError listing the unknown id.
  std::size_t index_of(std::string_view id) const;
  CrtTriple crt(const Quad& q) const { return crt(q[0], q[1], q[2], q[3]); }
  bool admissible(const Quad& q) const { return admissible(q[0], q[1], q[2], q[3]); }
};

/// Backed by a complex: Gromov products of all point pairs at the origin
/// are tabulated once.
class LiveOracle final : public CrossRatioOracle {
 public:
  /// `ids` name `points` and must be distinct; they are sorted together.
  LiveOracle(const CubeComplex& x, std::vector<Point> points, std::vector<std::string> ids,
             std::optional<int> depth = std::nullopt);

  /// Every boundary point of a single-factor complex, named by ray id.
  static LiveOracle boundary(const CubeComplex& x, std::optional<int> depth = std::nullopt);
  /// Named points (aliases) plus every boundary point whose vertex
  /// coordinates lie within `window`, without repeats, named by name_of().
  /// For a single factor this is boundary() plus any boundary aliases.
  static LiveOracle sampled(const CubeComplex& x, int window = 0, std::optional<int> depth = std::nullopt);

  using CrossRatioOracle::admissible;
  using CrossRatioOracle::crt;

  Provenance provenance() const override { return Provenance::Live; }
  const std::string& name() const override { return name_; }
  int depth() const override { return depth_; }
  const std::vector<std::string>& points() const override { return ids_; }
  CrtTriple crt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const override;
  bool admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const override;

  const CubeComplex& complex() const { return *x_; }
  const Point& point(std::size_t i) const { return pts_[i]; }
  const std::vector<Point>& point_list() const { return pts_; }
  /// (a.b) at the origin.
  Count gromov(std::size_t a, std::size_t b) const { return table_.at(0, a, b); }

 private:
  const CubeComplex* x_;
  std::string name_;
  int depth_;
  std::vector<std::string> ids_;
  std::vector<Point> pts_;
  GromovTable table_;
};

/// One record per unordered 4-point multiset; entries are ordered as the
/// pairings {q0q1|q2q3}, {q0q2|q1q3}, {q0q3|q1q2} of the sorted quad.
struct OracleRecord {
  Quad quad{};
  bool admissible = false;
  CrtTriple crt;
};

class RecordedOracle final : public CrossRatioOracle {
 public:
  /// Checks completeness, duplicates, canonical form, that the admissible
  /// flag matches "at most one infinite entry", and that pairings equal as
  /// multisets of id pairs carry equal entries. Throws InputError.
  RecordedOracle(std::string name, int depth, std::vector<std::string> ids, std::vector<OracleRecord> records);

  /// Records of any oracle, in canonical order.
  static std::vector<OracleRecord> records_of(const CrossRatioOracle& o);

  using CrossRatioOracle::admissible;
  using CrossRatioOracle::crt;

  Provenance provenance() const override { return Provenance::Recorded; }
  const std::string& name() const override { return name_; }
  int depth() const override { return depth_; }
  const std::vector<std::string>& points() const override { return ids_; }
  CrtTriple crt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const override;
  bool admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const override;

 private:
  std::size_t slot(const Quad& sorted) const;

  std::string name_;
  int depth_;
  std::vector<std::string> ids_;
  std::vector<OracleRecord> records_;  // indexed by slot()
};

/// Number of 4-multisets over n points.
std::size_t multiset_count(std::size_t n);

}  // namespace ccr
