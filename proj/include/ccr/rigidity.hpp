#pragma once

// Opposition, straightness and skinny rays, decided both on the complex and
// from oracle data alone; recovery of Gromov products and median distances
// from crt values; the Mobius check.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccr/complex.hpp"
#include "ccr/lines.hpp"
#include "ccr/oracle.hpp"

namespace ccr {

// ---------------------------------------------------------------------------
// Direct tests on the complex.

/// Does wall w separate vertex m from the point p (vertex or boundary)?
bool separates(const CubeComplex& x, const WallDescriptor& w, const Point& m, const Point& p);

/// Walls adjacent to the vertex m that separate m from p, sorted.
std::vector<WallDescriptor> adjacent_walls_toward(const CubeComplex& x, const Point& m, const Point& p);

/// p and q are opposite through r: m = m(p,q,r) is a vertex and no adjacent
/// wall at m toward p crosses one toward q. False when m is not a vertex.
bool is_opposite_direct(const CubeComplex& x, const Point& p, const Point& q, const Point& r);

/// I(p,q) meets X in a bi-infinite line.
bool is_straight_pair_direct(const CubeComplex& x, const Point& p, const Point& q);

/// p is the end of a straight ray: exactly one coordinate is a ray end.
bool is_straight_point_direct(const CubeComplex& x, const Point& p);

// ---------------------------------------------------------------------------
// Oracle-side tests. Points are oracle indices.

/// Throws PreconditionError unless (a,a,b,b), (a,a,c,c), (b,b,c,c) are all
/// admissible.
void require_pairwise_admissible(const CrossRatioOracle& o, std::size_t a, std::size_t b, std::size_t c);

struct OppositeVerdict {
  bool opposite = false;
  std::optional<std::size_t> witness;  // least z with the witness pattern
};

/// x1 and x2 opposite through y: no z has crt(x1,x2,y,z) = <<a:b:c>> with
/// a < min{b,c} < inf.
OppositeVerdict is_opposite_oracle(const CrossRatioOracle& o, std::size_t x1, std::size_t x2, std::size_t y);

/// (x,x,y,y) admissible and no z, w with crt(x,y,z,w) in the witness pattern.
bool is_straight_pair_oracle(const CrossRatioOracle& o, std::size_t x, std::size_t y);

/// Some partner y makes (x, y) a straight pair.
bool is_straight_point_oracle(const CrossRatioOracle& o, std::size_t x);

/// Straight points of the oracle, ascending.
std::vector<std::size_t> straight_points(const CrossRatioOracle& o);

/// x leaves m(x,y,z) along a skinny ray: x and y are opposite through z and
/// crt(x,y,z,w) has third canonical entry 0 for every straight w != x.
/// `straight` lists the straight points (straight_points()).
bool is_skinny_ray_oracle(const CrossRatioOracle& o, std::size_t x, std::size_t y, std::size_t z,
                          const std::vector<std::size_t>& straight);

// ---------------------------------------------------------------------------
// Recovery at the median of an opposite triple.

/// (x1, x2, x) with x1 and x2 opposite through x.
struct OppositeTriple {
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  std::size_t x = 0;
  friend auto operator<=>(const OppositeTriple&, const OppositeTriple&) = default;
};

struct MedianProducts {
  Count x_u;   // (x.u) at m
  Count x2_u;  // (x2.u)
  Count x1_u;  // (x1.u)
};

/// Reads the products off crt(x1,x2,x,u). Throws PreconditionError when
/// (x1,x2,x,u) is not admissible.
MedianProducts recover_products_at_median(const CrossRatioOracle& o, const OppositeTriple& t, std::size_t u);

/// (u.v) at the median of t. Infinite for u == v. Throws PreconditionError
/// when a needed tuple is not admissible and InternalError when the two
/// shift estimates disagree.
Count recover_pair_product(const CrossRatioOracle& o, const OppositeTriple& t, std::size_t u, std::size_t v);

/// d(m_t1, m_t2) from oracle data. Throws PreconditionError when a needed
/// tuple is not admissible or a needed product is infinite.
std::uint64_t median_class_distance(const CrossRatioOracle& o, const OppositeTriple& t1, const OppositeTriple& t2);

// ---------------------------------------------------------------------------
// Mobius maps between oracles.

struct MobiusFailure {
  Quad tuple{};          // in the domain
  bool image_admissible = false;
  CrtTriple domain_crt;
  CrtTriple image_crt;
};

struct MobiusVerdict {
  bool forward_ok = false;
  bool injective = false;
  bool surjective = false;
  std::optional<bool> inverse_ok;  // only for bijections
  std::optional<MobiusFailure> counterexample;
  std::optional<MobiusFailure> inverse_counterexample;

  bool bijective() const { return injective && surjective; }
  bool mobius() const { return forward_ok && (!inverse_ok || *inverse_ok); }
};

/// f maps indices of `from` to indices of `to`. Checks every ordered 4-tuple
/// admissible in `from`: the image is admissible with the same crt. The
/// reported counterexample is the least failing tuple, tuples of four
/// distinct points ordered before the rest, lexicographic within each group.
MobiusVerdict is_mobius(const std::vector<std::size_t>& f, const CrossRatioOracle& from, const CrossRatioOracle& to);
MobiusVerdict is_mobius_serial(const std::vector<std::size_t>& f, const CrossRatioOracle& from,
                               const CrossRatioOracle& to);

/// "(a,b,c,d): <<..>> -> <<..>>" or "... image not admissible".
std::string describe(const MobiusFailure& m, const CrossRatioOracle& from, const CrossRatioOracle& to,
                     const std::vector<std::size_t>& f);

}  // namespace ccr
