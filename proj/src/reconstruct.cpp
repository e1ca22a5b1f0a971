#include "ccr/reconstruct.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "ccr/error.hpp"
#include "ccr/skinny.hpp"

namespace ccr {

namespace {

std::optional<std::uint64_t> try_distance(const CrossRatioOracle& o, const OppositeTriple& a, const OppositeTriple& b) {
  try {
    return median_class_distance(o, a, b);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

// First representative pair (lexicographic, both argument orders) for which
// the recovery hypotheses hold.
std::uint64_t class_distance(const CrossRatioOracle& o, const std::vector<OppositeTriple>& a,
                             const std::vector<OppositeTriple>& b) {
  for (const OppositeTriple& s : a) {
    for (const OppositeTriple& t : b) {
      if (auto d = try_distance(o, s, t)) return *d;
      if (auto d = try_distance(o, t, s)) return *d;
    }
  }
  throw InternalError("no representative triples satisfy the distance hypotheses");
}

std::string triple_name(const CrossRatioOracle& o, const OppositeTriple& t) {
  return "(" + o.points()[t.x1] + "," + o.points()[t.x2] + "," + o.points()[t.x] + ")";
}

}  // namespace

std::string ReconstructedComplex::fat_name(std::size_t i) { return "F" + std::to_string(i); }

ComplexDescription ReconstructedComplex::description() const {
  ComplexDescription d;
  d.name = name;
  FactorDescription f;
  for (std::size_t i = 0; i < classes.size(); ++i) f.vertices.push_back(fat_name(i));
  for (const auto& [u, v] : edges) f.edges.emplace_back(fat_name(u), fat_name(v));
  for (const Segment& s : segments) {
    std::string prev = fat_name(s.u);
    for (std::uint64_t k = 1; k < s.length; ++k) {
      std::string cur = fat_name(s.u) + "_" + fat_name(s.v) + "_" + std::to_string(k);
      f.vertices.push_back(cur);
      f.edges.emplace_back(prev, cur);
      prev = std::move(cur);
    }
    f.edges.emplace_back(prev, fat_name(s.v));
  }
  for (const Ray& r : rays) f.rays.emplace_back(r.id, fat_name(r.base));
  d.factors.push_back(std::move(f));
  return d;
}

ReconstructedComplex reconstruct(const CrossRatioOracle& o) {
  ReconstructedComplex out;
  out.name = o.name();
  out.depth = o.depth();
  const std::size_t n = o.size();

  out.straight = straight_points(o);
  if (out.straight.size() != n) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!std::binary_search(out.straight.begin(), out.straight.end(), x)) {
        throw PreconditionError("boundary point " + o.points()[x] + " is not straight");
      }
    }
  }

  std::vector<OppositeTriple> triples;
  for (std::size_t x1 : out.straight)
    for (std::size_t x2 : out.straight) {
      if (x2 <= x1) continue;
      for (std::size_t x : out.straight) {
        if (x == x1 || x == x2) continue;
        if (!o.admissible(x1, x1, x2, x2) || !o.admissible(x1, x1, x, x) || !o.admissible(x2, x2, x, x)) continue;
        if (is_opposite_oracle(o, x1, x2, x).opposite) triples.push_back({x1, x2, x});
      }
    }
  if (triples.empty()) throw PreconditionError("no opposite triples among the boundary points");

  for (const OppositeTriple& t : triples) {
    bool placed = false;
    for (auto& c : out.classes) {
      if (class_distance(o, c, {t}) == 0) {
        c.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({t});
  }
  for (const auto& c : out.classes) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        for (auto d : {try_distance(o, c[i], c[j]), try_distance(o, c[j], c[i])}) {
          if (d && *d != 0) {
            throw InternalError("median classes are not transitive: " + triple_name(o, c[i]) + " and " +
                                triple_name(o, c[j]) + " at distance " + std::to_string(*d));
          }
        }
      }
  }

  const std::size_t k = out.classes.size();
  out.distance.assign(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::uint64_t d = class_distance(o, out.classes[i], out.classes[j]);
      if (d != class_distance(o, out.classes[j], out.classes[i])) throw InternalError("asymmetric median distance");
      if (d == 0) throw InternalError("distinct median classes at distance 0");
      out.distance[i][j] = out.distance[j][i] = d;
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        if (out.distance[a][c] > out.distance[a][b] + out.distance[b][c]) {
          throw InternalError("median distances violate the triangle inequality at " + ReconstructedComplex::fat_name(a) +
                              ", " + ReconstructedComplex::fat_name(b) + ", " + ReconstructedComplex::fat_name(c));
        }
      }

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::uint64_t d = out.distance[i][j];
      if (d == 1) {
        out.edges.emplace_back(i, j);
        continue;
      }
      bool between = false;
      for (std::size_t c = 0; c < k && !between; ++c) {
        between = c != i && c != j && out.distance[i][c] + out.distance[c][j] == d;
      }
      if (!between) out.segments.push_back({i, j, d});
    }

  for (std::size_t x : out.straight) {
    std::set<std::size_t> bases;
    for (std::size_t i = 0; i < k; ++i) {
      for (const OppositeTriple& t : out.classes[i]) {
        if (t.x1 != x && t.x2 != x) continue;
        const std::size_t y = t.x1 == x ? t.x2 : t.x1;
        if (is_skinny_ray_oracle(o, x, y, t.x, out.straight)) {
          bases.insert(i);
          break;
        }
      }
    }
    if (bases.size() != 1) {
      throw InternalError("boundary point " + o.points()[x] + " has " + std::to_string(bases.size()) +
                          " candidate ray bases");
    }
    out.rays.push_back({*bases.begin(), o.points()[x]});
  }
  std::sort(out.rays.begin(), out.rays.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  // The result must be a median graph realising the recovered distances.
  CubeComplex built = [&] {
    try {
      return CubeComplex::load(out.description());
    } catch (const InputError& e) {
      throw InternalError(std::string("reconstructed complex is invalid: ") + e.what());
    }
  }();
  const MedianGraph& g = built.factor(0).core();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const int d = g.distance(g.index_of(ReconstructedComplex::fat_name(i)), g.index_of(ReconstructedComplex::fat_name(j)));
      if (static_cast<std::uint64_t>(d) != out.distance[i][j]) throw InternalError("reconstructed distances disagree");
    }
  const Decomposition dec = classify_vertices(built);
  if (dec.fat.size() != k) throw InternalError("reconstructed fat part has the wrong size");
  return out;
}

}  // namespace ccr
