#include "ccr/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ccr/error.hpp"

namespace ccr {

namespace {

using PairKey = std::array<std::size_t, 2>;
using PairingKey = std::array<PairKey, 2>;

PairingKey pairing_key(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  PairKey p{std::min(a, b), std::max(a, b)};
  PairKey q{std::min(c, d), std::max(c, d)};
  if (q < p) std::swap(p, q);
  return {p, q};
}

std::array<PairingKey, 3> pairings(const Quad& q) {
  return {pairing_key(q[0], q[1], q[2], q[3]), pairing_key(q[0], q[2], q[1], q[3]),
          pairing_key(q[0], q[3], q[1], q[2])};
}

Quad sorted(Quad q) {
  std::sort(q.begin(), q.end());
  return q;
}

}  // namespace

std::size_t multiset_count(std::size_t n) {
  // C(n+3, 4)
  return n * (n + 1) * (n + 2) * (n + 3) / 24;
}

std::optional<std::size_t> CrossRatioOracle::find(std::string_view id) const {
  const auto& ids = points();
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

std::size_t CrossRatioOracle::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown boundary point '" + std::string(id) + "' in oracle " + name());
}

// ---------------------------------------------------------------------------

namespace {

struct SortedPoints {
  std::vector<std::string> ids;
  std::vector<Point> points;
};

SortedPoints sort_points(std::vector<Point> points, std::vector<std::string> ids) {
  if (points.size() != ids.size()) throw PreconditionError("point and id lists differ in length");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  SortedPoints out;
  for (std::size_t i : order) {
    if (!out.ids.empty() && out.ids.back() == ids[i]) throw InputError("duplicate boundary id '" + ids[i] + "'");
    out.ids.push_back(ids[i]);
    out.points.push_back(points[i]);
  }
  return out;
}

}  // namespace

LiveOracle::LiveOracle(const CubeComplex& x, std::vector<Point> points, std::vector<std::string> ids,
                       std::optional<int> depth)
    : x_(&x),
      name_(x.name()),
      depth_(depth.value_or(default_depth(x, points))),
      table_([&] {
        SortedPoints sp = sort_points(std::move(points), std::move(ids));
        ids_ = std::move(sp.ids);
        pts_ = std::move(sp.points);
        const Point origin[] = {x.origin()};
        return GromovTable(x, pts_, origin, depth_);
      }()) {}

LiveOracle LiveOracle::boundary(const CubeComplex& x, std::optional<int> depth) {
  if (!x.single_factor()) throw PreconditionError("boundary oracle needs a single-factor complex");
  std::vector<Point> pts;
  std::vector<std::string> ids;
  for (RayIndex r = 0; r < x.factor(0).ray_count(); ++r) {
    pts.push_back(Point{{Coord::end(r)}});
    ids.push_back(x.factor(0).ray_id(r));
  }
  return LiveOracle(x, std::move(pts), std::move(ids), depth);
}

LiveOracle LiveOracle::sampled(const CubeComplex& x, int window, std::optional<int> depth) {
  std::vector<Point> pts;
  std::vector<std::string> ids;
  auto add = [&](const Point& p, const std::string& id) {
    if (!p.is_boundary()) return;
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) return;
    pts.push_back(p);
    ids.push_back(id);
  };
  for (const auto& [name, p] : x.aliases()) add(p, name);
  for (const Point& p : enumerate_boundary(x, window).points) add(p, x.name_of(p));
  return LiveOracle(x, std::move(pts), std::move(ids), depth);
}

CrtTriple LiveOracle::crt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  return CrtTriple::from_sums(gromov(a, b) + gromov(c, d), gromov(a, c) + gromov(b, d),
                              gromov(a, d) + gromov(b, c));
}

bool LiveOracle::admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  return crt(a, b, c, d).infinite_entries() <= 1;
}

// ---------------------------------------------------------------------------

std::vector<OracleRecord> RecordedOracle::records_of(const CrossRatioOracle& o) {
  std::vector<OracleRecord> out;
  const std::size_t n = o.size();
  out.reserve(multiset_count(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) out.push_back({{a, b, c, d}, o.admissible(a, b, c, d), o.crt(a, b, c, d)});
  return out;
}

RecordedOracle::RecordedOracle(std::string name, int depth, std::vector<std::string> ids,
                               std::vector<OracleRecord> records)
    : name_(std::move(name)), depth_(depth), ids_(std::move(ids)) {
  if (!std::is_sorted(ids_.begin(), ids_.end())) {
    // Records refer to positions; reorder both consistently.
    std::vector<std::size_t> order(ids_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids_[a] < ids_[b]; });
    std::vector<std::size_t> where(ids_.size());
    for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = i;
    std::vector<std::string> sorted_ids;
    for (std::size_t i : order) sorted_ids.push_back(ids_[i]);
    ids_ = std::move(sorted_ids);
    for (auto& r : records) {
      const Quad original = r.quad;
      Quad mapped{};
      for (int k = 0; k < 4; ++k) mapped[k] = where[original[k]];
      const auto keys = pairings(original);
      const auto entries = r.crt.entries();
      // Pairing keys after relabelling; find each stored entry's new slot.
      const Quad s = sorted(mapped);
      const auto new_keys = pairings(s);
      std::array<Count, 3> reordered{};
      for (int j = 0; j < 3; ++j) {
        const auto& k = keys[j];
        const PairingKey relabelled = pairing_key(where[k[0][0]], where[k[0][1]], where[k[1][0]], where[k[1][1]]);
        for (int t = 0; t < 3; ++t) {
          if (new_keys[t] == relabelled) reordered[t] = entries[j];
        }
      }
      r.quad = s;
      r.crt = CrtTriple::from_sums(reordered[0], reordered[1], reordered[2]);
    }
  }
  for (std::size_t i = 1; i < ids_.size(); ++i) {
    if (ids_[i] == ids_[i - 1]) throw InputError("duplicate boundary id '" + ids_[i] + "'");
  }
  const std::size_t n = ids_.size();
  if (n == 0) throw InputError("oracle has no points");
  std::map<Quad, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const OracleRecord& r = records[i];
    for (std::size_t k : r.quad) {
      if (k >= n) throw InputError("record refers to an unknown point");
    }
    if (!std::is_sorted(r.quad.begin(), r.quad.end())) throw InputError("record quad is not sorted");
    if (!seen.emplace(r.quad, i).second) {
      throw InputError("duplicate record for (" + ids_[r.quad[0]] + "," + ids_[r.quad[1]] + "," + ids_[r.quad[2]] +
                       "," + ids_[r.quad[3]] + ")");
    }
    const auto e = r.crt.entries();
    if (!(CrtTriple::from_sums(e[0], e[1], e[2]) == r.crt)) throw InputError("crt entries not in canonical form");
    if (r.admissible != (r.crt.infinite_entries() <= 1)) {
      throw InputError("admissible flag disagrees with the infinite entries of " + r.crt.to_string());
    }
    const auto keys = pairings(r.quad);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        if (keys[a] == keys[b] && !(e[a] == e[b])) {
          throw InputError("record " + r.crt.to_string() + " gives different values to the same pairing");
        }
      }
  }
  if (seen.size() != multiset_count(n)) {
    throw InputError("oracle is incomplete: " + std::to_string(seen.size()) + " of " +
                     std::to_string(multiset_count(n)) + " records");
  }
  records_.resize(seen.size());
  std::size_t idx = 0;
  for (const auto& [q, i] : seen) records_[idx++] = records[i];
}

std::size_t RecordedOracle::slot(const Quad& s) const {
  // Rank of a sorted quad among all sorted quads in lexicographic order.
  auto lower = std::lower_bound(records_.begin(), records_.end(), s,
                                [](const OracleRecord& r, const Quad& q) { return r.quad < q; });
  if (lower == records_.end() || lower->quad != s) throw PreconditionError("point index out of range");
  return static_cast<std::size_t>(lower - records_.begin());
}

CrtTriple RecordedOracle::crt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  const Quad q{a, b, c, d};
  const OracleRecord& r = records_[slot(sorted(q))];
  const auto stored = pairings(r.quad);
  const std::array<PairingKey, 3> asked = {pairing_key(a, b, c, d), pairing_key(a, c, b, d), pairing_key(a, d, b, c)};
  std::array<Count, 3> e{};
  for (int i = 0; i < 3; ++i) {
    int match = -1;
    for (int j = 0; j < 3; ++j) {
      if (stored[j] == asked[i]) match = j;
    }
    if (match < 0) throw InternalError("pairing not found in record");
    e[i] = r.crt[static_cast<std::size_t>(match)];
  }
  return CrtTriple::from_sums(e[0], e[1], e[2]);
}

bool RecordedOracle::admissible(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  return records_[slot(sorted(Quad{a, b, c, d}))].admissible;
}

}  // namespace ccr
