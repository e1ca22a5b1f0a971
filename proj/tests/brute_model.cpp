#include "brute_model.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace brute {

namespace {

std::vector<std::string> factor_labels(const ccr::FactorDescription& f, int depth) {
  std::vector<std::string> out;
  for (const auto& v : f.vertices) out.push_back("v:" + v);
  for (const auto& [r, at] : f.rays) {
    for (int k = 1; k <= depth; ++k) out.push_back("r:" + r + ":" + std::to_string(k));
  }
  return out;
}

std::set<std::pair<std::string, std::string>> factor_edges(const ccr::FactorDescription& f, int depth) {
  std::set<std::pair<std::string, std::string>> e;
  auto add = [&](const std::string& a, const std::string& b) {
    e.insert({a, b});
    e.insert({b, a});
  };
  for (const auto& [a, b] : f.edges) add("v:" + a, "v:" + b);
  for (const auto& [r, at] : f.rays) {
    add("v:" + at, "r:" + r + ":1");
    for (int k = 2; k <= depth; ++k) add("r:" + r + ":" + std::to_string(k - 1), "r:" + r + ":" + std::to_string(k));
  }
  return e;
}

}  // namespace

Model::Model(const ccr::ComplexDescription& desc, int depth_) : depth(depth_) {
  std::vector<std::vector<std::string>> per;
  std::vector<std::set<std::pair<std::string, std::string>>> edges;
  for (const auto& f : desc.factors) {
    per.push_back(factor_labels(f, depth));
    edges.push_back(factor_edges(f, depth));
  }
  std::vector<std::size_t> idx(per.size(), 0);
  while (true) {
    Label l;
    for (std::size_t i = 0; i < per.size(); ++i) l.push_back(per[i][idx[i]]);
    index[l] = static_cast<int>(labels.size());
    labels.push_back(l);
    std::size_t i = per.size();
    bool done = true;
    while (i-- > 0) {
      if (++idx[i] < per[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  adj.resize(labels.size());
  for (int a = 0; a < n(); ++a) {
    for (std::size_t f = 0; f < per.size(); ++f) {
      for (const auto& cand : per[f]) {
        if (!edges[f].count({labels[a][f], cand})) continue;
        Label l = labels[a];
        l[f] = cand;
        adj[a].push_back(index.at(l));
      }
    }
  }
  dist.assign(labels.size() * labels.size(), -1);
  for (int s = 0; s < n(); ++s) {
    std::deque<int> q{s};
    dist[static_cast<std::size_t>(s) * labels.size() + s] = 0;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (int b : adj[a]) {
        auto& db = dist[static_cast<std::size_t>(s) * labels.size() + b];
        if (db < 0) {
          db = d(s, a) + 1;
          q.push_back(b);
        }
      }
    }
  }
  std::set<std::vector<std::int8_t>> seen;
  for (int a = 0; a < n(); ++a) {
    for (int b : adj[a]) {
      if (b < a) continue;
      std::vector<std::int8_t> side(labels.size());
      for (int p = 0; p < n(); ++p) side[p] = d(p, a) < d(p, b) ? -1 : 1;
      std::vector<std::int8_t> flipped(side);
      for (auto& s : flipped) s = static_cast<std::int8_t>(-s);
      if (seen.count(side) || seen.count(flipped)) continue;
      seen.insert(side);
      walls.push_back(side);
    }
  }
}

int Model::vertex_of(const std::vector<ccr::RawCoord>& p) const {
  Label l;
  for (const auto& c : p) {
    switch (c.kind) {
      case ccr::CoordKind::Core: l.push_back("v:" + c.id); break;
      case ccr::CoordKind::Ray: l.push_back("r:" + c.id + ":" + std::to_string(c.depth)); break;
      case ccr::CoordKind::End: l.push_back("r:" + c.id + ":" + std::to_string(depth)); break;
    }
  }
  return index.at(l);
}

long Model::walls_between(const std::vector<int>& a, const std::vector<int>& b) const {
  long count = 0;
  for (const auto& side : walls) {
    const auto s = side[a.front()];
    bool ok = true;
    for (int p : a) ok = ok && side[p] == s;
    for (int p : b) ok = ok && side[p] == -s;
    count += ok;
  }
  return count;
}

std::vector<int> Model::medians(int a, int b, int c) const {
  std::vector<int> out;
  for (int m = 0; m < n(); ++m) {
    if (d(a, m) + d(m, b) == d(a, b) && d(b, m) + d(m, c) == d(b, c) && d(a, m) + d(m, c) == d(a, c)) {
      out.push_back(m);
    }
  }
  return out;
}

Value walls_between(const ccr::ComplexDescription& desc, const std::vector<std::vector<ccr::RawCoord>>& a,
                    const std::vector<std::vector<ccr::RawCoord>>& b, int depth) {
  long counts[2];
  for (int i = 0; i < 2; ++i) {
    Model m(desc, depth + i);
    std::vector<int> va;
    std::vector<int> vb;
    for (const auto& p : a) va.push_back(m.vertex_of(p));
    for (const auto& p : b) vb.push_back(m.vertex_of(p));
    counts[i] = m.walls_between(va, vb);
  }
  return {counts[0], counts[1] != counts[0]};
}

Value gromov(const ccr::ComplexDescription& desc, const std::vector<ccr::RawCoord>& x,
             const std::vector<ccr::RawCoord>& y, const std::vector<ccr::RawCoord>& v, int depth) {
  long values[2];
  for (int i = 0; i < 2; ++i) {
    Model m(desc, depth + i);
    const int a = m.vertex_of(v);
    const auto meds = m.medians(a, m.vertex_of(x), m.vertex_of(y));
    if (meds.size() != 1) return {-1, false};
    values[i] = m.d(a, meds.front());
  }
  return {values[0], values[1] != values[0]};
}

Value Oracle::walls_between(const std::vector<std::vector<ccr::RawCoord>>& a,
                            const std::vector<std::vector<ccr::RawCoord>>& b) const {
  long counts[2];
  const Model* ms[2] = {&lo, &hi};
  for (int i = 0; i < 2; ++i) {
    std::vector<int> va;
    std::vector<int> vb;
    for (const auto& p : a) va.push_back(ms[i]->vertex_of(p));
    for (const auto& p : b) vb.push_back(ms[i]->vertex_of(p));
    counts[i] = ms[i]->walls_between(va, vb);
  }
  return {counts[0], counts[1] != counts[0]};
}

Value Oracle::gromov(const std::vector<ccr::RawCoord>& x, const std::vector<ccr::RawCoord>& y,
                     const std::vector<ccr::RawCoord>& v) const {
  long values[2];
  const Model* ms[2] = {&lo, &hi};
  for (int i = 0; i < 2; ++i) {
    const int a = ms[i]->vertex_of(v);
    const auto meds = ms[i]->medians(a, ms[i]->vertex_of(x), ms[i]->vertex_of(y));
    if (meds.size() != 1) return {-1, false};
    values[i] = ms[i]->d(a, meds.front());
  }
  return {values[0], values[1] != values[0]};
}

std::vector<ccr::RawCoord> raw(const ccr::CubeComplex& x, const ccr::Point& p) {
  std::vector<ccr::RawCoord> out;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const auto& c = p.coords[i];
    const auto& f = x.factor(i);
    if (c.kind == ccr::CoordKind::Core) {
      out.push_back({c.kind, f.core().id(c.index), 0});
    } else {
      out.push_back({c.kind, f.ray_id(c.index), c.depth});
    }
  }
  return out;
}

}  // namespace brute
