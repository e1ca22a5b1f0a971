#include "ccr/skinny.hpp"

#include <algorithm>
#include <set>

#include "ccr/error.hpp"

namespace ccr {

Decomposition classify_vertices(const CubeComplex& x) {
  if (!x.single_factor()) throw PreconditionError("skinny/fat decomposition needs a single-factor complex");
  if (x.eligibility().is_line) throw PreconditionError("the complex is a line");
  const Factor& f = x.factor(0);
  const MedianGraph& g = f.core();
  Decomposition d;
  std::vector<bool> fat(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    fat[v] = f.degree(v) != 2;
    (fat[v] ? d.fat : d.skinny_core).push_back(v);
  }
  if (d.fat.empty()) throw PreconditionError("the core is a skinny cycle with no fat vertex");

  std::set<SkinnySegment> segments;
  std::vector<bool> reached(g.size(), false);
  for (Vertex u : d.fat) {
    reached[u] = true;
    d.ray_ends[u];
    for (RayIndex r : f.rays_at(u)) {
      d.rays.push_back({u, {}, r});
      d.ray_ends[u].push_back(r);
    }
    for (Vertex w : g.neighbors(u)) {
      if (fat[w]) {
        if (u < w) d.fat_edges.emplace_back(u, w);
        continue;
      }
      Vertex prev = u;
      Vertex cur = w;
      std::vector<Vertex> chain;
      while (true) {
        reached[cur] = true;
        chain.push_back(cur);
        if (!f.rays_at(cur).empty()) {
          const RayIndex r = f.rays_at(cur).front();
          d.rays.push_back({u, chain, r});
          d.ray_ends[u].push_back(r);
          break;
        }
        const auto nb = g.neighbors(cur);
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        if (fat[next]) {
          SkinnySegment s{u, next, chain};
          if (s.u > s.v) {
            std::swap(s.u, s.v);
            std::reverse(s.interior.begin(), s.interior.end());
          } else if (s.u == s.v) {
            auto rev = s.interior;
            std::reverse(rev.begin(), rev.end());
            s.interior = std::min(s.interior, rev);
          }
          segments.insert(std::move(s));
          break;
        }
        prev = cur;
        cur = next;
      }
    }
  }
  if (!std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) {
    throw PreconditionError("the core contains a skinny cycle");
  }
  d.segments.assign(segments.begin(), segments.end());
  std::sort(d.rays.begin(), d.rays.end());
  for (auto& [v, rs] : d.ray_ends) std::sort(rs.begin(), rs.end());
  return d;
}

}  // namespace ccr
