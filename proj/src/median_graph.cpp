#include "ccr/median_graph.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "ccr/error.hpp"

namespace ccr {

namespace {

void bfs_row(const std::vector<std::vector<Vertex>>& adjacency, Vertex source, int* row,
             std::vector<Vertex>& queue) {
  const std::size_t n = adjacency.size();
  std::fill(row, row + n, -1);
  queue.clear();
  row[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex a = queue[head];
    for (Vertex b : adjacency[a]) {
      if (row[b] < 0) {
        row[b] = row[a] + 1;
        queue.push_back(b);
      }
    }
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<int> all_pairs_distances_serial(const std::vector<std::vector<Vertex>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<int> dist(n * n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) bfs_row(adjacency, static_cast<Vertex>(s), &dist[s * n], queue);
  return dist;
}

std::vector<int> all_pairs_distances(const std::vector<std::vector<Vertex>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<int> dist(n * n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<Vertex> queue;
    queue.reserve(n);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < count; ++s) {
      bfs_row(adjacency, static_cast<Vertex>(s), &dist[static_cast<std::size_t>(s) * n], queue);
    }
  }
  return dist;
}

MedianGraph::MedianGraph(std::vector<std::string> vertex_ids,
                         const std::vector<std::pair<std::string, std::string>>& edges)
    : ids_(std::move(vertex_ids)) {
  if (ids_.empty()) throw InputError("median graph must have at least one vertex");
  std::sort(ids_.begin(), ids_.end());
  if (auto dup = std::adjacent_find(ids_.begin(), ids_.end()); dup != ids_.end()) {
    throw InputError("duplicate vertex id '" + *dup + "'");
  }
  adjacency_.resize(ids_.size());
  for (const auto& [a, b] : edges) {
    const Vertex u = index_of(a);
    const Vertex v = index_of(b);
    if (u == v) throw InputError("self loop at vertex '" + a + "'");
    edges_.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  dist_ = all_pairs_distances(adjacency_);
  connected_ = std::none_of(dist_.begin(), dist_.end(), [](int d) { return d < 0; });
}

std::optional<Vertex> MedianGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - ids_.begin());
}

Vertex MedianGraph::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw InputError("unknown vertex '" + std::string(id) + "'");
}

bool MedianGraph::adjacent(Vertex a, Vertex b) const {
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::size_t MedianGraph::edge_index(Vertex a, Vertex b) const {
  const Edge e{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) {
    throw InputError("'" + ids_[a] + "' and '" + ids_[b] + "' are not adjacent");
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

int MedianGraph::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

namespace {

// Number of vertices in I(u,v) ∩ I(v,w) ∩ I(w,u), stopping at 2.
std::size_t count_medians(const MedianGraph& g, Vertex u, Vertex v, Vertex w) {
  const int duv = g.distance(u, v);
  const int dvw = g.distance(v, w);
  const int dwu = g.distance(w, u);
  std::size_t found = 0;
  for (Vertex m = 0; m < g.size() && found < 2; ++m) {
    const int du = g.distance(u, m);
    const int dv = g.distance(v, m);
    const int dw = g.distance(w, m);
    if (du + dv == duv && dv + dw == dvw && dw + du == dwu) ++found;
  }
  return found;
}

}  // namespace

MedianValidation validate_median_graph_serial(const MedianGraph& g) {
  MedianValidation report;
  if (!g.connected()) {
    report.status = MedianValidation::Status::Disconnected;
    return report;
  }
  const auto n = static_cast<Vertex>(g.size());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u; v < n; ++v) {
      for (Vertex w = v; w < n; ++w) {
        const std::size_t found = count_medians(g, u, v, w);
        if (found != 1) {
          report.status = MedianValidation::Status::NotMedian;
          report.triple = std::array<Vertex, 3>{u, v, w};
          report.medians_found = found;
          return report;
        }
      }
    }
  }
  return report;
}

MedianValidation validate_median_graph(const MedianGraph& g) {
  MedianValidation report;
  if (!g.connected()) {
    report.status = MedianValidation::Status::Disconnected;
    return report;
  }
  const auto n = static_cast<std::int64_t>(g.size());
  // Earliest failure as a linear key over (u, v, w); n^3 fits comfortably.
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::size_t best_found = 0;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = u; v < n; ++v) {
      for (std::int64_t w = v; w < n; ++w) {
        const std::uint64_t key = (static_cast<std::uint64_t>(u) * n + v) * n + w;
        std::uint64_t current;
#pragma omp atomic read
        current = best;
        if (key >= current) goto next_u;
        const std::size_t found =
            count_medians(g, static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Vertex>(w));
        if (found != 1) {
#pragma omp critical(ccr_validate_median)
          {
            if (key < best) {
              best = key;
              best_found = found;
            }
          }
          goto next_u;
        }
      }
    }
  next_u:;
  }
  if (best != std::numeric_limits<std::uint64_t>::max()) {
    const auto un = static_cast<std::uint64_t>(n);
    report.status = MedianValidation::Status::NotMedian;
    report.triple = std::array<Vertex, 3>{static_cast<Vertex>(best / (un * un)),
                                          static_cast<Vertex>((best / un) % un),
                                          static_cast<Vertex>(best % un)};
    report.medians_found = best_found;
  }
  return report;
}

WallSystem::WallSystem(const MedianGraph& g) {
  if (!g.connected()) throw InputError("not a partial cube: graph is disconnected");
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  auto related = [&](const Edge& e, const Edge& f) {
    return g.distance(e.u, f.u) + g.distance(e.v, f.v) != g.distance(e.u, f.v) + g.distance(e.v, f.u);
  };
  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (related(edges[i], edges[j])) uf.unite(i, j);
    }
  }
  std::vector<std::size_t> class_of_root(m, std::numeric_limits<std::size_t>::max());
  edge_wall_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = uf.find(i);
    if (class_of_root[root] == std::numeric_limits<std::size_t>::max()) {
      class_of_root[root] = walls_.size();
      Wall w;
      w.id = static_cast<WallId>(walls_.size());
      walls_.push_back(std::move(w));
    }
    const std::size_t c = class_of_root[root];
    walls_[c].edges.push_back(i);
    edge_wall_[i] = static_cast<WallId>(c);
  }

  const std::size_t n = g.size();
  std::vector<char> in_class(m, 0);
  std::vector<Vertex> queue;
  for (Wall& w : walls_) {
    for (std::size_t a = 0; a < w.edges.size(); ++a) {
      for (std::size_t b = a + 1; b < w.edges.size(); ++b) {
        if (!related(edges[w.edges[a]], edges[w.edges[b]])) {
          throw InputError("not a partial cube: Djokovic-Winkler relation is not transitive (edges " +
                           g.id(edges[w.edges[a]].u) + "-" + g.id(edges[w.edges[a]].v) + " and " +
                           g.id(edges[w.edges[b]].u) + "-" + g.id(edges[w.edges[b]].v) + ")");
        }
      }
    }
    for (std::size_t e : w.edges) in_class[e] = 1;
    w.side.assign(n, 0);
    auto flood = [&](Vertex start, std::int8_t label) {
      queue.assign(1, start);
      w.side[start] = label;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex a = queue[head];
        for (Vertex b : g.neighbors(a)) {
          if (w.side[b] != 0 || in_class[g.edge_index(a, b)]) continue;
          w.side[b] = label;
          queue.push_back(b);
        }
      }
    };
    const Edge& first = edges[w.edges.front()];
    flood(first.u, -1);
    if (w.side[first.v] != 0) {
      throw InputError("not a partial cube: removing a wall class does not disconnect the graph");
    }
    flood(first.v, +1);
    for (Vertex v = 0; v < n; ++v) {
      if (w.side[v] == 0) throw InputError("not a partial cube: wall class leaves more than two components");
      (w.side[v] < 0 ? w.side_minus : w.side_plus).push_back(v);
    }
    for (std::size_t e : w.edges) {
      if (w.side[edges[e].u] == w.side[edges[e].v]) {
        throw InputError("not a partial cube: wall edge does not cross its wall");
      }
      in_class[e] = 0;
    }
  }
}

bool transverse(const WallSystem& ws, WallId w1, WallId w2) {
  if (w1 == w2) throw PreconditionError("transverse() needs two distinct walls");
  const auto& s1 = ws.wall(w1).side;
  const auto& s2 = ws.wall(w2).side;
  bool quadrant[2][2] = {{false, false}, {false, false}};
  for (std::size_t v = 0; v < s1.size(); ++v) quadrant[s1[v] > 0][s2[v] > 0] = true;
  return quadrant[0][0] && quadrant[0][1] && quadrant[1][0] && quadrant[1][1];
}

std::vector<Vertex> interval(const MedianGraph& g, Vertex u, Vertex v) {
  std::vector<Vertex> out;
  const int d = g.distance(u, v);
  for (Vertex t = 0; t < g.size(); ++t) {
    if (g.distance(u, t) + g.distance(t, v) == d) out.push_back(t);
  }
  return out;
}

Vertex median(const MedianGraph& g, Vertex u, Vertex v, Vertex w) {
  std::optional<Vertex> found;
  const int duv = g.distance(u, v);
  const int dvw = g.distance(v, w);
  const int dwu = g.distance(w, u);
  for (Vertex m = 0; m < g.size(); ++m) {
    if (g.distance(u, m) + g.distance(m, v) == duv && g.distance(v, m) + g.distance(m, w) == dvw &&
        g.distance(w, m) + g.distance(m, u) == dwu) {
      if (found) throw PreconditionError("median is not unique; graph is not a median graph");
      found = m;
    }
  }
  if (!found) throw PreconditionError("no median exists; graph is not a median graph");
  return *found;
}

bool LinkData::is_cone() const {
  const std::size_t k = link_vertices.size();
  if (k == 0) return false;
  std::vector<std::size_t> degree(k, 0);
  for (const auto& [a, b] : link_edges) {
    ++degree[a];
    ++degree[b];
  }
  return std::any_of(degree.begin(), degree.end(), [k](std::size_t d) { return d + 1 == k; });
}

LinkData link_data(const MedianGraph& g, const WallSystem& ws, Vertex v) {
  LinkData link;
  const auto nb = g.neighbors(v);
  link.link_vertices.assign(nb.begin(), nb.end());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      // a, b span a square with v iff they have a common neighbour other than v.
      for (Vertex c : g.neighbors(nb[i])) {
        if (c != v && g.adjacent(c, nb[j])) {
          link.link_edges.emplace_back(i, j);
          break;
        }
      }
    }
    link.adjacent_walls.push_back(ws.wall_of_edge(g.edge_index(v, nb[i])));
  }
  std::sort(link.adjacent_walls.begin(), link.adjacent_walls.end());
  link.adjacent_walls.erase(std::unique(link.adjacent_walls.begin(), link.adjacent_walls.end()),
                            link.adjacent_walls.end());
  return link;
}

std::vector<WallId> walls_of_path(const MedianGraph& g, const WallSystem& ws,
                                  std::span<const Vertex> path) {
  std::vector<WallId> crossed;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.adjacent(path[i], path[i + 1])) {
      throw PreconditionError("path is not a path: '" + g.id(path[i]) + "' and '" + g.id(path[i + 1]) +
                              "' are not adjacent");
    }
    crossed.push_back(ws.wall_of_edge(g.edge_index(path[i], path[i + 1])));
  }
  std::vector<WallId> sorted = crossed;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("path is not a geodesic: it crosses a wall twice");
  }
  return crossed;
}

bool is_straight_path(const MedianGraph& g, const WallSystem& ws, std::span<const Vertex> path) {
  const auto crossed = walls_of_path(g, ws, path);
  for (std::size_t i = 0; i < crossed.size(); ++i) {
    for (std::size_t j = i + 1; j < crossed.size(); ++j) {
      if (transverse(ws, crossed[i], crossed[j])) return false;
    }
  }
  return true;
}

}  // namespace ccr
