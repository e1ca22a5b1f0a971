#pragma once

// Finite median graphs: BFS metric, Djokovic-Winkler walls, intervals,
// medians and vertex links.
//
// Vertex ids are opaque strings. Internally vertices are numbered by the
// sorted order of their ids, so every iteration below is deterministic.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccr {

using Vertex = std::uint32_t;
using WallId = std::uint32_t;

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class MedianGraph {
 public:
  /// Builds the graph and its all-pairs distance table. Throws InputError for
  /// an empty vertex set, duplicate ids, self loops or edges naming unknown
  /// vertices. Connectivity and the median property are NOT checked here;
  /// see validate_median_graph().
  MedianGraph(std::vector<std::string> vertex_ids,
              const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(Vertex v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Throws InputError("unknown vertex ...") when absent.
  Vertex index_of(std::string_view id) const;
  std::optional<Vertex> find(std::string_view id) const;

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex a, Vertex b) const;

  const std::vector<Edge>& edges() const { return edges_; }
  /// Index of edge {a, b} in edges(); throws InputError if not an edge.
  std::size_t edge_index(Vertex a, Vertex b) const;

  /// BFS distance; -1 when disconnected.
  int distance(Vertex a, Vertex b) const { return dist_[a * size() + b]; }
  int distance(std::string_view a, std::string_view b) const {
    return distance(index_of(a), index_of(b));
  }
  bool connected() const { return connected_; }
  int diameter() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<int> dist_;
  bool connected_ = true;
};

/// All-pairs BFS distances (row-major n*n, -1 = unreachable). The OpenMP
/// version parallelises over sources; the serial one is the reference.
std::vector<int> all_pairs_distances(const std::vector<std::vector<Vertex>>& adjacency);
std::vector<int> all_pairs_distances_serial(const std::vector<std::vector<Vertex>>& adjacency);

struct MedianValidation {
  enum class Status { Ok, Disconnected, NotMedian };
  Status status = Status::Ok;
  /// First failing triple in lexicographic index order (NotMedian only).
  std::optional<std::array<Vertex, 3>> triple;
  /// Number of candidate medians found for that triple (0 or >= 2).
  std::size_t medians_found = 0;

  bool ok() const { return status == Status::Ok; }
};

/// Brute-force unique-median check over all vertex triples.
MedianValidation validate_median_graph(const MedianGraph& g);
MedianValidation validate_median_graph_serial(const MedianGraph& g);

/// One Djokovic-Winkler class with its two halfspaces.
struct Wall {
  WallId id = 0;
  std::vector<std::size_t> edges;  // indices into MedianGraph::edges()
  std::vector<Vertex> side_minus;  // contains the smaller endpoint of the first edge
  std::vector<Vertex> side_plus;
  std::vector<std::int8_t> side;   // per vertex: -1 or +1
};

class WallSystem {
 public:
  /// Computes the DW classes of a connected graph by union over the relation
  /// d(u,x)+d(v,y) != d(u,y)+d(v,x), then checks that the relation is
  /// transitive on every class and that removing each class leaves exactly
  /// two components. Throws InputError("not a partial cube: ...") otherwise.
  explicit WallSystem(const MedianGraph& g);

  const std::vector<Wall>& walls() const { return walls_; }
  const Wall& wall(WallId w) const { return walls_[w]; }
  std::size_t size() const { return walls_.size(); }
  WallId wall_of_edge(std::size_t edge_index) const { return edge_wall_[edge_index]; }
  std::int8_t side(WallId w, Vertex v) const { return walls_[w].side[v]; }
  bool separates(WallId w, Vertex a, Vertex b) const { return side(w, a) != side(w, b); }

 private:
  std::vector<Wall> walls_;
  std::vector<WallId> edge_wall_;
};

/// Four-quadrant test. Throws PreconditionError for w1 == w2.
bool transverse(const WallSystem& ws, WallId w1, WallId w2);

/// {t : d(u,t) + d(t,v) = d(u,v)}, sorted.
std::vector<Vertex> interval(const MedianGraph& g, Vertex u, Vertex v);

/// The unique vertex of I(u,v) ∩ I(v,w) ∩ I(w,u). Throws PreconditionError
/// when there is none or more than one.
Vertex median(const MedianGraph& g, Vertex u, Vertex v, Vertex w);

struct LinkData {
  std::vector<Vertex> link_vertices;                 // neighbours, one per incident edge
  std::vector<std::pair<std::size_t, std::size_t>> link_edges;  // pairs spanning a square
  std::vector<WallId> adjacent_walls;                // sorted, unique

  /// True when some link vertex is joined to every other one.
  bool is_cone() const;
};

LinkData link_data(const MedianGraph& g, const WallSystem& ws, Vertex v);

/// Walls crossed by a path, in order. Throws PreconditionError if two
/// consecutive vertices are not adjacent or a wall repeats (not a geodesic).
std::vector<WallId> walls_of_path(const MedianGraph& g, const WallSystem& ws,
                                  std::span<const Vertex> path);

/// No two crossed walls are transverse.
bool is_straight_path(const MedianGraph& g, const WallSystem& ws, std::span<const Vertex> path);

}  // namespace ccr
