#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace psk {

using Vertex = int;
/// Sorted ascending, duplicate free.
using VertexSet = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

VertexSet make_vertex_set(std::span<const Vertex> vertices);
bool contains(const VertexSet& set, Vertex v);
bool is_subset(const VertexSet& sub, const VertexSet& super);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet with_vertex(const VertexSet& s, Vertex v);
VertexSet without_vertex(const VertexSet& s, Vertex v);

/// Calls f(subset) for every r-element subset of s in lexicographic order.
template <class F>
void for_each_subset(const VertexSet& s, int r, F&& f) {
  const int n = static_cast<int>(s.size());
  if (r < 0 || r > n) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  VertexSet subset(r);
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = s[idx[i]];
    f(subset);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Finite simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  static Graph complete(int vertex_count);
  static Graph path(int vertex_count);
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  Vertex add_vertex();
  /// Returns false when the edge was already present.
  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  const VertexSet& neighbors(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;
  /// Subgraph induced on `vertices`, relabelled by position in the sorted set.
  Graph induced(const VertexSet& vertices) const;
  bool is_connected() const;

  bool operator==(const Graph&) const = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<VertexSet> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Finite digraph on vertices 0..n-1. Anti-parallel arcs are allowed unless the
/// digraph is flagged oriented, in which case the flag is enforced on insert.
class Digraph {
 public:
  explicit Digraph(int vertex_count = 0, bool oriented = false);

  int vertex_count() const { return static_cast<int>(out_.size()); }
  std::size_t arc_count() const { return arc_count_; }
  bool oriented_flag() const { return oriented_; }
  /// Sets the claim; throws if the digraph has an anti-parallel pair.
  void set_oriented_flag(bool oriented);
  /// True when no anti-parallel pair exists, whatever the flag says.
  bool is_oriented() const;

  Vertex add_vertex();
  bool add_arc(Vertex from, Vertex to);
  bool has_arc(Vertex from, Vertex to) const;
  bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }
  const VertexSet& out_neighbors(Vertex v) const { return out_.at(v); }
  const VertexSet& in_neighbors(Vertex v) const { return in_.at(v); }
  int indegree(Vertex v) const { return static_cast<int>(in_.at(v).size()); }
  int outdegree(Vertex v) const { return static_cast<int>(out_.at(v).size()); }
  std::vector<Edge> arcs() const;

  bool operator==(const Digraph&) const = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
  std::size_t arc_count_ = 0;
  bool oriented_ = false;
};

Graph underlying(const Digraph& d);
int max_indegree(const Digraph& d);

bool is_clique(const Graph& g, std::span<const Vertex> s);
/// All k-cliques, each sorted, the list sorted lexicographically.
std::vector<VertexSet> cliques_of_size(const Graph& g, int k);
/// Maximal cliques via Bron-Kerbosch with pivoting over a degeneracy order.
std::vector<VertexSet> maximal_cliques(const Graph& g);
/// Vertices adjacent to every member of c (excluding c itself).
VertexSet attached_vertices(const Graph& g, const VertexSet& c);

bool is_transitive_tournament(const Digraph& d, std::span<const Vertex> s);
/// The vertex of s with no out-arc inside s; empty for an empty set.
std::optional<Vertex> sink_of(const Digraph& d, std::span<const Vertex> s);
/// The arc (u, v) where v is the sink of s and u has outdegree 1 inside s.
Edge big_arc(const Digraph& d, std::span<const Vertex> s);

}  // namespace psk
