#include "psk/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "psk/error.hpp"

namespace psk {

VertexSet make_vertex_set(std::span<const Vertex> vertices) {
  VertexSet s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool contains(const VertexSet& set, Vertex v) { return std::binary_search(set.begin(), set.end(), v); }

bool is_subset(const VertexSet& sub, const VertexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet with_vertex(const VertexSet& s, Vertex v) {
  VertexSet out = s;
  auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it == out.end() || *it != v) out.insert(it, v);
  return out;
}

VertexSet without_vertex(const VertexSet& s, Vertex v) {
  VertexSet out = s;
  auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it != out.end() && *it == v) out.erase(it);
  return out;
}

// ---------------------------------------------------------------- Graph

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex count");
  adjacency_.resize(vertex_count);
}

Graph Graph::complete(int vertex_count) {
  Graph g(vertex_count);
  for (Vertex u = 0; u < vertex_count; ++u)
    for (Vertex v = u + 1; v < vertex_count; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::path(int vertex_count) {
  Graph g(vertex_count);
  for (Vertex v = 1; v < vertex_count; ++v) g.add_edge(v - 1, v);
  return g;
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
}

Vertex Graph::add_vertex() {
  adjacency_.emplace_back();
  return vertex_count() - 1;
}

bool Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loop at " + std::to_string(u));
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  return std::binary_search(a.begin(), a.end(), &a == &adjacency_[u] ? v : u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const VertexSet& vertices) const {
  Graph h(static_cast<int>(vertices.size()));
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(vertices.size()); ++j)
      if (has_edge(vertices[i], vertices[j])) h.add_edge(i, j);
  return h;
}

bool Graph::is_connected() const {
  if (vertex_count() == 0) return true;
  std::vector<char> seen(vertex_count(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency_[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == vertex_count();
}

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(int vertex_count, bool oriented) : oriented_(oriented) {
  if (vertex_count < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex count");
  out_.resize(vertex_count);
  in_.resize(vertex_count);
}

void Digraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
}

void Digraph::set_oriented_flag(bool oriented) {
  if (oriented && !is_oriented())
    throw Error(ErrorKind::InvalidArgument, "digraph has an anti-parallel pair and cannot be flagged oriented");
  oriented_ = oriented;
}

bool Digraph::is_oriented() const {
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : out_[u])
      if (u < v && has_arc(v, u)) return false;
  return true;
}

Vertex Digraph::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  return vertex_count() - 1;
}

bool Digraph::add_arc(Vertex from, Vertex to) {
  check_vertex(from);
  check_vertex(to);
  if (from == to) throw Error(ErrorKind::InvalidArgument, "self-loop at " + std::to_string(from));
  if (has_arc(from, to)) return false;
  if (oriented_ && has_arc(to, from))
    throw Error(ErrorKind::InvalidArgument, "arc " + std::to_string(from) + "->" + std::to_string(to) +
                                                " would make an oriented digraph anti-parallel");
  auto& o = out_[from];
  o.insert(std::lower_bound(o.begin(), o.end(), to), to);
  auto& i = in_[to];
  i.insert(std::lower_bound(i.begin(), i.end(), from), from);
  ++arc_count_;
  return true;
}

bool Digraph::has_arc(Vertex from, Vertex to) const {
  if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count()) return false;
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::vector<Edge> Digraph::arcs() const {
  std::vector<Edge> out;
  out.reserve(arc_count_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : out_[u]) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------- queries

Graph underlying(const Digraph& d) {
  Graph g(d.vertex_count());
  for (auto [u, v] : d.arcs()) g.add_edge(u, v);
  return g;
}

int max_indegree(const Digraph& d) {
  int best = 0;
  for (Vertex v = 0; v < d.vertex_count(); ++v) best = std::max(best, d.indegree(v));
  return best;
}

bool is_clique(const Graph& g, std::span<const Vertex> s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] != s[j] && !g.has_edge(s[i], s[j])) return false;
  return true;
}

namespace {

std::vector<Vertex> degeneracy_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> degree(n);
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.emplace(degree[v], v);
  }
  std::vector<char> removed(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = 1;
    order.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      --degree[w];
      queue.emplace(degree[w], w);
    }
  }
  return order;
}

void bron_kerbosch(const Graph& g, VertexSet& r, VertexSet p, VertexSet x, std::vector<VertexSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(make_vertex_set(r));
    return;
  }
  Vertex pivot = -1;
  std::size_t best = 0;
  for (const VertexSet* pool : {&p, &x})
    for (Vertex u : *pool) {
      std::size_t hits = set_intersection(p, g.neighbors(u)).size();
      if (pivot < 0 || hits > best) {
        pivot = u;
        best = hits;
      }
    }
  const VertexSet candidates = set_difference(p, g.neighbors(pivot));
  for (Vertex v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, set_intersection(p, g.neighbors(v)), set_intersection(x, g.neighbors(v)), out);
    r.pop_back();
    p = without_vertex(p, v);
    x = with_vertex(x, v);
  }
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g) {
  const auto order = degeneracy_order(g);
  std::vector<int> position(g.vertex_count());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) position[order[i]] = i;
  std::vector<VertexSet> out;
  for (Vertex v : order) {
    VertexSet p, x;
    for (Vertex w : g.neighbors(v)) (position[w] > position[v] ? p : x).push_back(w);
    VertexSet r{v};
    bron_kerbosch(g, r, p, x, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexSet> cliques_of_size(const Graph& g, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "clique size must be at least 1");
  std::set<VertexSet> found;
  for (const auto& m : maximal_cliques(g)) {
    if (static_cast<int>(m.size()) < k) continue;
    for_each_subset(m, k, [&](const VertexSet& s) { found.insert(s); });
  }
  return {found.begin(), found.end()};
}

VertexSet attached_vertices(const Graph& g, const VertexSet& c) {
  VertexSet out;
  if (c.empty()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) out.push_back(v);
    return out;
  }
  out = g.neighbors(c.front());
  for (std::size_t i = 1; i < c.size() && !out.empty(); ++i) out = set_intersection(out, g.neighbors(c[i]));
  return set_difference(out, c);
}

bool is_transitive_tournament(const Digraph& d, std::span<const Vertex> s) {
  const VertexSet set = make_vertex_set(s);
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (d.has_arc(set[i], set[j]) == d.has_arc(set[j], set[i])) return false;
  for (Vertex a : set)
    for (Vertex b : set) {
      if (a == b || !d.has_arc(a, b)) continue;
      for (Vertex c : set)
        if (c != a && c != b && d.has_arc(b, c) && !d.has_arc(a, c)) return false;
    }
  return true;
}

namespace {

int outdegree_within(const Digraph& d, Vertex v, const VertexSet& set) {
  int count = 0;
  for (Vertex w : set)
    if (w != v && d.has_arc(v, w)) ++count;
  return count;
}

}  // namespace

std::optional<Vertex> sink_of(const Digraph& d, std::span<const Vertex> s) {
  const VertexSet set = make_vertex_set(s);
  if (set.empty()) return std::nullopt;
  if (!is_transitive_tournament(d, set))
    throw Error(ErrorKind::NotTransitiveTournament, "vertex set does not induce a transitive tournament");
  for (Vertex v : set)
    if (outdegree_within(d, v, set) == 0) return v;
  throw Error(ErrorKind::NotTransitiveTournament, "no sink found");
}

Edge big_arc(const Digraph& d, std::span<const Vertex> s) {
  const VertexSet set = make_vertex_set(s);
  if (set.size() < 2) throw Error(ErrorKind::TooSmall, "a big arc needs at least two vertices");
  const Vertex sink = *sink_of(d, set);
  for (Vertex u : set)
    if (outdegree_within(d, u, set) == 1) return {u, sink};
  throw Error(ErrorKind::NotTransitiveTournament, "no vertex of outdegree 1");
}

}  // namespace psk
