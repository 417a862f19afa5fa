#include "psk/instances.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "psk/error.hpp"
#include "psk/rng.hpp"

namespace psk {

Graph gen_kbar3(int k) {
  if (k < 1) throw Error(ErrorKind::ParameterRange, "k must be at least 1");
  Graph g(k + 3);
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v) g.add_edge(u, v);
  for (Vertex b = k; b < k + 3; ++b)
    for (Vertex s = 0; s < k; ++s) g.add_edge(s, b);
  return g;
}

namespace {

ConstructionTrace random_trace(int k, int n, std::uint64_t seed, bool simple) {
  if (k < 1) throw Error(ErrorKind::ParameterRange, "k must be at least 1");
  if (n < k + 1) throw Error(ErrorKind::ParameterRange, "n must be at least k+1");
  Rng rng(seed);
  ConstructionTrace t;
  t.k = k;
  for (Vertex v = 0; v <= k; ++v) t.base.push_back(v);
  std::vector<VertexSet> pool;
  for_each_subset(t.base, k, [&](const VertexSet& s) { pool.push_back(s); });
  for (Vertex v = k + 1; v < n; ++v) {
    if (pool.empty()) throw Error(ErrorKind::ParameterRange, "no unused clique left");
    const std::size_t i = rng.below(pool.size());
    VertexSet c = pool[i];
    if (simple) {
      pool[i] = pool.back();
      pool.pop_back();
    }
    for (Vertex u : c) pool.push_back(with_vertex(without_vertex(c, u), v));
    t.steps.push_back({v, std::move(c)});
  }
  return t;
}

}  // namespace

ConstructionTrace gen_random_simple_ktree(int k, int n, std::uint64_t seed) { return random_trace(k, n, seed, true); }

ConstructionTrace gen_random_ktree(int k, int n, std::uint64_t seed) { return random_trace(k, n, seed, false); }

ConstructionTrace gen_max_outerplanar_trace(int n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::ParameterRange, "n must be at least 3");
  Rng rng(seed);
  ConstructionTrace t;
  t.k = 2;
  t.base = {0, 1, 2};
  std::vector<Vertex> outer{0, 1, 2};
  for (Vertex w = 3; w < n; ++w) {
    const std::size_t i = rng.below(outer.size());
    const Vertex a = outer[i], b = outer[(i + 1) % outer.size()];
    t.steps.push_back({w, make_vertex_set(std::vector<Vertex>{a, b})});
    outer.insert(outer.begin() + static_cast<std::ptrdiff_t>(i) + 1, w);
  }
  return t;
}

Graph gen_max_outerplanar(int n, std::uint64_t seed) { return trace_graph(gen_max_outerplanar_trace(n, seed)); }

namespace {

void check_cap(long long projected, long long cap) {
  if (projected > cap)
    throw Error(ErrorKind::Explosion,
                "projected vertex count " + std::to_string(projected) + " exceeds cap " + std::to_string(cap));
}

// Attaches `copies` new vertices to each clique, in clique order.
void attach_all(Graph& g, const std::vector<VertexSet>& cliques, int copies) {
  for (const auto& c : cliques)
    for (int i = 0; i < copies; ++i) {
      const Vertex v = g.add_vertex();
      for (Vertex u : c) g.add_edge(u, v);
    }
}

}  // namespace

Graph gen_attachment_closure(const Graph& g0, int k, int copies, int rounds, long long cap) {
  if (k < 1 || copies < 1 || rounds < 1) throw Error(ErrorKind::ParameterRange, "k, copies, rounds must be >= 1");
  Graph g = g0;
  if (cliques_of_size(g, k).empty()) throw Error(ErrorKind::ParameterRange, "base has no k-clique");
  for (int r = 0; r < rounds; ++r) {
    const auto cliques = cliques_of_size(g, k);
    check_cap(g.vertex_count() + static_cast<long long>(cliques.size()) * copies, cap);
    attach_all(g, cliques, copies);
  }
  return g;
}

Graph gen_stw_lowerbound(int k, const Graph& base, long long cap) {
  if (k < 3) throw Error(ErrorKind::ParameterRange, "k must be at least 3");
  Graph g = base;
  const auto first = cliques_of_size(g, k);
  check_cap(g.vertex_count() + 2LL * first.size(), cap);
  attach_all(g, first, 2);
  const auto second = cliques_of_size(g, k - 1);
  const long long copies = static_cast<long long>(k - 1) * (k - 1) + 1;
  check_cap(g.vertex_count() + copies * static_cast<long long>(second.size()), cap);
  attach_all(g, second, static_cast<int>(copies));
  return g;
}

DecomposedGraph gen_stw_lowerbound_decomposed(int k, const Graph& base, const TreeDecomposition& base_td,
                                              long long cap) {
  const auto report = verify_decomposition(base, base_td, k - 1);
  if (!report.is_valid) throw Error(ErrorKind::PreconditionViolated, report.valid_violation);
  if (report.width > k - 1) throw Error(ErrorKind::WidthExceeded, "base decomposition is wider than k-1");
  DecomposedGraph out{gen_stw_lowerbound(k, base, cap), {}};

  // Drop repeated bags so every k-clique of base sits in exactly one bag.
  TreeDecomposition td;
  {
    std::vector<int> image(base_td.node_count, -1);
    std::vector<VertexSet> bags;
    for (const auto& b : base_td.bags) bags.push_back(make_vertex_set(b));
    std::vector<int> rep(base_td.node_count);
    for (int x = 0; x < base_td.node_count; ++x) rep[x] = x;
    // Union equal neighbouring bags; equal bags are always joined through equal bags.
    std::function<int(int)> find = [&](int x) { return rep[x] == x ? x : rep[x] = find(rep[x]); };
    for (auto [x, y] : base_td.tree_edges)
      if (bags[x] == bags[y]) rep[find(x)] = find(y);
    for (int x = 0; x < base_td.node_count; ++x)
      if (find(x) == x) {
        image[x] = td.node_count++;
        td.bags.push_back(bags[x]);
      }
    for (auto [x, y] : base_td.tree_edges)
      if (find(x) != find(y)) td.tree_edges.emplace_back(image[find(x)], image[find(y)]);
  }

  Vertex next = base.vertex_count();
  const auto first = cliques_of_size(base, k);
  const int original_nodes = td.node_count;
  for (const auto& c : first) {
    int holder = -1;
    for (int x = 0; x < original_nodes && holder < 0; ++x)
      if (td.bags[x] == c) holder = x;
    if (holder < 0) throw Error(ErrorKind::InvariantBroken, "k-clique not found as a bag");
    const Vertex v1 = next++, v2 = next++;
    td.bags[holder] = with_vertex(td.bags[holder], v1);
    td.bags.push_back(with_vertex(c, v2));
    td.tree_edges.emplace_back(holder, td.node_count++);
  }
  Graph g1 = base;
  attach_all(g1, first, 2);
  const int copies = (k - 1) * (k - 1) + 1;
  const int g1_nodes = td.node_count;
  for (const auto& c : cliques_of_size(g1, k - 1)) {
    int holder = -1;
    for (int x = 0; x < g1_nodes && holder < 0; ++x)
      if (is_subset(c, td.bags[x])) holder = x;
    if (holder < 0) throw Error(ErrorKind::InvariantBroken, "(k-1)-clique not covered");
    for (int i = 0; i < copies; ++i) {
      td.bags.push_back(with_vertex(c, next++));
      td.tree_edges.emplace_back(holder, td.node_count++);
    }
  }
  td.root = 0;
  out.td = std::move(td);
  return out;
}

}  // namespace psk
