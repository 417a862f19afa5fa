#include <doctest.h>

#include "psk/decomposition.hpp"
#include "psk/error.hpp"
#include "psk/instances.hpp"
#include "psk/rng.hpp"

using namespace psk;

namespace {

TreeDecomposition path_td(const std::vector<VertexSet>& bags) {
  TreeDecomposition td;
  td.node_count = static_cast<int>(bags.size());
  td.bags = bags;
  for (int i = 0; i + 1 < td.node_count; ++i) td.tree_edges.emplace_back(i, i + 1);
  return td;
}

void check_smooth_output(const Graph& g, const TreeDecomposition& out, int k) {
  const auto r = verify_decomposition(g, out, k);
  CHECK(r.is_valid);
  CHECK(r.is_normal);
  CHECK(r.is_k_simple);
  CHECK(r.is_k_smooth);
  CHECK(r.width == k);
  REQUIRE(out.root.has_value());
  CHECK(*out.root == 0);
  for (const auto& b : out.bags) CHECK(static_cast<int>(b.size()) == k + 1);
}

// A k-simple decomposition made deliberately untidy: a random spanning subgraph
// of a simple k-tree, extra leaves and subdivisions whose bags are too small to
// hold any k-set.
std::pair<Graph, TreeDecomposition> untidy_instance(int k, int n, std::uint64_t seed) {
  const auto trace = gen_random_simple_ktree(k, n, seed);
  const Graph full = trace_graph(trace);
  Rng rng(seed * 7919 + 1);
  Graph g(n);
  for (auto [u, v] : full.edges())
    if (rng.below(3) != 0) g.add_edge(u, v);
  TreeDecomposition td = simple_ktree_to_decomposition(trace);
  td.root.reset();
  const int original = td.node_count;
  for (int x = 0; x < original; ++x) {
    if (k >= 2 && rng.below(3) == 0) {
      VertexSet sub = td.bags[x];
      while (static_cast<int>(sub.size()) > k - 1)
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(rng.below(sub.size())));
      td.bags.push_back(sub);
      td.tree_edges.emplace_back(x, td.node_count++);
    }
  }
  std::vector<Edge> edges = td.tree_edges;
  td.tree_edges.clear();
  for (auto [x, y] : edges) {
    const VertexSet shared = set_intersection(td.bags[x], td.bags[y]);
    if (k >= 2 && static_cast<int>(shared.size()) < k && rng.below(2) == 0) {
      td.bags.push_back(shared);
      const int mid = td.node_count++;
      td.tree_edges.emplace_back(x, mid);
      td.tree_edges.emplace_back(mid, y);
    } else {
      td.tree_edges.emplace_back(x, y);
    }
  }
  return {g, td};
}

}  // namespace

TEST_CASE("already smooth path stays a path") {
  const Graph g = Graph::path(4);
  const auto out = normalize_to_smooth_simple(g, path_td({{0, 1}, {1, 2}, {2, 3}}), 1);
  check_smooth_output(g, out, 1);
  CHECK(out.node_count == 3);
}

TEST_CASE("triangle with a pendant vertex") {
  Graph g = Graph::complete(3);
  g.add_vertex();
  g.add_edge(0, 3);
  const auto out = normalize_to_smooth_simple(g, path_td({{0, 1, 2}, {0, 3}}), 2);
  check_smooth_output(g, out, 2);
  REQUIRE(out.node_count == 2);
  CHECK(set_intersection(out.bags[0], out.bags[1]).size() == 2);
  CHECK(contains(set_union(out.bags[0], out.bags[1]), 3));
}

TEST_CASE("preconditions") {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::VerificationFailed;
  };
  CHECK(kind_of([] { normalize_to_smooth_simple(Graph::complete(3), path_td({{0, 1, 2}}), 3); }) ==
        ErrorKind::TooSmall);
  CHECK(kind_of([] { normalize_to_smooth_simple(Graph::path(3), path_td({{0, 1}}), 1); }) ==
        ErrorKind::PreconditionViolated);
  // K-bar(2,3): the three triangles share {0,1}.
  CHECK(kind_of([] {
          TreeDecomposition td = path_td({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
          normalize_to_smooth_simple(gen_kbar3(2), td, 2);
        }) == ErrorKind::NotSimple);
}

TEST_CASE("untidy inputs become smooth") {
  for (int k = 1; k <= 4; ++k)
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      const int n = k + 2 + static_cast<int>(seed * 3);
      auto [g, td] = untidy_instance(k, n, seed);
      REQUIRE(verify_decomposition(g, td, k).is_k_simple);
      const auto out = normalize_to_smooth_simple(g, td, k);
      check_smooth_output(g, out, k);
      CHECK(out.node_count == n - k);
      CHECK(score(out) <= static_cast<long long>(k + 1) * n * (n + 1));
    }
}

TEST_CASE("graphs with fewer edges than the bags allow") {
  for (int k = 2; k <= 3; ++k)
    for (int n = k + 1; n <= 9; ++n) {
      // Edgeless graph, one vertex per bag along a path.
      std::vector<VertexSet> bags;
      for (int v = 0; v < n; ++v) bags.push_back({v});
      const Graph g(n);
      check_smooth_output(g, normalize_to_smooth_simple(g, path_td(bags), k), k);
    }
}

TEST_CASE("move log") {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto [g, td] = untidy_instance(k, 12 + static_cast<int>(seed), seed + 100);
      std::vector<MoveRecord> log;
      const auto out = normalize_to_smooth_simple(g, td, k, &log);
      check_smooth_output(g, out, k);
      for (const auto& m : log) {
        if (m.kind == MoveKind::Contraction) {
          CHECK(m.bags_after < m.bags_before);
        } else if (m.rooted && m.kind != MoveKind::GrowMaxBag) {
          CHECK(m.score_after > m.score_before);
        }
        if (m.rooted) {
          const long long n = g.vertex_count();
          CHECK(m.score_after <= (k + 1) * n * (n + 1));
        }
      }
    }
}
