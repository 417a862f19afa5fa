#include "psk/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace psk {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

BoostGraph to_boost(const Graph& g, bool apex) {
  const int n = g.vertex_count();
  BoostGraph b(n + (apex ? 1 : 0));
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, b);
  if (apex)
    for (Vertex v = 0; v < n; ++v) boost::add_edge(v, n, b);
  return b;
}

}  // namespace

bool is_planar(const Graph& g) { return boost::boyer_myrvold_planarity_test(to_boost(g, false)); }

bool is_outerplanar(const Graph& g) { return boost::boyer_myrvold_planarity_test(to_boost(g, true)); }

}  // namespace psk
