#pragma once

#include <cstdint>

#include "psk/decomposition.hpp"
#include "psk/graph.hpp"

namespace psk {

inline constexpr long long kDefaultVertexCap = 1'000'000;

/// Clique {0..k-1} plus k, k+1, k+2 each joined to the whole clique.
Graph gen_kbar3(int k);

/// Each step attaches to a uniformly drawn k-clique that has not been used yet.
ConstructionTrace gen_random_simple_ktree(int k, int n, std::uint64_t seed);
/// Each step attaches to a uniformly drawn k-clique; reuse allowed.
ConstructionTrace gen_random_ktree(int k, int n, std::uint64_t seed);

/// Triangles pasted on uniformly drawn outer edges; the trace is a simple 2-tree trace.
ConstructionTrace gen_max_outerplanar_trace(int n, std::uint64_t seed);
Graph gen_max_outerplanar(int n, std::uint64_t seed);

/// `rounds` times: attach `copies` fresh vertices to every k-clique.
Graph gen_attachment_closure(const Graph& g0, int k, int copies, int rounds, long long cap = kDefaultVertexCap);

/// Two vertices on every k-clique of base, then (k-1)^2 + 1 on every (k-1)-clique.
Graph gen_stw_lowerbound(int k, const Graph& base, long long cap = kDefaultVertexCap);

struct DecomposedGraph {
  Graph graph;
  TreeDecomposition td;
};

/// Same graph as gen_stw_lowerbound, together with the k-simple decomposition
/// built from a width k-1 decomposition of base.
DecomposedGraph gen_stw_lowerbound_decomposed(int k, const Graph& base, const TreeDecomposition& base_td,
                                              long long cap = kDefaultVertexCap);

}  // namespace psk
