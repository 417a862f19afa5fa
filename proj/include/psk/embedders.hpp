#pragma once

#include <map>
#include <set>
#include <utility>

#include "psk/decomposition.hpp"
#include "psk/graph.hpp"
#include "psk/products.hpp"

namespace psk {

struct EmbedOptions {
  /// Recheck the construction invariants after every step (slow; throws InvariantBroken).
  bool check_invariants = false;
};

/// Big siblings of each recorded diagonal clique, and the used coordinates.
struct SiblingLedger {
  std::map<VertexSet, std::pair<Coord, Coord>> diagonal_record;
  std::set<Coord> used;
};

/// Embeds an outerplanar graph into the directed product of two oriented trees
/// with indegree at most 1. Throws NotOuterplanar.
Embedding embed_outerplanar(const Graph& g, const EmbedOptions& options = {}, SiblingLedger* ledger = nullptr);

/// Embeds the simple k-tree of `trace` (k >= 2) into the directed product of two
/// oriented digraphs of treewidth and indegree at most k-1, with witnesses.
Embedding embed_simple_treewidth(const ConstructionTrace& trace, const EmbedOptions& options = {},
                                 SiblingLedger* ledger = nullptr);

struct Partition {
  VertexSet v1;
  VertexSet v2;
  /// Decompositions of the induced subgraphs, over local indices (position in v1 / v2).
  TreeDecomposition witness1;
  TreeDecomposition witness2;
};

/// Splits a k-tree (k = p+q+1) into parts of treewidth at most p and q.
Partition partition_by_treewidth(const ConstructionTrace& trace, int p, int q);

/// Hosts are G[V1]+ and G[V2]+ over local indices, the dominant vertex last.
Embedding embed_dominant(const Graph& g, const VertexSet& v1, const VertexSet& v2);

/// Embedding with host treewidths at most p and q (p, q >= 1, p+q >= k+1).
Embedding embed_unbounded_indegree(const ConstructionTrace& trace, int p, int q);

}  // namespace psk
