#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psk/decomposition.hpp"
#include "psk/graph.hpp"
#include "psk/products.hpp"

namespace psk {

inline constexpr int kTreewidthLimit = 14;
inline constexpr int kSimpleTreewidthLimit = 9;
inline constexpr int kCliqueLimit = 30;

struct TreewidthResult {
  int width = -1;
  std::vector<Vertex> elimination_order;
  TreeDecomposition witness;
};

/// Subset dynamic programming over elimination orders. Throws TooLarge.
TreewidthResult exact_treewidth(const Graph& g, int limit = kTreewidthLimit);

struct SimpleTreewidthResult {
  int width = 0;
  /// A simple k-tree on V(g) containing g, when width >= 1.
  std::optional<ConstructionTrace> trace;
};

/// Smallest k such that g is a spanning subgraph of a simple k-tree. Throws TooLarge.
SimpleTreewidthResult exact_simple_treewidth(const Graph& g, int limit = kSimpleTreewidthLimit);

int clique_number(const Graph& g, int limit = kCliqueLimit);

struct SearchBudget {
  int max_host_size = 2;
  int max_indegree1 = 1;
  int max_indegree2 = 1;
  int max_tw1 = 1;
  int max_tw2 = 1;
  bool oriented_only = false;
  bool operator==(const SearchBudget&) const = default;
};

struct SearchCertificate {
  bool embeddable = false;
  std::optional<Embedding> embedding;
  SearchBudget budget;
  long long hosts1 = 0;  // candidate first factors after filtering
  long long hosts2 = 0;
  long long pairs_examined = 0;
  long long pairs_skipped = 0;
  long long search_nodes = 0;
};

/// Adjacency code of d: bit (u * m + v) set for each arc u->v.
std::uint64_t digraph_code(const Digraph& d);
/// Smallest code over all vertex relabellings.
std::uint64_t canonical_code(const Digraph& d);
/// One representative per isomorphism class on exactly m vertices (m <= 4),
/// each the relabelling attaining its canonical code, sorted by code.
std::vector<Digraph> canonical_digraphs(int m, bool oriented_only);

/// Throws BudgetTooLarge beyond 6 guest vertices or 4 host vertices.
SearchCertificate exhaustive_embedding_search(const Graph& g, const SearchBudget& budget);

}  // namespace psk
