#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psk/graph.hpp"

namespace psk {

struct TreeDecomposition {
  int node_count = 0;
  std::vector<Edge> tree_edges;
  std::vector<VertexSet> bags;
  std::optional<int> root;

  int width() const;
  bool operator==(const TreeDecomposition&) const = default;
};

struct TraceStep {
  Vertex v = 0;
  VertexSet clique;
  bool operator==(const TraceStep&) const = default;
};

/// Build order of a k-tree: a (k+1)-clique, then vertices attached to k-cliques.
struct ConstructionTrace {
  int k = 1;
  VertexSet base;
  std::vector<TraceStep> steps;

  int vertex_count() const { return static_cast<int>(base.size() + steps.size()); }
  bool operator==(const ConstructionTrace&) const = default;
};

struct DecompositionReport {
  bool is_valid = false;
  int width = -1;
  bool is_normal = false;
  bool is_k_simple = false;
  bool is_k_smooth = false;
  bool is_k_fine = false;
  /// One message per failed flag, empty when the flag holds.
  std::string valid_violation;
  std::string normal_violation;
  std::string simple_violation;
  std::string smooth_violation;
  std::string fine_violation;
};

DecompositionReport verify_decomposition(const Graph& g, const TreeDecomposition& td, int k);

/// Nodes whose bag contains every vertex of s, ascending.
std::vector<int> nodes_containing(const TreeDecomposition& td, const VertexSet& s);

/// Sum over nodes of (depth + 1) * |bag|. Throws Unrooted.
long long score(const TreeDecomposition& td);

/// Validates a trace and returns the graph it builds. Throws InvalidTrace.
Graph validate_trace(const ConstructionTrace& trace, bool require_simple);
Graph trace_graph(const ConstructionTrace& trace);

/// Decomposition whose node 0 holds the base and node i holds step i's clique
/// plus its vertex, attached to the lowest node containing the clique.
TreeDecomposition ktree_trace_decomposition(const ConstructionTrace& trace);
TreeDecomposition simple_ktree_to_decomposition(const ConstructionTrace& trace);

std::optional<ConstructionTrace> recognize_ktree(const Graph& g, int k);
std::optional<ConstructionTrace> recognize_simple_ktree(const Graph& g, int k);

struct Completion {
  Graph graph;
  ConstructionTrace trace;
};

Completion ktree_completion(const Graph& g, const TreeDecomposition& td, int k);
Completion decomposition_to_simple_ktree(const Graph& g, const TreeDecomposition& td, int k);

/// Colour in 0..k per vertex; every (k+1)-clique of the traced graph is rainbow.
std::vector<int> rainbow_color_ktree(const ConstructionTrace& trace);

enum class MoveKind { Contraction, RebalanceRehang, DeepenRehang, BagFill, Subdivision, GrowMaxBag };
const char* to_string(MoveKind kind) noexcept;

struct MoveRecord {
  MoveKind kind;
  int bags_before = 0;
  int bags_after = 0;
  /// Scores are only meaningful once a root exists (after the grow phase).
  long long score_before = 0;
  long long score_after = 0;
  bool rooted = false;
};

/// Turns a k-simple decomposition of width <= k into a normal, k-simple,
/// k-smooth one by local improvement. The result is rooted at node 0 and
/// numbered in BFS order.
TreeDecomposition normalize_to_smooth_simple(const Graph& g, const TreeDecomposition& td, int k,
                                             std::vector<MoveRecord>* log = nullptr);

}  // namespace psk
