#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "psk/decomposition.hpp"
#include "psk/graph.hpp"

namespace psk {

/// A product vertex: (factor-1 vertex, factor-2 vertex).
struct Coord {
  Vertex a = 0;
  Vertex b = 0;
  auto operator<=>(const Coord&) const = default;
};

/// Row-major bijection between coordinates and product vertex ids.
struct ProductIndex {
  int n1 = 0;
  int n2 = 0;
  int id(Coord c) const { return c.a * n2 + c.b; }
  Coord coord(int id) const { return {id / n2, id % n2}; }
  int size() const { return n1 * n2; }
};

Graph strong_product(const Graph& g1, const Graph& g2);
/// Oriented flag is set iff both factors carry it.
Digraph directed_product(const Digraph& d1, const Digraph& d2);

struct Embedding {
  Digraph host1;
  Digraph host2;
  std::vector<Coord> map;  // indexed by guest vertex
  std::optional<TreeDecomposition> witness1;
  std::optional<TreeDecomposition> witness2;
};

/// Horizontal: same factor-1 vertex. Vertical: same factor-2 vertex.
enum class EdgeKind { Horizontal, Vertical, Diagonal, Missing };
const char* to_string(EdgeKind kind) noexcept;

/// How the pair of coordinates is joined in the directed product.
EdgeKind classify_edge(const Embedding& e, Coord x, Coord y);

struct WitnessCheck {
  bool present = false;
  bool valid = false;
  int width = -1;
  std::string violation;
};

struct EmbeddingReport {
  bool injective = false;
  bool in_bounds = false;
  bool edges_realized = false;
  std::vector<std::string> violations;
  std::vector<Edge> edges;  // guest edges, as in Graph::edges()
  std::vector<EdgeKind> kinds;
  int horizontal = 0;
  int vertical = 0;
  int diagonal = 0;
  int indegree1 = 0;
  int indegree2 = 0;
  WitnessCheck witness1;
  WitnessCheck witness2;

  /// Injective, in bounds, every edge realized, and every supplied witness valid.
  bool ok() const;
};

EmbeddingReport verify_embedding(const Graph& g, const Embedding& e);

/// Checks the map against the strong product of the underlying hosts.
bool embeds_in_strong_product(const Graph& g, const Embedding& e);

struct ProjectionProfile {
  int p = 0;
  int q = 0;
  bool p_induces_clique = true;
  bool q_induces_clique = true;
};

ProjectionProfile projection_profile(const Embedding& e, const VertexSet& c);

struct MemberFlags {
  Vertex v = 0;
  bool redundant1 = false;
  bool redundant2 = false;
  bool redundant = false;
  bool attractive1 = false;
  bool attractive2 = false;
};

struct AttachedFlags {
  Vertex v = 0;
  bool in_box = false;  // inside P1(C) x P2(C)
  bool in_strip1 = false;
  bool in_strip2 = false;
  bool diagonal = false;
  bool magnetic1 = false;
  bool magnetic2 = false;
};

struct CliqueDiagnostics {
  VertexSet clique;
  std::vector<MemberFlags> members;
  std::vector<AttachedFlags> attached;
  int attachment_count = 0;

  bool has_bad_vertex() const;
};

CliqueDiagnostics clique_diagnostics(const Graph& g, const Embedding& e, const VertexSet& c);

struct BigDiagonalEdge {
  Edge edge;        // guest vertices (i, j) with P1 arc i->j and P2 arc i->j big
  Coord sibling_ij;  // (P1(i), P2(j))
  Coord sibling_ji;  // (P1(j), P2(i))
};

BigDiagonalEdge big_diagonal_edge(const Graph& g, const Embedding& e, const VertexSet& d);

/// 2k^2 max(s, t) + k^2 + 1.
long long bad_vertex_threshold(long long s, long long t, long long k);

}  // namespace psk
