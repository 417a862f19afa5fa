#include "psk/products.hpp"

#include <algorithm>
#include <set>

#include "psk/error.hpp"

namespace psk {

Graph strong_product(const Graph& g1, const Graph& g2) {
  const ProductIndex ix{g1.vertex_count(), g2.vertex_count()};
  Graph out(ix.size());
  for (int x = 0; x < ix.size(); ++x)
    for (int y = x + 1; y < ix.size(); ++y) {
      const Coord a = ix.coord(x), b = ix.coord(y);
      const bool same1 = a.a == b.a, same2 = a.b == b.b;
      const bool adj1 = g1.has_edge(a.a, b.a), adj2 = g2.has_edge(a.b, b.b);
      if ((same1 && adj2) || (same2 && adj1) || (adj1 && adj2)) out.add_edge(x, y);
    }
  return out;
}

Digraph directed_product(const Digraph& d1, const Digraph& d2) {
  const ProductIndex ix{d1.vertex_count(), d2.vertex_count()};
  Digraph out(ix.size());
  for (int v = 0; v < d1.vertex_count(); ++v)
    for (auto [u, w] : d2.arcs()) out.add_arc(ix.id({v, u}), ix.id({v, w}));
  for (auto [u, w] : d1.arcs())
    for (int v = 0; v < d2.vertex_count(); ++v) out.add_arc(ix.id({u, v}), ix.id({w, v}));
  for (auto [u1, w1] : d1.arcs())
    for (auto [u2, w2] : d2.arcs()) out.add_arc(ix.id({u1, u2}), ix.id({w1, w2}));
  out.set_oriented_flag(d1.oriented_flag() && d2.oriented_flag());
  return out;
}

const char* to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case EdgeKind::Horizontal: return "horizontal";
    case EdgeKind::Vertical: return "vertical";
    case EdgeKind::Diagonal: return "diagonal";
    case EdgeKind::Missing: return "missing";
  }
  return "unknown";
}

EdgeKind classify_edge(const Embedding& e, Coord x, Coord y) {
  if (x == y) return EdgeKind::Missing;
  if (x.a == y.a) return e.host2.adjacent(x.b, y.b) ? EdgeKind::Horizontal : EdgeKind::Missing;
  if (x.b == y.b) return e.host1.adjacent(x.a, y.a) ? EdgeKind::Vertical : EdgeKind::Missing;
  const bool forward = e.host1.has_arc(x.a, y.a) && e.host2.has_arc(x.b, y.b);
  const bool backward = e.host1.has_arc(y.a, x.a) && e.host2.has_arc(y.b, x.b);
  return forward || backward ? EdgeKind::Diagonal : EdgeKind::Missing;
}

bool EmbeddingReport::ok() const {
  return injective && in_bounds && edges_realized && (!witness1.present || witness1.valid) &&
         (!witness2.present || witness2.valid);
}

namespace {

WitnessCheck check_witness(const Digraph& host, const std::optional<TreeDecomposition>& witness) {
  WitnessCheck c;
  if (!witness) return c;
  c.present = true;
  const auto r = verify_decomposition(underlying(host), *witness, 0);
  c.valid = r.is_valid;
  c.width = r.width;
  c.violation = r.valid_violation;
  return c;
}

}  // namespace

EmbeddingReport verify_embedding(const Graph& g, const Embedding& e) {
  EmbeddingReport r;
  r.indegree1 = max_indegree(e.host1);
  r.indegree2 = max_indegree(e.host2);
  r.witness1 = check_witness(e.host1, e.witness1);
  r.witness2 = check_witness(e.host2, e.witness2);
  if (r.witness1.present && !r.witness1.valid) r.violations.push_back("witness1: " + r.witness1.violation);
  if (r.witness2.present && !r.witness2.valid) r.violations.push_back("witness2: " + r.witness2.violation);

  if (static_cast<int>(e.map.size()) != g.vertex_count()) {
    r.violations.push_back("map covers " + std::to_string(e.map.size()) + " of " +
                           std::to_string(g.vertex_count()) + " guest vertices");
    return r;
  }
  r.in_bounds = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const Coord c = e.map[v];
    if (c.a < 0 || c.a >= e.host1.vertex_count() || c.b < 0 || c.b >= e.host2.vertex_count()) {
      r.in_bounds = false;
      r.violations.push_back("vertex " + std::to_string(v) + " maps outside the hosts");
    }
  }
  std::set<Coord> images(e.map.begin(), e.map.end());
  r.injective = images.size() == e.map.size();
  if (!r.injective) r.violations.push_back("map is not injective");
  if (!r.in_bounds) return r;

  r.edges_realized = true;
  r.edges = g.edges();
  for (auto [u, v] : r.edges) {
    const EdgeKind kind = classify_edge(e, e.map[u], e.map[v]);
    r.kinds.push_back(kind);
    switch (kind) {
      case EdgeKind::Horizontal: ++r.horizontal; break;
      case EdgeKind::Vertical: ++r.vertical; break;
      case EdgeKind::Diagonal: ++r.diagonal; break;
      case EdgeKind::Missing:
        r.edges_realized = false;
        r.violations.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " not in the product");
        break;
    }
  }
  return r;
}

bool embeds_in_strong_product(const Graph& g, const Embedding& e) {
  if (static_cast<int>(e.map.size()) != g.vertex_count()) return false;
  std::set<Coord> images(e.map.begin(), e.map.end());
  if (images.size() != e.map.size()) return false;
  for (const Coord& c : e.map)
    if (c.a < 0 || c.a >= e.host1.vertex_count() || c.b < 0 || c.b >= e.host2.vertex_count()) return false;
  const Graph h1 = underlying(e.host1), h2 = underlying(e.host2);
  for (auto [u, v] : g.edges()) {
    const Coord x = e.map[u], y = e.map[v];
    const bool same1 = x.a == y.a, same2 = x.b == y.b;
    const bool adj1 = h1.has_edge(x.a, y.a), adj2 = h2.has_edge(x.b, y.b);
    if (!((same1 && adj2) || (same2 && adj1) || (adj1 && adj2))) return false;
  }
  return true;
}

namespace {

VertexSet proj1(const Embedding& e, const VertexSet& c) {
  VertexSet out;
  for (Vertex v : c) out.push_back(e.map.at(v).a);
  return make_vertex_set(out);
}

VertexSet proj2(const Embedding& e, const VertexSet& c) {
  VertexSet out;
  for (Vertex v : c) out.push_back(e.map.at(v).b);
  return make_vertex_set(out);
}

bool induces_clique(const Digraph& d, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!d.adjacent(s[i], s[j])) return false;
  return true;
}

// No arc leaves `from` towards any other member of `set`.
bool only_incoming(const Digraph& d, Vertex from, const VertexSet& set) {
  for (Vertex w : set)
    if (w != from && d.has_arc(from, w)) return false;
  return true;
}

}  // namespace

ProjectionProfile projection_profile(const Embedding& e, const VertexSet& c) {
  const VertexSet p1 = proj1(e, c), p2 = proj2(e, c);
  return {static_cast<int>(p1.size()), static_cast<int>(p2.size()), induces_clique(e.host1, p1),
          induces_clique(e.host2, p2)};
}

bool CliqueDiagnostics::has_bad_vertex() const {
  return std::any_of(attached.begin(), attached.end(),
                     [](const AttachedFlags& a) { return a.diagonal || a.magnetic1 || a.magnetic2; });
}

CliqueDiagnostics clique_diagnostics(const Graph& g, const Embedding& e, const VertexSet& c_in) {
  const VertexSet c = make_vertex_set(c_in);
  if (!is_clique(g, c)) throw Error(ErrorKind::NotAClique, "diagnostics need a clique");
  if (static_cast<int>(e.map.size()) != g.vertex_count())
    throw Error(ErrorKind::InvalidArgument, "embedding does not match the graph");
  CliqueDiagnostics d;
  d.clique = c;
  const VertexSet p1 = proj1(e, c), p2 = proj2(e, c);
  for (Vertex v : c) {
    MemberFlags m;
    m.v = v;
    const Coord cv = e.map[v];
    for (Vertex w : c) {
      if (w == v) continue;
      m.redundant1 = m.redundant1 || e.map[w].a == cv.a;
      m.redundant2 = m.redundant2 || e.map[w].b == cv.b;
    }
    m.redundant = m.redundant1 && m.redundant2;
    m.attractive1 = only_incoming(e.host1, cv.a, p1);
    m.attractive2 = only_incoming(e.host2, cv.b, p2);
    d.members.push_back(m);
  }
  for (Vertex v : attached_vertices(g, c)) {
    AttachedFlags a;
    a.v = v;
    const Coord cv = e.map[v];
    a.in_strip1 = contains(p1, cv.a);
    a.in_strip2 = contains(p2, cv.b);
    a.in_box = a.in_strip1 && a.in_strip2;
    a.diagonal = !a.in_strip1 && !a.in_strip2;
    a.magnetic1 = !a.in_box && a.in_strip2 && only_incoming(e.host1, cv.a, p1);
    a.magnetic2 = !a.in_box && a.in_strip1 && only_incoming(e.host2, cv.b, p2);
    d.attached.push_back(a);
  }
  d.attachment_count = static_cast<int>(d.attached.size());
  return d;
}

BigDiagonalEdge big_diagonal_edge(const Graph& g, const Embedding& e, const VertexSet& d_in) {
  const VertexSet d = make_vertex_set(d_in);
  if (!is_clique(g, d)) throw Error(ErrorKind::NotAClique, "big diagonal edge needs a clique");
  const VertexSet p1 = proj1(e, d), p2 = proj2(e, d);
  if (p1.size() != d.size() || p2.size() != d.size())
    throw Error(ErrorKind::NotDiagonal, "clique is not diagonal");
  if (d.size() < 2) throw Error(ErrorKind::TooSmall, "a diagonal edge needs two vertices");
  if (!is_transitive_tournament(e.host1, p1) || !is_transitive_tournament(e.host2, p2))
    throw Error(ErrorKind::ProjectionsNotTransitive, "projections are not transitive tournaments");
  const Edge arc1 = big_arc(e.host1, p1), arc2 = big_arc(e.host2, p2);
  Vertex i = -1, j = -1;
  for (Vertex v : d) {
    if (e.map[v].a == arc1.first) i = v;
    if (e.map[v].a == arc1.second) j = v;
  }
  if (e.map[i].b != arc2.first || e.map[j].b != arc2.second)
    throw Error(ErrorKind::InvariantBroken, "big arcs of the projections do not come from one edge");
  return {{i, j}, {e.map[i].a, e.map[j].b}, {e.map[j].a, e.map[i].b}};
}

long long bad_vertex_threshold(long long s, long long t, long long k) {
  return 2 * k * k * std::max(s, t) + k * k + 1;
}

}  // namespace psk
