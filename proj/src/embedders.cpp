#include "psk/embedders.hpp"

#include <algorithm>
#include <string>

#include "psk/error.hpp"
#include "psk/planarity.hpp"

namespace psk {

namespace {

void attach_bag(TreeDecomposition& td, const VertexSet& clique, Vertex fresh) {
  int holder = -1;
  for (int x = 0; x < td.node_count && holder < 0; ++x)
    if (is_subset(clique, td.bags[x])) holder = x;
  if (holder < 0) throw Error(ErrorKind::InvariantBroken, "no witness bag holds the projected clique");
  td.bags.push_back(with_vertex(clique, fresh));
  td.tree_edges.emplace_back(holder, td.node_count++);
}

TreeDecomposition single_bag(VertexSet bag) {
  TreeDecomposition td;
  td.node_count = 1;
  td.bags.push_back(std::move(bag));
  td.root = 0;
  return td;
}

VertexSet proj(const Embedding& e, const VertexSet& c, int side) {
  VertexSet out;
  for (Vertex v : c) out.push_back(side == 1 ? e.map[v].a : e.map[v].b);
  return make_vertex_set(out);
}

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorKind::InvariantBroken, what); }

// Restricts an embedding to the placed vertices, renumbered in order.
std::pair<Graph, Embedding> placed_part(const Graph& gt, const Embedding& e, const std::vector<char>& placed) {
  VertexSet keep;
  for (Vertex v = 0; v < gt.vertex_count(); ++v)
    if (placed[v]) keep.push_back(v);
  Embedding sub{e.host1, e.host2, {}, e.witness1, e.witness2};
  for (Vertex v : keep) sub.map.push_back(e.map[v]);
  return {gt.induced(keep), sub};
}

void check_outerplanar_invariants(const Graph& gt, const Embedding& e, const std::vector<char>& placed) {
  auto [sub_g, sub_e] = placed_part(gt, e, placed);
  const auto report = verify_embedding(sub_g, sub_e);
  if (!report.ok()) broken("I1: " + (report.violations.empty() ? std::string("?") : report.violations.front()));
  if (max_indegree(e.host1) > 1 || max_indegree(e.host2) > 1) broken("I2: indegree above 1");
  std::set<Coord> used;
  std::map<Coord, Vertex> at;
  for (Vertex v = 0; v < gt.vertex_count(); ++v)
    if (placed[v]) {
      used.insert(e.map[v]);
      at[e.map[v]] = v;
    }
  std::map<Coord, int> unused_owner;
  for (auto [u, v] : gt.edges()) {
    if (!placed[u] || !placed[v]) continue;
    const Coord x = e.map[u], y = e.map[v];
    if (x.a == y.a || x.b == y.b) continue;
    for (Coord s : {Coord{x.a, y.b}, Coord{y.a, x.b}}) {
      if (used.count(s)) {
        const Vertex w = at[s];
        if (!gt.has_edge(w, u) || !gt.has_edge(w, v)) broken("I3: used sibling not adjacent to its diagonal edge");
      } else if (++unused_owner[s] > 1) {
        broken("I4: two diagonal edges share an unused sibling");
      }
    }
  }
}

// Places `v` next to the edge {x, y} following the outerplanar case analysis.
Coord outerplanar_step(Embedding& e, TreeDecomposition& w1, TreeDecomposition& w2, const std::set<Coord>& used,
                       Coord cx, Coord cy) {
  if (cx.a == cy.a) {
    const Vertex head = e.host2.has_arc(cx.b, cy.b) ? cy.b : cx.b;
    const Vertex x = e.host1.add_vertex();
    e.host1.add_arc(cx.a, x);
    attach_bag(w1, {cx.a}, x);
    return {x, head};
  }
  if (cx.b == cy.b) {
    const Vertex head = e.host1.has_arc(cx.a, cy.a) ? cy.a : cx.a;
    const Vertex y = e.host2.add_vertex();
    e.host2.add_arc(cx.b, y);
    attach_bag(w2, {cx.b}, y);
    return {head, y};
  }
  // Diagonal: name the endpoints so that v_i -> v_j and w_i -> w_j.
  if (!e.host1.has_arc(cx.a, cy.a)) std::swap(cx, cy);
  if (!e.host1.has_arc(cx.a, cy.a) || !e.host2.has_arc(cx.b, cy.b)) broken("diagonal edge not co-directed");
  const Coord first{cx.a, cy.b}, second{cy.a, cx.b};
  if (!used.count(first)) return first;
  if (!used.count(second)) return second;
  broken("both siblings of a diagonal edge are used");
}

}  // namespace

Embedding embed_outerplanar(const Graph& g, const EmbedOptions& options, SiblingLedger* ledger) {
  const int n = g.vertex_count();
  Embedding e;
  e.host1 = Digraph(2, true);
  e.host1.add_arc(0, 1);
  if (n <= 2) {
    e.host2 = Digraph(1, true);
    for (Vertex v = 0; v < n; ++v) e.map.push_back({v, 0});
    e.witness1 = single_bag({0, 1});
    e.witness2 = single_bag({0});
    if (ledger) {
      *ledger = {};
      ledger->used.insert(e.map.begin(), e.map.end());
    }
    return e;
  }
  if (!is_outerplanar(g)) throw Error(ErrorKind::NotOuterplanar, "graph is not outerplanar");

  Graph full = g;
  if (full.edge_count() < static_cast<std::size_t>(2 * n - 3)) {
    for (Vertex u = 0; u < n && full.edge_count() < static_cast<std::size_t>(2 * n - 3); ++u)
      for (Vertex v = u + 1; v < n && full.edge_count() < static_cast<std::size_t>(2 * n - 3); ++v) {
        if (full.has_edge(u, v)) continue;
        Graph trial = full;
        trial.add_edge(u, v);
        if (is_outerplanar(trial)) full = std::move(trial);
      }
  }
  const auto trace = recognize_simple_ktree(full, 2);
  if (!trace) broken("maximal outerplanar graph is not a simple 2-tree");

  e.host2 = Digraph(2, true);
  e.host2.add_arc(0, 1);
  TreeDecomposition w1 = single_bag({0, 1}), w2 = single_bag({0, 1});
  e.map.assign(n, {-1, -1});
  std::vector<char> placed(n, 0);
  std::set<Coord> used;
  const Coord base_coords[3] = {{0, 0}, {1, 0}, {1, 1}};
  for (int i = 0; i < 3; ++i) {
    e.map[trace->base[i]] = base_coords[i];
    placed[trace->base[i]] = 1;
    used.insert(base_coords[i]);
  }
  if (options.check_invariants) check_outerplanar_invariants(full, e, placed);
  for (const auto& step : trace->steps) {
    const Coord c = outerplanar_step(e, w1, w2, used, e.map[step.clique[0]], e.map[step.clique[1]]);
    e.map[step.v] = c;
    placed[step.v] = 1;
    used.insert(c);
    if (options.check_invariants) {
      e.witness1 = w1;
      e.witness2 = w2;
      check_outerplanar_invariants(full, e, placed);
    }
  }
  e.witness1 = std::move(w1);
  e.witness2 = std::move(w2);
  if (ledger) {
    *ledger = {};
    ledger->used = used;
    for (auto [u, v] : full.edges()) {
      const Coord x = e.map[u], y = e.map[v];
      if (x.a != y.a && x.b != y.b) ledger->diagonal_record[{u, v}] = {Coord{x.a, y.b}, Coord{y.a, x.b}};
    }
  }
  return e;
}

namespace {

struct StwState {
  int k = 0;
  Graph gt;
  Embedding e;
  std::vector<char> placed;
  SiblingLedger ledger;
};

bool is_diagonal(const Embedding& e, const VertexSet& c) {
  return proj(e, c, 1).size() == c.size() && proj(e, c, 2).size() == c.size();
}

void record_if_diagonal(StwState& s, const VertexSet& d) {
  if (!is_diagonal(s.e, d)) return;
  const BigDiagonalEdge big = big_diagonal_edge(s.gt, s.e, d);
  s.ledger.diagonal_record[d] = {big.sibling_ij, big.sibling_ji};
}

void check_stw_invariants(const StwState& s) {
  const int k = s.k;
  auto [sub_g, sub_e] = placed_part(s.gt, s.e, s.placed);
  const auto report = verify_embedding(sub_g, sub_e);
  if (!report.ok()) broken("I1: " + (report.violations.empty() ? std::string("?") : report.violations.front()));
  if (!s.e.host1.is_oriented() || !s.e.host2.is_oriented()) broken("hosts not oriented");
  if (report.indegree1 > k - 1 || report.indegree2 > k - 1) broken("I2: indegree above k-1");
  if (report.witness1.width > k - 1 || report.witness2.width > k - 1) broken("I3: witness width above k-1");

  std::map<Coord, Vertex> at;
  for (Vertex v = 0; v < s.gt.vertex_count(); ++v)
    if (s.placed[v]) at[s.e.map[v]] = v;
  std::map<VertexSet, std::pair<Coord, Coord>> recomputed;
  std::map<Coord, int> unused_owner;
  for (const auto& c : cliques_of_size(s.gt, k)) {
    if (!is_transitive_tournament(s.e.host1, proj(s.e, c, 1)) ||
        !is_transitive_tournament(s.e.host2, proj(s.e, c, 2)))
      broken("I4: a k-clique projects onto a non-transitive set");
    if (!is_diagonal(s.e, c)) continue;
    const BigDiagonalEdge big = big_diagonal_edge(s.gt, s.e, c);
    recomputed[c] = {big.sibling_ij, big.sibling_ji};
    for (Coord sib : {big.sibling_ij, big.sibling_ji}) {
      auto it = at.find(sib);
      if (it != at.end()) {
        for (Vertex u : c)
          if (!s.gt.has_edge(it->second, u)) broken("I5: used big sibling not adjacent to its clique");
      } else if (++unused_owner[sib] > 1) {
        broken("I6: two diagonal k-cliques share an unused big sibling");
      }
    }
  }
  if (recomputed != s.ledger.diagonal_record) broken("sibling ledger out of date");
}

}  // namespace

Embedding embed_simple_treewidth(const ConstructionTrace& trace, const EmbedOptions& options,
                                 SiblingLedger* ledger) {
  const int k = trace.k;
  if (k < 2) throw Error(ErrorKind::ParameterRange, "simple treewidth embedding needs k >= 2");
  validate_trace(trace, true);
  const int n = trace.vertex_count();

  StwState s;
  s.k = k;
  s.gt = Graph(n);
  s.placed.assign(n, 0);
  s.e.host1 = Digraph(k, true);
  for (Vertex i = 0; i < k; ++i)
    for (Vertex j = i + 1; j < k; ++j) s.e.host1.add_arc(i, j);
  s.e.host2 = Digraph(2, true);
  s.e.host2.add_arc(0, 1);
  VertexSet first;
  for (Vertex i = 0; i < k; ++i) first.push_back(i);
  TreeDecomposition w1 = single_bag(first), w2 = single_bag({0, 1});
  s.e.map.assign(n, {-1, -1});

  const VertexSet base = make_vertex_set(trace.base);
  for (int i = 0; i <= k; ++i) {
    const Coord c = i < k ? Coord{i, 0} : Coord{k - 1, 1};
    s.e.map[base[i]] = c;
    s.placed[base[i]] = 1;
    s.ledger.used.insert(c);
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) s.gt.add_edge(base[i], base[j]);
  for_each_subset(base, k, [&](const VertexSet& d) { record_if_diagonal(s, d); });
  if (options.check_invariants) {
    s.e.witness1 = w1;
    s.e.witness2 = w2;
    check_stw_invariants(s);
  }

  for (const auto& step : trace.steps) {
    const VertexSet c = make_vertex_set(step.clique);
    const VertexSet p1 = proj(s.e, c, 1), p2 = proj(s.e, c, 2);
    Coord target;
    const bool diagonal = static_cast<int>(p1.size()) == k && static_cast<int>(p2.size()) == k;
    try {
      if (diagonal) {
        auto it = s.ledger.diagonal_record.find(c);
        if (it == s.ledger.diagonal_record.end()) broken("diagonal clique missing from the ledger");
        const auto [ij, ji] = it->second;
        if (!s.ledger.used.count(ij))
          target = ij;
        else if (!s.ledger.used.count(ji))
          target = ji;
        else
          broken("both big siblings of a diagonal clique are used");
      } else {
        // The lexicographically least pair sharing a coordinate decides the factor.
        bool least_shares_first = false;
        for (std::size_t i = 0; i < c.size(); ++i) {
          bool found = false;
          for (std::size_t j = i + 1; j < c.size(); ++j) {
            const Coord a = s.e.map[c[i]], b = s.e.map[c[j]];
            if (a.a == b.a || a.b == b.b) {
              least_shares_first = a.a == b.a;
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (least_shares_first) {
          const Vertex x = s.e.host1.add_vertex();
          for (Vertex a : p1) s.e.host1.add_arc(a, x);
          attach_bag(w1, p1, x);
          target = {x, *sink_of(s.e.host2, p2)};
        } else {
          const Vertex y = s.e.host2.add_vertex();
          for (Vertex b : p2) s.e.host2.add_arc(b, y);
          attach_bag(w2, p2, y);
          target = {*sink_of(s.e.host1, p1), y};
        }
      }
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::InvariantBroken) throw;
      broken(err.what());
    }

    s.e.map[step.v] = target;
    s.placed[step.v] = 1;
    s.ledger.used.insert(target);
    for (Vertex u : c) s.gt.add_edge(u, step.v);
    if (!diagonal)
      for (Vertex u : c) record_if_diagonal(s, with_vertex(without_vertex(c, u), step.v));
    if (options.check_invariants) {
      s.e.witness1 = w1;
      s.e.witness2 = w2;
      check_stw_invariants(s);
    }
  }
  s.e.witness1 = std::move(w1);
  s.e.witness2 = std::move(w2);
  if (ledger) *ledger = std::move(s.ledger);
  return std::move(s.e);
}

Partition partition_by_treewidth(const ConstructionTrace& trace, int p, int q) {
  if (p < 0 || q < 0 || trace.k != p + q + 1)
    throw Error(ErrorKind::ArityMismatch, "need k = p + q + 1 with p, q >= 0");
  const std::vector<int> color = rainbow_color_ktree(trace);
  const TreeDecomposition td = ktree_trace_decomposition(trace);
  Partition out;
  std::vector<int> local(color.size());
  for (Vertex v = 0; v < static_cast<Vertex>(color.size()); ++v) {
    auto& part = color[v] <= p ? out.v1 : out.v2;
    local[v] = static_cast<int>(part.size());
    part.push_back(v);
  }
  out.witness1 = out.witness2 = td;
  for (int x = 0; x < td.node_count; ++x) {
    VertexSet b1, b2;
    for (Vertex v : td.bags[x]) (color[v] <= p ? b1 : b2).push_back(local[v]);
    out.witness1.bags[x] = make_vertex_set(b1);
    out.witness2.bags[x] = make_vertex_set(b2);
  }
  return out;
}

Embedding embed_dominant(const Graph& g, const VertexSet& v1_in, const VertexSet& v2_in) {
  const int n = g.vertex_count();
  const VertexSet v1 = make_vertex_set(v1_in), v2 = make_vertex_set(v2_in);
  std::vector<int> side(n, 0), local(n, -1);
  if (v1.size() != v1_in.size() || v2.size() != v2_in.size() || static_cast<int>(v1.size() + v2.size()) != n)
    throw Error(ErrorKind::NotAPartition, "parts must be disjoint and cover the graph");
  for (int i = 0; i < static_cast<int>(v1.size()); ++i) {
    if (v1[i] < 0 || v1[i] >= n) throw Error(ErrorKind::NotAPartition, "vertex out of range");
    side[v1[i]] |= 1;
    local[v1[i]] = i;
  }
  for (int i = 0; i < static_cast<int>(v2.size()); ++i) {
    if (v2[i] < 0 || v2[i] >= n || side[v2[i]]) throw Error(ErrorKind::NotAPartition, "parts overlap");
    side[v2[i]] = 2;
    local[v2[i]] = i;
  }
  const int r1 = static_cast<int>(v1.size()), r2 = static_cast<int>(v2.size());
  Embedding e;
  e.host1 = Digraph(r1 + 1, true);
  e.host2 = Digraph(r2 + 1, true);
  for (Vertex i = 0; i < r1; ++i) e.host1.add_arc(r1, i);
  for (Vertex i = 0; i < r2; ++i) e.host2.add_arc(i, r2);
  for (auto [u, v] : g.edges()) {
    if (side[u] != side[v]) continue;
    Digraph& h = side[u] == 1 ? e.host1 : e.host2;
    h.add_arc(std::min(local[u], local[v]), std::max(local[u], local[v]));
  }
  for (Vertex v = 0; v < n; ++v) e.map.push_back(side[v] == 1 ? Coord{local[v], r2} : Coord{r1, local[v]});
  return e;
}

Embedding embed_unbounded_indegree(const ConstructionTrace& trace, int p, int q) {
  const int k = trace.k;
  if (p < 1 || q < 1 || p + q < k + 1) throw Error(ErrorKind::ArityMismatch, "need p, q >= 1 and p + q >= k + 1");
  const int p1 = std::min(p - 1, k - 1), q1 = k - 1 - p1;
  const Partition part = partition_by_treewidth(trace, p1, q1);
  Embedding e = embed_dominant(trace_graph(trace), part.v1, part.v2);
  TreeDecomposition w1 = part.witness1, w2 = part.witness2;
  for (auto& b : w1.bags) b = with_vertex(b, static_cast<Vertex>(part.v1.size()));
  for (auto& b : w2.bags) b = with_vertex(b, static_cast<Vertex>(part.v2.size()));
  e.witness1 = std::move(w1);
  e.witness2 = std::move(w2);
  return e;
}

}  // namespace psk
