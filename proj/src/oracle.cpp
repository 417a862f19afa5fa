#include "psk/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <set>
#include <string>

#include "psk/error.hpp"

namespace psk {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

// Vertices outside s + v reachable from v through s.
int q_value(const std::vector<Mask>& adj, Mask s, int v) {
  Mask seen = Mask{1} << v, frontier = seen, out = 0;
  while (frontier) {
    const int u = std::countr_zero(frontier);
    frontier &= frontier - 1;
    Mask nb = adj[u] & ~seen;
    seen |= nb;
    out |= nb & ~s;
    frontier |= nb & s;
  }
  return std::popcount(out);
}

void check_limit(const Graph& g, int limit, const char* what) {
  if (g.vertex_count() > limit)
    throw Error(ErrorKind::TooLarge, std::string(what) + " limited to " + std::to_string(limit) + " vertices");
}

}  // namespace

TreewidthResult exact_treewidth(const Graph& g, int limit) {
  check_limit(g, std::min(limit, 25), "exact treewidth");
  const int n = g.vertex_count();
  TreewidthResult r;
  if (n == 0) return r;
  const auto adj = adjacency_masks(g);
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<int> tw(std::size_t{1} << n, INT_MAX);
  std::vector<signed char> last(std::size_t{1} << n, -1);
  tw[0] = -1;
  for (Mask s = 1; s <= full; ++s) {
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const Mask prev = s & ~(Mask{1} << v);
      const int value = std::max(tw[prev], q_value(adj, prev, v));
      if (value < tw[s]) {
        tw[s] = value;
        last[s] = static_cast<signed char>(v);
      }
    }
  }
  r.width = tw[full];
  std::vector<Vertex> order(n);
  Mask s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = last[s];
    s &= ~(Mask{1} << last[s]);
  }
  r.elimination_order = order;

  // Elimination-game decomposition.
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<Mask> filled = adj;
  TreeDecomposition& td = r.witness;
  td.node_count = n;
  td.bags.resize(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    Mask later = 0;
    for (Mask m = filled[v]; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      if (position[u] > i) later |= Mask{1} << u;
    }
    VertexSet bag{v};
    int first = -1;
    for (Mask m = later; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      bag.push_back(u);
      filled[u] |= later & ~(Mask{1} << u);
      if (first < 0 || position[u] < position[first]) first = u;
    }
    td.bags[i] = make_vertex_set(bag);
    parent[i] = first < 0 ? -1 : position[first];
  }
  int previous_root = -1;
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0) {
      td.tree_edges.emplace_back(i, parent[i]);
    } else {
      if (previous_root >= 0) td.tree_edges.emplace_back(previous_root, i);
      previous_root = i;
    }
  }
  td.root = previous_root;
  return r;
}

// ---------------------------------------------------------------- simple treewidth

namespace {

class SimpleKTreeSearch {
 public:
  SimpleKTreeSearch(const Graph& g, int k) : g_(g), k_(k), n_(g.vertex_count()), adj_(adjacency_masks(g)) {}

  std::optional<ConstructionTrace> run() {
    const long long max_edges = static_cast<long long>(k_) * n_ - static_cast<long long>(k_) * (k_ + 1) / 2;
    if (static_cast<long long>(g_.edge_count()) > max_edges) return std::nullopt;
    VertexSet others;
    for (Vertex v = 1; v < n_; ++v) others.push_back(v);
    std::optional<ConstructionTrace> found;
    for_each_subset(others, k_, [&](const VertexSet& rest) {
      if (found) return;
      VertexSet base = with_vertex(rest, 0);
      placed_ = 0;
      for (Vertex v : base) placed_ |= Mask{1} << v;
      // Edges between base vertices are all present in the k-tree; nothing to check.
      available_.clear();
      for_each_subset(base, k_, [&](const VertexSet& c) { available_.push_back(c); });
      steps_.clear();
      if (extend(-1)) found = ConstructionTrace{k_, base, steps_};
    });
    return found;
  }

 private:
  bool extend(Vertex previous) {
    if (std::popcount(placed_) == n_) return true;
    for (Vertex v = 0; v < n_; ++v) {
      if (placed_ & (Mask{1} << v)) continue;
      const Mask must = adj_[v] & placed_;
      for (std::size_t i = 0; i < available_.size(); ++i) {
        const VertexSet c = available_[i];
        Mask cm = 0;
        for (Vertex u : c) cm |= Mask{1} << u;
        if ((must & ~cm) != 0) continue;
        if (previous >= 0 && v < previous && !(cm & (Mask{1} << previous))) continue;
        // apply
        available_[i] = available_.back();
        available_.pop_back();
        for (Vertex u : c) available_.push_back(with_vertex(without_vertex(c, u), v));
        placed_ |= Mask{1} << v;
        steps_.push_back({v, c});
        if (extend(v)) return true;
        steps_.pop_back();
        placed_ &= ~(Mask{1} << v);
        available_.resize(available_.size() - k_);
        available_.push_back(c);
        std::swap(available_[i], available_.back());
      }
    }
    return false;
  }

  const Graph& g_;
  int k_;
  int n_;
  std::vector<Mask> adj_;
  Mask placed_ = 0;
  std::vector<VertexSet> available_;
  std::vector<TraceStep> steps_;
};

}  // namespace

SimpleTreewidthResult exact_simple_treewidth(const Graph& g, int limit) {
  check_limit(g, std::min(limit, 25), "exact simple treewidth");
  const int n = g.vertex_count();
  SimpleTreewidthResult r;
  if (g.edge_count() == 0 && n <= 2) return r;
  for (int k = 1; k < n; ++k) {
    auto trace = SimpleKTreeSearch(g, k).run();
    if (trace) {
      r.width = k;
      r.trace = std::move(trace);
      return r;
    }
  }
  throw Error(ErrorKind::InvariantBroken, "complete graph always succeeds at k = n-1");
}

// ---------------------------------------------------------------- clique number

namespace {

void max_clique(const std::vector<Mask>& adj, int size, Mask candidates, int& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  while (candidates) {
    if (size + std::popcount(candidates) <= best) return;
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    max_clique(adj, size + 1, candidates & adj[v], best);
  }
}

}  // namespace

int clique_number(const Graph& g, int limit) {
  check_limit(g, std::min(limit, 32), "clique number");
  const int n = g.vertex_count();
  if (n == 0) return 0;
  const auto adj = adjacency_masks(g);
  int best = 0;
  max_clique(adj, 0, n == 32 ? ~Mask{0} : (Mask{1} << n) - 1, best);
  return best;
}

// ---------------------------------------------------------------- embedding search

std::uint64_t digraph_code(const Digraph& d) {
  const int m = d.vertex_count();
  std::uint64_t code = 0;
  for (auto [u, v] : d.arcs()) code |= std::uint64_t{1} << (u * m + v);
  return code;
}

namespace {

Digraph relabel(const Digraph& d, const std::vector<int>& perm) {
  Digraph out(d.vertex_count());
  for (auto [u, v] : d.arcs()) out.add_arc(perm[u], perm[v]);
  return out;
}

Digraph from_code(int m, std::uint64_t code) {
  Digraph d(m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v && (code >> (u * m + v) & 1)) d.add_arc(u, v);
  return d;
}

}  // namespace

std::uint64_t canonical_code(const Digraph& d) {
  const int m = d.vertex_count();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = UINT64_MAX;
  do {
    best = std::min(best, digraph_code(relabel(d, perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Digraph> canonical_digraphs(int m, bool oriented_only) {
  if (m < 1 || m > 4) throw Error(ErrorKind::BudgetTooLarge, "canonical digraphs limited to 1..4 vertices");
  std::set<std::uint64_t> codes;
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v) slots.emplace_back(u, v);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size()); ++pick) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (pick >> i & 1) code |= std::uint64_t{1} << (slots[i].first * m + slots[i].second);
    const Digraph d = from_code(m, code);
    if (oriented_only && !d.is_oriented()) continue;
    if (canonical_code(d) == code) codes.insert(code);
  }
  std::vector<Digraph> out;
  for (auto code : codes) {
    Digraph d = from_code(m, code);
    if (oriented_only) d.set_oriented_flag(true);
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

struct Host {
  Digraph d;
  int omega;
};

std::vector<Host> host_candidates(int max_size, int max_indegree, int max_tw, bool oriented_only) {
  std::vector<Host> out;
  for (int m = 1; m <= max_size; ++m)
    for (auto& d : canonical_digraphs(m, oriented_only)) {
      if (psk::max_indegree(d) > max_indegree) continue;
      const Graph u = underlying(d);
      if (exact_treewidth(u).width > max_tw) continue;
      out.push_back({d, clique_number(u)});
    }
  return out;
}

class InjectionSearch {
 public:
  InjectionSearch(const Graph& g, const Digraph& h1, const Digraph& h2)
      : g_(g), n_(g.vertex_count()), ix_{h1.vertex_count(), h2.vertex_count()} {
    const Graph prod = underlying(directed_product(h1, h2));
    padj_.assign(ix_.size(), 0);
    for (auto [u, v] : prod.edges()) {
      padj_[u] |= Mask{1} << v;
      padj_[v] |= Mask{1} << u;
    }
    image_.assign(n_, -1);
  }

  bool run(long long& nodes) { return place(0, 0, nodes); }
  const std::vector<int>& image() const { return image_; }
  const ProductIndex& index() const { return ix_; }

 private:
  bool place(int v, Mask used, long long& nodes) {
    if (v == n_) return true;
    Mask allowed = ix_.size() == 32 ? ~Mask{0} : (Mask{1} << ix_.size()) - 1;
    allowed &= ~used;
    for (Vertex u : g_.neighbors(v))
      if (u < v) allowed &= padj_[image_[u]];
    for (Mask m = allowed; m; m &= m - 1) {
      const int x = std::countr_zero(m);
      ++nodes;
      image_[v] = x;
      if (place(v + 1, used | (Mask{1} << x), nodes)) return true;
    }
    image_[v] = -1;
    return false;
  }

  const Graph& g_;
  int n_;
  ProductIndex ix_;
  std::vector<Mask> padj_;
  std::vector<int> image_;
};

}  // namespace

SearchCertificate exhaustive_embedding_search(const Graph& g, const SearchBudget& budget) {
  if (g.vertex_count() > 6) throw Error(ErrorKind::BudgetTooLarge, "guest limited to 6 vertices");
  if (budget.max_host_size > 4 || budget.max_host_size < 1)
    throw Error(ErrorKind::BudgetTooLarge, "host size must be within 1..4");
  SearchCertificate cert;
  cert.budget = budget;
  const int n = g.vertex_count();
  const int omega = clique_number(g);
  const auto hosts1 =
      host_candidates(budget.max_host_size, budget.max_indegree1, budget.max_tw1, budget.oriented_only);
  const auto hosts2 =
      host_candidates(budget.max_host_size, budget.max_indegree2, budget.max_tw2, budget.oriented_only);
  cert.hosts1 = static_cast<long long>(hosts1.size());
  cert.hosts2 = static_cast<long long>(hosts2.size());
  for (const auto& h1 : hosts1)
    for (const auto& h2 : hosts2) {
      if (h1.d.vertex_count() * h2.d.vertex_count() < n || omega > h1.omega * h2.omega) {
        ++cert.pairs_skipped;
        continue;
      }
      ++cert.pairs_examined;
      InjectionSearch search(g, h1.d, h2.d);
      if (search.run(cert.search_nodes)) {
        cert.embeddable = true;
        Embedding e{h1.d, h2.d, {}, std::nullopt, std::nullopt};
        for (int x : search.image()) e.map.push_back(search.index().coord(x));
        cert.embedding = std::move(e);
        return cert;
      }
    }
  return cert;
}

}  // namespace psk
