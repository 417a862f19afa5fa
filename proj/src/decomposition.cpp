#include "psk/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "psk/error.hpp"

namespace psk {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

namespace {

std::string set_str(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj(td.node_count);
  for (auto [x, y] : td.tree_edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

// Empty string when td.tree_edges forms a tree on td.node_count nodes.
std::string tree_problem(const TreeDecomposition& td) {
  if (td.node_count < 0) return "negative node count";
  if (static_cast<int>(td.bags.size()) != td.node_count) return "bag count differs from node count";
  if (td.node_count == 0) return td.tree_edges.empty() ? "" : "edges without nodes";
  if (static_cast<int>(td.tree_edges.size()) != td.node_count - 1) return "tree must have node_count - 1 edges";
  for (auto [x, y] : td.tree_edges) {
    if (x < 0 || y < 0 || x >= td.node_count || y >= td.node_count) return "tree edge endpoint out of range";
    if (x == y) return "tree edge is a loop";
  }
  const auto adj = tree_adjacency(td);
  std::vector<char> seen(td.node_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != td.node_count) return "tree is disconnected";
  if (td.root && (*td.root < 0 || *td.root >= td.node_count)) return "root out of range";
  return "";
}

std::map<VertexSet, int> kset_counts(const std::vector<VertexSet>& bags, const std::vector<char>* alive, int k) {
  std::map<VertexSet, int> counts;
  for (std::size_t x = 0; x < bags.size(); ++x) {
    if (alive && !(*alive)[x]) continue;
    if (static_cast<int>(bags[x].size()) < k) continue;
    for_each_subset(bags[x], k, [&](const VertexSet& s) { ++counts[s]; });
  }
  return counts;
}

struct Bfs {
  std::vector<int> order;
  std::vector<int> parent;
  std::vector<int> depth;
};

Bfs bfs_tree(const std::vector<std::vector<int>>& adj, int root) {
  Bfs b;
  b.parent.assign(adj.size(), -1);
  b.depth.assign(adj.size(), -1);
  std::deque<int> queue{root};
  b.depth[root] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    b.order.push_back(x);
    for (int y : adj[x])
      if (b.depth[y] < 0) {
        b.depth[y] = b.depth[x] + 1;
        b.parent[y] = x;
        queue.push_back(y);
      }
  }
  return b;
}

}  // namespace

DecompositionReport verify_decomposition(const Graph& g, const TreeDecomposition& td, int k) {
  DecompositionReport r;
  r.width = td.width();
  const int n = g.vertex_count();

  std::string problem = tree_problem(td);
  std::vector<VertexSet> bags;
  if (problem.empty()) {
    bags.reserve(td.bags.size());
    for (const auto& b : td.bags) {
      VertexSet s = make_vertex_set(b);
      if (s.size() != b.size()) {
        problem = "bag " + set_str(b) + " repeats a vertex";
        break;
      }
      for (Vertex v : s)
        if (v < 0 || v >= n) problem = "bag vertex " + std::to_string(v) + " out of range";
      bags.push_back(std::move(s));
    }
  }
  if (problem.empty() && td.node_count == 0 && n > 0) problem = "no bags for a non-empty graph";
  std::vector<std::vector<int>> holders(n);
  if (problem.empty()) {
    for (int x = 0; x < td.node_count; ++x)
      for (Vertex v : bags[x]) holders[v].push_back(x);
    std::vector<int> inner_edges(n, 0);
    for (auto [x, y] : td.tree_edges)
      for (Vertex v : set_intersection(bags[x], bags[y])) ++inner_edges[v];
    for (Vertex v = 0; v < n && problem.empty(); ++v) {
      if (holders[v].empty())
        problem = "vertex " + std::to_string(v) + " is in no bag";
      else if (inner_edges[v] != static_cast<int>(holders[v].size()) - 1)
        problem = "bags containing vertex " + std::to_string(v) + " are not connected";
    }
    for (auto [u, v] : g.edges()) {
      if (!problem.empty()) break;
      if (set_intersection(holders[u], holders[v]).empty())
        problem = "edge " + std::to_string(u) + "-" + std::to_string(v) + " not covered";
    }
  }
  r.is_valid = problem.empty();
  r.valid_violation = problem;
  if (!r.is_valid) {
    r.normal_violation = r.simple_violation = r.smooth_violation = r.fine_violation = "decomposition invalid";
    return r;
  }

  r.is_normal = true;
  for (int x = 0; x < td.node_count && r.is_normal; ++x)
    for (int y = 0; y < td.node_count; ++y)
      if (x != y && is_subset(bags[x], bags[y])) {
        r.is_normal = false;
        r.normal_violation = "bag " + std::to_string(x) + " " + set_str(bags[x]) + " is inside bag " +
                             std::to_string(y) + " " + set_str(bags[y]);
        break;
      }

  if (r.width > k) {
    r.simple_violation = "width " + std::to_string(r.width) + " exceeds " + std::to_string(k);
  } else {
    r.is_k_simple = true;
    for (const auto& [s, c] : kset_counts(bags, nullptr, k))
      if (c > 2) {
        r.is_k_simple = false;
        r.simple_violation = "set " + set_str(s) + " lies in " + std::to_string(c) + " bags";
        break;
      }
  }

  r.is_k_smooth = true;
  for (int x = 0; x < td.node_count; ++x)
    if (static_cast<int>(bags[x].size()) != k + 1) {
      r.is_k_smooth = false;
      r.smooth_violation = "bag " + std::to_string(x) + " has size " + std::to_string(bags[x].size());
      break;
    }
  if (r.is_k_smooth)
    for (auto [x, y] : td.tree_edges)
      if (static_cast<int>(set_intersection(bags[x], bags[y]).size()) != k) {
        r.is_k_smooth = false;
        r.smooth_violation = "adjacent bags " + std::to_string(x) + " and " + std::to_string(y) +
                             " do not share exactly " + std::to_string(k) + " vertices";
        break;
      }

  if (!td.root)
    r.fine_violation = "decomposition is not rooted";
  else if (static_cast<int>(bags[*td.root].size()) != k + 1)
    r.fine_violation = "root bag has size " + std::to_string(bags[*td.root].size());
  else
    r.is_k_fine = true;
  return r;
}

std::vector<int> nodes_containing(const TreeDecomposition& td, const VertexSet& s) {
  const VertexSet key = make_vertex_set(s);
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(td.bags.size()); ++x)
    if (is_subset(key, make_vertex_set(td.bags[x]))) out.push_back(x);
  return out;
}

long long score(const TreeDecomposition& td) {
  if (!td.root) throw Error(ErrorKind::Unrooted, "score needs a rooted decomposition");
  const std::string problem = tree_problem(td);
  if (!problem.empty()) throw Error(ErrorKind::InvalidArgument, problem);
  const Bfs b = bfs_tree(tree_adjacency(td), *td.root);
  long long total = 0;
  for (int x = 0; x < td.node_count; ++x) total += static_cast<long long>(b.depth[x] + 1) * td.bags[x].size();
  return total;
}

// ---------------------------------------------------------------- traces

Graph validate_trace(const ConstructionTrace& trace, bool require_simple) {
  const int k = trace.k;
  if (k < 1) throw Error(ErrorKind::InvalidTrace, "k must be at least 1");
  const VertexSet base = make_vertex_set(trace.base);
  if (base.size() != trace.base.size() || static_cast<int>(base.size()) != k + 1)
    throw Error(ErrorKind::InvalidTrace, "base must be " + std::to_string(k + 1) + " distinct vertices");
  const int n = trace.vertex_count();
  std::vector<char> present(n, 0);
  Graph g(n);
  for (Vertex v : base) {
    if (v < 0 || v >= n) throw Error(ErrorKind::InvalidTrace, "base vertex " + std::to_string(v) + " out of range");
    present[v] = 1;
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) g.add_edge(base[i], base[j]);
  std::set<VertexSet> used;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    if (step.v < 0 || step.v >= n) throw Error(ErrorKind::InvalidTrace, where + "vertex out of range");
    if (present[step.v]) throw Error(ErrorKind::InvalidTrace, where + "vertex " + std::to_string(step.v) + " repeated");
    const VertexSet c = make_vertex_set(step.clique);
    if (c.size() != step.clique.size() || static_cast<int>(c.size()) != k)
      throw Error(ErrorKind::InvalidTrace, where + "attachment must be " + std::to_string(k) + " distinct vertices");
    for (Vertex u : c)
      if (u < 0 || u >= n || !present[u])
        throw Error(ErrorKind::InvalidTrace, where + "attachment vertex " + std::to_string(u) + " not yet present");
    if (!is_clique(g, c)) throw Error(ErrorKind::InvalidTrace, where + "attachment " + set_str(c) + " is not a clique");
    if (require_simple && !used.insert(c).second)
      throw Error(ErrorKind::InvalidTrace, where + "clique " + set_str(c) + " used twice");
    present[step.v] = 1;
    for (Vertex u : c) g.add_edge(u, step.v);
  }
  return g;
}

Graph trace_graph(const ConstructionTrace& trace) { return validate_trace(trace, false); }

namespace {

TreeDecomposition trace_decomposition_unchecked(const ConstructionTrace& trace) {
  TreeDecomposition td;
  const int k = trace.k;
  std::map<VertexSet, int> first_holder;
  auto add_bag = [&](VertexSet bag) {
    const int id = td.node_count++;
    for_each_subset(bag, k, [&](const VertexSet& s) { first_holder.emplace(s, id); });
    td.bags.push_back(std::move(bag));
    return id;
  };
  add_bag(make_vertex_set(trace.base));
  for (const auto& step : trace.steps) {
    const VertexSet c = make_vertex_set(step.clique);
    const int holder = first_holder.at(c);
    const int id = add_bag(with_vertex(c, step.v));
    td.tree_edges.emplace_back(holder, id);
  }
  td.root = 0;
  return td;
}

}  // namespace

TreeDecomposition ktree_trace_decomposition(const ConstructionTrace& trace) {
  validate_trace(trace, false);
  return trace_decomposition_unchecked(trace);
}

TreeDecomposition simple_ktree_to_decomposition(const ConstructionTrace& trace) {
  validate_trace(trace, true);
  return trace_decomposition_unchecked(trace);
}

std::optional<ConstructionTrace> recognize_ktree(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (k < 1 || n < k + 1) return std::nullopt;
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  std::set<Vertex> candidates;
  std::vector<char> rejected(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] == k) candidates.insert(v);
  }
  auto live_neighbors = [&](Vertex v) {
    VertexSet out;
    for (Vertex w : g.neighbors(v))
      if (alive[w]) out.push_back(w);
    return out;
  };
  std::vector<TraceStep> removed;
  int remaining = n;
  while (remaining > k + 1) {
    bool progressed = false;
    for (auto it = candidates.begin(); it != candidates.end(); ++it) {
      const Vertex v = *it;
      if (rejected[v]) continue;
      VertexSet nb = live_neighbors(v);
      if (!is_clique(g, nb)) {
        rejected[v] = 1;
        continue;
      }
      candidates.erase(it);
      alive[v] = 0;
      --remaining;
      for (Vertex w : nb) {
        if (degree[w] == k) candidates.erase(w);
        --degree[w];
        rejected[w] = 0;
        if (degree[w] == k) candidates.insert(w);
      }
      removed.push_back({v, std::move(nb)});
      progressed = true;
      break;
    }
    if (!progressed) return std::nullopt;
  }
  ConstructionTrace trace;
  trace.k = k;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) trace.base.push_back(v);
  if (!is_clique(g, trace.base)) return std::nullopt;
  trace.steps.assign(removed.rbegin(), removed.rend());
  return trace;
}

std::optional<ConstructionTrace> recognize_simple_ktree(const Graph& g, int k) {
  auto trace = recognize_ktree(g, k);
  if (!trace) return std::nullopt;
  try {
    const TreeDecomposition td = simple_ktree_to_decomposition(*trace);
    if (!verify_decomposition(g, td, k).is_k_simple) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return trace;
}

namespace {

// Walks a smooth rooted decomposition in BFS order and records the new vertex
// of each non-root node together with the k-set it shares with its parent.
ConstructionTrace trace_from_smooth(const std::vector<VertexSet>& bags, const std::vector<std::vector<int>>& adj,
                                    int root, int k) {
  const Bfs b = bfs_tree(adj, root);
  ConstructionTrace trace;
  trace.k = k;
  trace.base = bags[root];
  for (int x : b.order) {
    if (x == root) continue;
    const VertexSet fresh = set_difference(bags[x], bags[b.parent[x]]);
    if (fresh.size() != 1) throw Error(ErrorKind::InvariantBroken, "smooth decomposition expected");
    trace.steps.push_back({fresh[0], set_intersection(bags[x], bags[b.parent[x]])});
  }
  return trace;
}

Graph fill_bags(const Graph& g, const std::vector<VertexSet>& bags) {
  Graph out = g;
  for (const auto& bag : bags)
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j) out.add_edge(bag[i], bag[j]);
  return out;
}

// Mutable unrooted tree of bags with node deletion.
struct WorkTree {
  std::vector<VertexSet> bags;
  std::vector<std::vector<int>> adj;
  std::vector<char> alive;

  explicit WorkTree(const TreeDecomposition& td) {
    for (const auto& b : td.bags) bags.push_back(make_vertex_set(b));
    adj = tree_adjacency(td);
    alive.assign(td.node_count, 1);
  }

  int live_count() const { return static_cast<int>(std::count(alive.begin(), alive.end(), 1)); }

  void link(int x, int y) {
    adj[x].insert(std::lower_bound(adj[x].begin(), adj[x].end(), y), y);
    adj[y].insert(std::lower_bound(adj[y].begin(), adj[y].end(), x), x);
  }
  void unlink(int x, int y) {
    adj[x].erase(std::find(adj[x].begin(), adj[x].end(), y));
    adj[y].erase(std::find(adj[y].begin(), adj[y].end(), x));
  }
  // Removes x, handing its other neighbours to y.
  void merge_into(int x, int y) {
    const std::vector<int> others = adj[x];
    for (int z : others) unlink(x, z);
    for (int z : others)
      if (z != y) link(z, y);
    alive[x] = 0;
  }
  int add_node(VertexSet bag) {
    bags.push_back(std::move(bag));
    adj.emplace_back();
    alive.push_back(1);
    return static_cast<int>(bags.size()) - 1;
  }

  // First edge (in node order) with one bag inside the other; merges it.
  // Returns the surviving node or -1.
  std::pair<int, int> contract_once() {
    for (int x = 0; x < static_cast<int>(bags.size()); ++x) {
      if (!alive[x]) continue;
      for (int y : adj[x]) {
        if (is_subset(bags[x], bags[y])) {
          merge_into(x, y);
          return {x, y};
        }
        if (is_subset(bags[y], bags[x])) {
          merge_into(y, x);
          return {y, x};
        }
      }
    }
    return {-1, -1};
  }

  TreeDecomposition export_bfs(int root) const {
    const Bfs b = bfs_tree(adj, root);
    std::vector<int> id(bags.size(), -1);
    for (int i = 0; i < static_cast<int>(b.order.size()); ++i) id[b.order[i]] = i;
    TreeDecomposition td;
    td.node_count = static_cast<int>(b.order.size());
    for (int x : b.order) {
      td.bags.push_back(bags[x]);
      if (b.parent[x] >= 0) td.tree_edges.emplace_back(id[b.parent[x]], id[x]);
    }
    td.root = 0;
    return td;
  }
};

}  // namespace

Completion ktree_completion(const Graph& g, const TreeDecomposition& td, int k) {
  const int n = g.vertex_count();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (n < k + 1) throw Error(ErrorKind::TooSmall, "a k-tree needs at least k+1 vertices");
  const auto report = verify_decomposition(g, td, k);
  if (!report.is_valid) throw Error(ErrorKind::PreconditionViolated, report.valid_violation);
  if (report.width > k) throw Error(ErrorKind::WidthExceeded, "decomposition width " + std::to_string(report.width));

  WorkTree w(td);
  int root = -1;
  while (true) {
    while (w.contract_once().first >= 0) {
    }
    root = -1;
    for (int x = 0; x < static_cast<int>(w.bags.size()); ++x)
      if (w.alive[x] && (root < 0 || w.bags[x].size() > w.bags[root].size())) root = x;
    if (static_cast<int>(w.bags[root].size()) == k + 1) break;
    // A normal decomposition of at least k+1 vertices has a neighbour bag
    // contributing something new.
    const int y = w.adj[root].front();
    w.bags[root] = with_vertex(w.bags[root], set_difference(w.bags[y], w.bags[root]).front());
  }

  const Bfs order = bfs_tree(w.adj, root);
  for (int x : order.order) {
    if (x == root) continue;
    const VertexSet& parent_bag = w.bags[order.parent[x]];
    while (static_cast<int>(w.bags[x].size()) < k + 1)
      w.bags[x] = with_vertex(w.bags[x], set_difference(parent_bag, w.bags[x]).front());
  }

  // Rebuild with chains between bags that differ in more than one vertex.
  std::vector<VertexSet> bags{w.bags[root]};
  std::vector<std::vector<int>> adj(1);
  std::vector<int> image(w.bags.size(), -1);
  image[root] = 0;
  for (int x : order.order) {
    if (x == root) continue;
    int prev = image[order.parent[x]];
    VertexSet cur = bags[prev];
    const VertexSet& target = w.bags[x];
    while (cur != target) {
      cur = with_vertex(without_vertex(cur, set_difference(cur, target).front()),
                        set_difference(target, cur).front());
      bags.push_back(cur);
      adj.emplace_back();
      const int id = static_cast<int>(bags.size()) - 1;
      adj[prev].push_back(id);
      adj[id].push_back(prev);
      prev = id;
    }
    image[x] = prev;
  }
  Completion out{fill_bags(g, bags), trace_from_smooth(bags, adj, 0, k)};
  return out;
}

Completion decomposition_to_simple_ktree(const Graph& g, const TreeDecomposition& td, int k) {
  const auto r = verify_decomposition(g, td, k);
  if (!r.is_valid) throw Error(ErrorKind::PreconditionViolated, r.valid_violation);
  if (!r.is_normal) throw Error(ErrorKind::PreconditionViolated, r.normal_violation);
  if (!r.is_k_simple) throw Error(ErrorKind::PreconditionViolated, r.simple_violation);
  if (!r.is_k_smooth) throw Error(ErrorKind::PreconditionViolated, r.smooth_violation);
  std::vector<VertexSet> bags;
  for (const auto& b : td.bags) bags.push_back(make_vertex_set(b));
  return {fill_bags(g, bags), trace_from_smooth(bags, tree_adjacency(td), td.root.value_or(0), k)};
}

std::vector<int> rainbow_color_ktree(const ConstructionTrace& trace) {
  validate_trace(trace, false);
  std::vector<int> color(trace.vertex_count(), -1);
  const VertexSet base = make_vertex_set(trace.base);
  for (int i = 0; i < static_cast<int>(base.size()); ++i) color[base[i]] = i;
  for (const auto& step : trace.steps) {
    std::vector<char> taken(trace.k + 1, 0);
    for (Vertex u : step.clique) taken[color[u]] = 1;
    const auto free = std::find(taken.begin(), taken.end(), 0);
    if (free == taken.end() || std::count(taken.begin(), taken.end(), 0) != 1)
      throw Error(ErrorKind::InvalidTrace, "attachment clique is not rainbow");
    color[step.v] = static_cast<int>(free - taken.begin());
  }
  return color;
}

// ---------------------------------------------------------------- normalize

const char* to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::Contraction: return "contraction";
    case MoveKind::RebalanceRehang: return "rebalance-rehang";
    case MoveKind::DeepenRehang: return "deepen-rehang";
    case MoveKind::BagFill: return "bag-fill";
    case MoveKind::Subdivision: return "subdivision";
    case MoveKind::GrowMaxBag: return "grow-max-bag";
  }
  return "unknown";
}

namespace {

struct RootedView {
  Bfs bfs;
  std::vector<std::vector<int>> children;
  std::vector<long long> weight;  // sum of bag sizes in the subtree
  long long score = 0;
};

RootedView view_of(const WorkTree& w, int root) {
  RootedView v;
  v.bfs = bfs_tree(w.adj, root);
  v.children.assign(w.bags.size(), {});
  v.weight.assign(w.bags.size(), 0);
  for (int x : v.bfs.order) {
    if (v.bfs.parent[x] >= 0) v.children[v.bfs.parent[x]].push_back(x);
    v.score += static_cast<long long>(v.bfs.depth[x] + 1) * w.bags[x].size();
  }
  for (auto& c : v.children) std::sort(c.begin(), c.end());
  for (auto it = v.bfs.order.rbegin(); it != v.bfs.order.rend(); ++it) {
    v.weight[*it] += static_cast<long long>(w.bags[*it].size());
    if (v.bfs.parent[*it] >= 0) v.weight[v.bfs.parent[*it]] += v.weight[*it];
  }
  return v;
}

bool incomparable(const VertexSet& a, const VertexSet& b) { return !is_subset(a, b) && !is_subset(b, a); }

// Every k-subset of bag that contains `fresh` (or every k-subset when fresh < 0)
// is currently in at most one bag.
bool room_for(const std::map<VertexSet, int>& counts, const VertexSet& bag, int k, Vertex fresh) {
  if (static_cast<int>(bag.size()) < k) return true;
  bool ok = true;
  for_each_subset(bag, k, [&](const VertexSet& s) {
    if (!ok || (fresh >= 0 && !contains(s, fresh))) return;
    auto it = counts.find(s);
    if (it != counts.end() && it->second >= 2) ok = false;
  });
  return ok;
}

}  // namespace

TreeDecomposition normalize_to_smooth_simple(const Graph& g, const TreeDecomposition& td, int k,
                                             std::vector<MoveRecord>* log) {
  const int n = g.vertex_count();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (n <= k) throw Error(ErrorKind::TooSmall, "normalization needs more than k vertices");
  const auto report = verify_decomposition(g, td, k);
  if (!report.is_valid) throw Error(ErrorKind::PreconditionViolated, report.valid_violation);
  if (!report.is_k_simple) throw Error(ErrorKind::NotSimple, report.simple_violation);

  WorkTree w(td);
  auto record = [&](MoveKind kind, int bags_before, long long s_before, long long s_after, bool rooted) {
    if (log) log->push_back({kind, bags_before, w.live_count(), s_before, s_after, rooted});
  };

  // (a) + (b): normal, with a bag of size k+1.
  while (true) {
    int before = w.live_count();
    while (w.contract_once().first >= 0) {
      record(MoveKind::Contraction, before, 0, 0, false);
      before = w.live_count();
    }
    int x = -1;
    for (int z = 0; z < static_cast<int>(w.bags.size()); ++z)
      if (w.alive[z] && (x < 0 || w.bags[z].size() > w.bags[x].size())) x = z;
    if (static_cast<int>(w.bags[x].size()) >= k + 1) break;
    if (w.adj[x].empty()) throw Error(ErrorKind::NormalizationStuck, "single bag smaller than k+1");
    const int y = w.adj[x].front();
    const VertexSet extra = set_difference(w.bags[y], w.bags[x]);
    if (extra.empty()) throw Error(ErrorKind::NormalizationStuck, "neighbour bag adds nothing");
    w.bags[x] = with_vertex(w.bags[x], extra.front());
    record(MoveKind::GrowMaxBag, before, 0, 0, false);
  }

  // (c)
  int root = -1;
  for (int z = 0; z < static_cast<int>(w.bags.size()) && root < 0; ++z)
    if (w.alive[z] && static_cast<int>(w.bags[z].size()) == k + 1) root = z;

  // (d)
  const long long cap = 8LL * (k + 1) * n * (n + 1) + 1000;
  long long iterations = 0;
  while (true) {
    if (++iterations > cap) throw Error(ErrorKind::NormalizationStuck, "iteration cap reached");
    const RootedView v = view_of(w, root);
    const int before = w.live_count();
    auto after_score = [&]() { return view_of(w, root).score; };

    // contraction
    {
      auto [gone, kept] = w.contract_once();
      if (gone >= 0) {
        if (gone == root) root = kept;
        record(MoveKind::Contraction, before, v.score, after_score(), true);
        continue;
      }
    }

    bool moved = false;
    // rebalance-rehang: x (child of y) hands its place to its child z2
    for (int x : v.bfs.order) {
      const int y = v.bfs.parent[x];
      if (y < 0) continue;
      const VertexSet shared = set_intersection(w.bags[x], w.bags[y]);
      for (int z2 : v.children[x])
        if (is_subset(shared, w.bags[z2]) && v.weight[x] - 2 * v.weight[z2] > 0) {
          w.unlink(x, y);
          w.link(y, z2);
          moved = true;
          break;
        }
      if (moved) break;
    }
    if (moved) {
      record(MoveKind::RebalanceRehang, before, v.score, after_score(), true);
      continue;
    }

    // deepen-rehang: x moves below a sibling z
    for (int x : v.bfs.order) {
      const int y = v.bfs.parent[x];
      if (y < 0) continue;
      const VertexSet shared = set_intersection(w.bags[x], w.bags[y]);
      for (int z : v.children[y])
        if (z != x && is_subset(shared, w.bags[z])) {
          w.unlink(x, y);
          w.link(x, z);
          moved = true;
          break;
        }
      if (moved) break;
    }
    if (moved) {
      record(MoveKind::DeepenRehang, before, v.score, after_score(), true);
      continue;
    }

    const auto counts = kset_counts(w.bags, &w.alive, k);

    // bag-fill
    for (int x : v.bfs.order) {
      const int y = v.bfs.parent[x];
      if (y < 0 || static_cast<int>(w.bags[x].size()) > k) continue;
      for (Vertex add : set_difference(w.bags[y], w.bags[x])) {
        const VertexSet grown = with_vertex(w.bags[x], add);
        bool normal = true;
        for (int z : w.adj[x]) normal = normal && incomparable(grown, w.bags[z]);
        if (!normal || !room_for(counts, grown, k, add)) continue;
        w.bags[x] = grown;
        moved = true;
        break;
      }
      if (moved) break;
    }
    if (moved) {
      record(MoveKind::BagFill, before, v.score, after_score(), true);
      continue;
    }

    // subdivision of the edge between x and its parent y
    for (int x : v.bfs.order) {
      const int y = v.bfs.parent[x];
      if (y < 0) continue;
      const VertexSet shared = set_intersection(w.bags[x], w.bags[y]);
      const VertexSet only_x = set_difference(w.bags[x], w.bags[y]);
      const VertexSet only_y = set_difference(w.bags[y], w.bags[x]);
      if (only_x.size() < 2 || only_y.size() < 2 || static_cast<int>(shared.size()) + 2 > k + 1) continue;
      for (Vertex u : only_x) {
        for (Vertex t : only_y) {
          const VertexSet mid = with_vertex(with_vertex(shared, u), t);
          if (!room_for(counts, mid, k, -1)) continue;
          const int z = w.add_node(mid);
          w.unlink(x, y);
          w.link(x, z);
          w.link(z, y);
          moved = true;
          break;
        }
        if (moved) break;
      }
      if (moved) break;
    }
    if (moved) {
      record(MoveKind::Subdivision, before, v.score, after_score(), true);
      continue;
    }
    break;
  }

  TreeDecomposition out = w.export_bfs(root);
  const auto check = verify_decomposition(g, out, k);
  if (!check.is_valid || !check.is_normal || !check.is_k_simple || !check.is_k_smooth || !check.is_k_fine)
    throw Error(ErrorKind::NormalizationStuck,
                "fixed point fails verification: " + check.valid_violation + check.normal_violation +
                    check.simple_violation + check.smooth_violation);
  return out;
}

}  // namespace psk
