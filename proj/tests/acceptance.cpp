// One line per acceptance criterion; exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "psk/cli.hpp"
#include "psk/decomposition.hpp"
#include "psk/embedders.hpp"
#include "psk/error.hpp"
#include "psk/instances.hpp"
#include "psk/oracle.hpp"
#include "psk/planarity.hpp"
#include "psk/products.hpp"
#include "support/brute.hpp"
#include "support/random.hpp"

using namespace psk;

namespace {

constexpr double kOuterplanarSecondsPerInstance = 1.0;
constexpr double kSimpleTreewidthSecondsPerInstance = 5.0;
constexpr int kInvariantCheckMaxVertices = 60;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool is_tree(const Graph& g) {
  return g.is_connected() && static_cast<int>(g.edge_count()) == g.vertex_count() - 1;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << x;
  return s.str();
}

// ---------------------------------------------------------------- 1

Outcome outerplanar_theorem() {
  int passed = 0;
  double worst = 0;
  std::string first_failure;
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i * 197 / 99;
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      const Graph g = gen_max_outerplanar(n, seed);
      const Embedding e = embed_outerplanar(g);
      const auto r = verify_embedding(g, e);
      ok = r.ok() && is_tree(underlying(e.host1)) && is_tree(underlying(e.host2)) &&
           std::max(r.indegree1, r.indegree2) == 1;
    } catch (const Error& ex) {
      if (first_failure.empty()) first_failure = ex.what();
    }
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (ok && t < kOuterplanarSecondsPerInstance) ++passed;
    else if (first_failure.empty()) first_failure = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  }
  Outcome o{passed == 100, std::to_string(passed) + "/100 instances, slowest " + fmt(worst) + " s (limit " +
                               fmt(kOuterplanarSecondsPerInstance) + " s)"};
  if (!o.pass) o.detail += "; first failure " + first_failure;
  return o;
}

// ---------------------------------------------------------------- 2 and 7

struct StwRun {
  ConstructionTrace trace;
  Graph graph;
  Embedding embedding;
};

std::vector<StwRun> stw_runs;

Outcome simple_treewidth_theorem() {
  int passed = 0, total = 0, invariant_checked = 0;
  double worst = 0;
  std::string first_failure;
  for (int k = 2; k <= 5; ++k)
    for (int i = 0; i < 25; ++i) {
      ++total;
      const int n = k + 1 + i * (199 - k) / 24;
      const std::uint64_t seed = 100 * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i);
      const auto start = std::chrono::steady_clock::now();
      bool ok = false;
      try {
        const auto t = gen_random_simple_ktree(k, n, seed);
        const Graph g = trace_graph(t);
        EmbedOptions opts;
        opts.check_invariants = n <= kInvariantCheckMaxVertices;
        const Embedding e = embed_simple_treewidth(t, opts);
        const auto r = verify_embedding(g, e);
        ok = r.ok() && r.indegree1 <= k - 1 && r.indegree2 <= k - 1 && r.witness1.present && r.witness2.present &&
             r.witness1.width <= k - 1 && r.witness2.width <= k - 1;
        if (ok && n <= kInvariantCheckMaxVertices) {
          // Hosts only gain arcs at new vertices, so the final map covers every prefix.
          for (const auto& c : cliques_of_size(g, k)) {
            VertexSet p1, p2;
            for (Vertex v : c) {
              p1.push_back(e.map[v].a);
              p2.push_back(e.map[v].b);
            }
            p1 = make_vertex_set(p1);
            p2 = make_vertex_set(p2);
            ok = ok && is_transitive_tournament(e.host1, p1) && is_transitive_tournament(e.host2, p2);
          }
          ++invariant_checked;
        }
        stw_runs.push_back({t, g, e});
      } catch (const Error& ex) {
        if (first_failure.empty()) first_failure = ex.what();
      }
      const double secs = seconds_since(start);
      worst = std::max(worst, secs);
      if (ok && secs < kSimpleTreewidthSecondsPerInstance) ++passed;
      else if (first_failure.empty()) first_failure = "k=" + std::to_string(k) + " n=" + std::to_string(n);
    }
  Outcome o{passed == total, std::to_string(passed) + "/" + std::to_string(total) + " instances, " +
                                 std::to_string(invariant_checked) + " with per-step invariants, slowest " +
                                 fmt(worst) + " s (limit " + fmt(kSimpleTreewidthSecondsPerInstance) + " s)"};
  if (!o.pass) o.detail += "; first failure " + first_failure;
  return o;
}

// Checks the attachment lemma on one embedding; returns (qualifying cliques, counterexamples).
std::pair<long long, long long> bad_vertex_check(const Graph& g, const Embedding& e, int k, int s, int t) {
  const long long f = bad_vertex_threshold(s, t, k);
  long long qualifying = 0, counter = 0;
  for (const auto& c : cliques_of_size(g, k)) {
    if (static_cast<long long>(attached_vertices(g, c).size()) < f) continue;
    ++qualifying;
    if (!clique_diagnostics(g, e, c).has_bad_vertex()) ++counter;
  }
  return {qualifying, counter};
}

Outcome bad_vertex_property() {
  long long qualifying = 0, counter = 0, cliques = 0;
  for (const auto& run : stw_runs) {
    const int k = run.trace.k;
    cliques += static_cast<long long>(cliques_of_size(run.graph, k).size());
    auto [q, c] = bad_vertex_check(run.graph, run.embedding, k, k - 1, k - 1);
    qualifying += q;
    counter += c;
  }
  // The simple k-tree embeddings never reach the threshold (a k-clique there has at
  // most two attached vertices), so the lemma is also run on product graphs of
  // random hosts with bounded indegree, where attachment counts are large.
  long long extra_qualifying = 0, extra_counter = 0;
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const int s = 1 + static_cast<int>(seed % 2), t = 1 + static_cast<int>((seed / 2) % 2);
    const int k = 1 + static_cast<int>((seed / 4) % 2);
    Embedding e{support::random_digraph(7, s, seed % 3 != 0, seed * 11),
                support::random_digraph(7, t, seed % 3 != 1, seed * 13), {}, {}, {}};
    // An out-star from vertex 0 pushes attachment counts past the threshold.
    for (int v = 1; v < 7; ++v) {
      if (e.host1.indegree(v) < s && !e.host1.has_arc(v, 0)) e.host1.add_arc(0, v);
      if (e.host2.indegree(v) < t && !e.host2.has_arc(v, 0)) e.host2.add_arc(0, v);
    }
    const ProductIndex ix{7, 7};
    const Graph g = underlying(directed_product(e.host1, e.host2));
    for (int x = 0; x < ix.size(); ++x) e.map.push_back(ix.coord(x));
    if (!verify_embedding(g, e).ok()) return {false, "product embedding failed to verify"};
    auto [q, c] = bad_vertex_check(g, e, k, max_indegree(e.host1), max_indegree(e.host2));
    extra_qualifying += q;
    extra_counter += c;
  }
  Outcome o;
  o.pass = counter == 0 && extra_counter == 0 && extra_qualifying > 0;
  o.detail = std::to_string(counter) + " counterexamples among " + std::to_string(qualifying) +
             " qualifying of " + std::to_string(cliques) + " k-cliques on the simple-treewidth embeddings; " +
             std::to_string(extra_counter) + " counterexamples among " + std::to_string(extra_qualifying) +
             " qualifying cliques on random bounded-indegree products";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome indegree_arithmetic() {
  std::vector<Digraph> hosts;
  for (int m = 1; m <= 4; ++m)
    for (auto& d : canonical_digraphs(m, false))
      if (max_indegree(d) <= 2) hosts.push_back(d);
  long long pairs = 0, violations = 0, tight = 0;
  for (const auto& a : hosts)
    for (const auto& b : hosts) {
      ++pairs;
      const int s = max_indegree(a), t = max_indegree(b);
      const Digraph p = directed_product(a, b);
      std::vector<int> in(p.vertex_count(), 0);
      for (auto [u, v] : p.arcs()) ++in[v];
      const int got = *std::max_element(in.begin(), in.end());
      if (got > s * t + s + t) ++violations;
      if (got == s * t + s + t) ++tight;
    }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(pairs) + " pairs of " +
                               std::to_string(hosts.size()) + " canonical hosts; bound attained by " +
                               std::to_string(tight) + " pairs"};
}

// ---------------------------------------------------------------- 4

Outcome appendix_b() {
  int graphs = 0, stw2 = 0, normalized = 0, mismatches = 0, failures = 0;
  std::string first_failure;
  auto fail = [&](const std::string& why) {
    ++failures;
    if (first_failure.empty()) first_failure = why;
  };
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : support::graphs_up_to_iso(n, true)) {
      ++graphs;
      const auto stw = exact_simple_treewidth(g);
      const bool small = stw.width <= 2;
      if (small != is_outerplanar(g)) ++mismatches;
      if (!small || n < 3) continue;
      ++stw2;
      // Inputs: the oracle's trace decomposition with a singleton leaf hung off every
      // node, and the treewidth witness when that happens to be 2-simple.
      std::vector<TreeDecomposition> inputs;
      if (stw.trace) {
        TreeDecomposition td = simple_ktree_to_decomposition(*stw.trace);
        td.root.reset();
        const int base = td.node_count;
        for (int x = 0; x < base; ++x) {
          td.bags.push_back({td.bags[x].front()});
          td.tree_edges.emplace_back(x, td.node_count++);
        }
        inputs.push_back(td);
      }
      const auto tw = exact_treewidth(g);
      const auto twr = verify_decomposition(g, tw.witness, 2);
      if (twr.is_valid && twr.width <= 2 && twr.is_k_simple) inputs.push_back(tw.witness);
      for (const auto& td : inputs) {
        try {
          const TreeDecomposition out = normalize_to_smooth_simple(g, td, 2);
          const auto r = verify_decomposition(g, out, 2);
          if (!(r.is_valid && r.is_normal && r.is_k_simple && r.is_k_smooth)) {
            fail("output flags on n=" + std::to_string(n));
            continue;
          }
          const Completion c = decomposition_to_simple_ktree(g, out, 2);
          const Graph h = validate_trace(c.trace, true);
          bool contains_g = h.vertex_count() == g.vertex_count();
          for (auto [u, v] : g.edges()) contains_g = contains_g && h.has_edge(u, v);
          const auto back = verify_decomposition(h, simple_ktree_to_decomposition(c.trace), 2);
          if (!contains_g || !back.is_k_simple || !verify_decomposition(g, simple_ktree_to_decomposition(c.trace), 2).is_k_simple) {
            fail("round trip on n=" + std::to_string(n));
            continue;
          }
          ++normalized;
        } catch (const Error& ex) {
          fail(ex.what());
        }
      }
    }
  Outcome o{failures == 0 && mismatches == 0,
            std::to_string(graphs) + " connected graphs, " + std::to_string(stw2) + " with stw <= 2 and n >= 3, " +
                std::to_string(normalized) + " normalizations verified, " + std::to_string(failures) +
                " failures, " + std::to_string(mismatches) + " outerplanarity mismatches"};
  if (failures) o.detail += "; first failure " + first_failure;
  return o;
}

// ---------------------------------------------------------------- 5

Outcome extremal_gadget() {
  std::string detail;
  bool pass = true;
  for (int k = 1; k <= 2; ++k) {
    const Graph g = gen_kbar3(k);
    const int tw = exact_treewidth(g).width, brute = support::brute_treewidth(g);
    const int stw = exact_simple_treewidth(g).width;
    pass = pass && tw == k && brute == k && stw == k + 1;
    detail += (k > 1 ? "; " : "") + std::string("k=") + std::to_string(k) + ": tw " + std::to_string(tw) + " stw " +
              std::to_string(stw);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 6

Outcome appendix_a() {
  int runs = 0, passed = 0;
  std::string first_failure;
  for (int k = 2; k <= 4; ++k)
    for (int n : {k + 1, 15, 30, 45, 60}) {
      const auto t = gen_random_ktree(k, n, 500 + static_cast<std::uint64_t>(k * 100 + n));
      const Graph g = trace_graph(t);
      for (int p = 1; p <= k + 1; ++p)
        for (int q = 1; q <= k + 1; ++q) {
          if (p + q < k + 1) continue;
          ++runs;
          try {
            const Embedding e = embed_unbounded_indegree(t, p, q);
            const auto r = verify_embedding(g, e);
            if (r.ok() && r.witness1.present && r.witness2.present && r.witness1.width <= p &&
                r.witness2.width <= q && embeds_in_strong_product(g, e))
              ++passed;
            else if (first_failure.empty())
              first_failure = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " p=" + std::to_string(p) +
                              " q=" + std::to_string(q);
          } catch (const Error& ex) {
            if (first_failure.empty()) first_failure = ex.what();
          }
        }
    }
  Outcome o{passed == runs, std::to_string(passed) + "/" + std::to_string(runs) + " (k, n, p, q) runs verified"};
  if (!o.pass) o.detail += "; first failure " + first_failure;
  return o;
}

// ---------------------------------------------------------------- 8

Outcome oracle_consistency() {
  // The last two budgets admit every host on at most three vertices.
  const std::vector<SearchBudget> budgets{
      {3, 1, 1, 1, 1, false}, {3, 1, 1, 1, 1, true}, {3, 2, 1, 2, 1, true}, {3, 2, 2, 1, 1, false},
      {2, 1, 1, 1, 1, false}, {3, 0, 2, 0, 2, false}, {3, 2, 2, 2, 2, false}, {3, 2, 2, 2, 2, true}};
  long long checks = 0, disagreements = 0, bad_certificates = 0, yes = 0;
  for (const auto& b : budgets) {
    const support::NaiveEmbeddingSearch naive(b);
    for (int n = 1; n <= 5; ++n)
      for (const auto& g : support::graphs_up_to_iso(n, false)) {
        ++checks;
        const auto cert = exhaustive_embedding_search(g, b);
        if (cert.embeddable != naive.embeddable(g)) ++disagreements;
        if (cert.embeddable) {
          ++yes;
          if (!cert.embedding || !verify_embedding(g, *cert.embedding).ok()) ++bad_certificates;
        }
      }
  }
  const SearchBudget k4{2, 1, 1, 1, 1, false};
  SearchBudget k4_oriented = k4;
  k4_oriented.oriented_only = true;
  const bool unoriented = exhaustive_embedding_search(Graph::complete(4), k4).embeddable;
  const bool oriented = exhaustive_embedding_search(Graph::complete(4), k4_oriented).embeddable;
  const bool pair_ok = unoriented && !oriented;
  return {disagreements == 0 && bad_certificates == 0 && pair_ok,
          std::to_string(disagreements) + " disagreements over " + std::to_string(checks) + " (graph, budget) checks (" +
              std::to_string(yes) + " embeddable), " + std::to_string(bad_certificates) +
              " bad certificates; K4 unoriented " + (unoriented ? "EMBEDDABLE" : "NON_EMBEDDABLE") + ", oriented " +
              (oriented ? "EMBEDDABLE" : "NON_EMBEDDABLE")};
}

// ---------------------------------------------------------------- 9

std::string cli_output(const std::vector<std::string>& args, const std::string& input, int& code) {
  std::istringstream in(input);
  std::ostringstream out, err;
  code = std::max(code, cli::run(args, in, out, err));
  return out.str();
}

std::string corpus(int jobs) {
  const std::string j = std::to_string(jobs);
  int code = 0;
  std::string all;
  const auto traces = cli_output(
      {"generate", "--family", "simple-ktree", "--k", "3", "--n", "60", "--seed", "7", "--count", "16", "--jobs", j},
      "", code);
  all += traces + cli_output({"embed", "--method", "simple-stw", "--jobs", j}, traces, code);
  const auto outer = cli_output(
      {"generate", "--family", "max-outerplanar", "--n", "80", "--seed", "3", "--count", "16", "--jobs", j}, "", code);
  all += outer + cli_output({"embed", "--method", "outerplanar", "--jobs", j}, outer, code);
  const auto ktrees = cli_output(
      {"generate", "--family", "ktree", "--k", "4", "--n", "40", "--seed", "9", "--count", "8", "--jobs", j}, "", code);
  all += cli_output({"embed", "--method", "unbounded", "--p", "2", "--q", "3", "--jobs", j}, ktrees, code);
  const auto small = cli_output(
      {"generate", "--family", "max-outerplanar", "--n", "6", "--seed", "1", "--count", "8", "--jobs", j}, "", code);
  all += cli_output({"oracle", "tw", "--witness", "--jobs", j}, small, code);
  all += cli_output({"oracle", "stw", "--witness", "--jobs", j}, small, code);
  const auto tiny = cli_output(
      {"generate", "--family", "simple-ktree", "--k", "2", "--n", "5", "--seed", "1", "--count", "4", "--jobs", j}, "",
      code);
  all += cli_output({"oracle", "search", "--max-host-size", "3", "--jobs", j}, tiny, code);
  if (code != 0) all += "\nexit " + std::to_string(code);
  return all;
}

Outcome determinism() {
  const std::string one = corpus(1), four = corpus(4), again = corpus(4);
  const bool ok = one == four && four == again && one.find("\nexit ") == std::string::npos;
  return {ok, std::to_string(one.size()) + " bytes of JSON; jobs=1 vs jobs=4 " +
                  (one == four ? "identical" : "DIFFERENT") + ", repeat run " + (four == again ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "outerplanar embeddings", outerplanar_theorem},
      {2, "simple treewidth embeddings", simple_treewidth_theorem},
      {3, "product indegree bound", indegree_arithmetic},
      {4, "normalization to smooth simple decompositions", appendix_b},
      {5, "K-bar(k,3) treewidth and simple treewidth", extremal_gadget},
      {6, "unbounded indegree embeddings", appendix_a},
      {7, "bad vertex lemma", bad_vertex_property},
      {8, "oracle consistency", oracle_consistency},
      {9, "determinism across worker counts", determinism},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << e.id << "] " << e.name << ": " << o.detail << " ("
              << fmt(seconds_since(start)) << " s)" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
