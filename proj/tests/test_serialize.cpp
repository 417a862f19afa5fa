#include <doctest.h>

#include <functional>

#include "psk/embedders.hpp"
#include "psk/error.hpp"
#include "psk/instances.hpp"
#include "psk/serialize.hpp"

using namespace psk;

namespace {

bool malformed(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::MalformedInput;
  }
  return false;
}

}  // namespace

TEST_CASE("graph and digraph formats") {
  const Graph g = gen_max_outerplanar(8, 3);
  const Json j = to_json(g);
  CHECK(j["n"] == 8);
  CHECK(j["edges"].size() == g.edge_count());
  CHECK(graph_from_json(j) == g);
  CHECK(graph_from_json(parse_json(j.dump())) == g);

  Digraph d(3, true);
  d.add_arc(0, 1);
  d.add_arc(2, 1);
  const Json dj = to_json(d);
  CHECK(dj.dump() == R"({"n":3,"arcs":[[0,1],[2,1]],"oriented":true})");
  CHECK(digraph_from_json(dj) == d);
  CHECK(document_kind(dj) == DocumentKind::Digraph);
  CHECK(document_kind(j) == DocumentKind::Graph);
}

TEST_CASE("decomposition and trace formats") {
  const auto t = gen_random_simple_ktree(2, 7, 1);
  const Json tj = to_json(t);
  CHECK(tj["k"] == 2);
  CHECK(tj["steps"][0].contains("v"));
  CHECK(tj["steps"][0].contains("clique"));
  CHECK(trace_from_json(tj) == t);
  CHECK(document_kind(tj) == DocumentKind::Trace);

  TreeDecomposition td = simple_ktree_to_decomposition(t);
  const Json dj = to_json(td);
  CHECK(dj["nodes"] == td.node_count);
  CHECK(dj["root"] == 0);
  CHECK(decomposition_from_json(dj) == td);
  td.root.reset();
  CHECK(to_json(td)["root"].is_null());
  CHECK(decomposition_from_json(to_json(td)) == td);
  CHECK(document_kind(dj) == DocumentKind::Decomposition);
}

TEST_CASE("embedding format") {
  const auto t = gen_random_simple_ktree(3, 12, 2);
  const Graph g = trace_graph(t);
  const Embedding e = embed_simple_treewidth(t);
  const Json j = to_json(e, &g);
  CHECK(j["map"][0].size() == 2);
  CHECK(j["map"][0][1].size() == 2);
  CHECK(document_kind(j) == DocumentKind::Embedding);
  const Embedding back = embedding_from_json(j);
  CHECK(back.map == e.map);
  CHECK(back.host1 == e.host1);
  CHECK(back.host2 == e.host2);
  CHECK(back.witness1 == e.witness1);
  CHECK(back.witness2 == e.witness2);
  CHECK(embedding_guest_from_json(j) == g);
  CHECK(to_json(back, &g).dump() == j.dump());
  CHECK_FALSE(embedding_guest_from_json(to_json(e)).has_value());
}

TEST_CASE("malformed documents") {
  CHECK(malformed([] { parse_json("{\"n\": 3,"); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"edges": []})")); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"n": 2, "edges": [[0, 2]]})")); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"n": 2, "edges": [[1, 1]]})")); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"n": -1, "edges": []})")); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"n": 2, "edges": [[0]]})")); }));
  CHECK(malformed([] { graph_from_json(parse_json(R"({"n": "2", "edges": []})")); }));
  CHECK(malformed([] { digraph_from_json(parse_json(R"({"n": 2, "arcs": [[0,1],[1,0]], "oriented": true})")); }));
  CHECK(malformed([] { decomposition_from_json(parse_json(R"({"nodes": 2, "tree_edges": [], "bags": [[0]]})")); }));
  CHECK(malformed([] { trace_from_json(parse_json(R"({"k": 1, "base": [0, 0], "steps": []})")); }));
  CHECK(malformed([] {
    embedding_from_json(parse_json(
        R"({"host1": {"n":1,"arcs":[]}, "host2": {"n":1,"arcs":[]}, "map": [[0,[0,0]],[0,[0,0]]]})"));
  }));
}

TEST_CASE("dot output") {
  const Graph g = Graph::path(3);
  const std::string dot = to_dot(g);
  CHECK(dot.find("graph G {") == 0);
  CHECK(dot.find("0 -- 1;") != std::string::npos);
  Digraph arc(2);
  arc.add_arc(0, 1);
  CHECK(to_dot(arc).find("0 -> 1;") != std::string::npos);
  const Embedding e{arc, arc, {{0, 0}, {1, 0}, {1, 1}}, {}, {}};
  const std::string prod = to_dot(e, Graph::complete(3));
  CHECK(prod.find("color=red") != std::string::npos);
  CHECK(prod.find("fillcolor=gold") != std::string::npos);
}
