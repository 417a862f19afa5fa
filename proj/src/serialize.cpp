#include "psk/serialize.hpp"

#include <sstream>

#include "psk/error.hpp"

namespace psk {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

Json pair_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (auto [u, v] : edges) out.push_back({u, v});
  return out;
}

Json set_json(const VertexSet& s) {
  Json out = Json::array();
  for (Vertex v : s) out.push_back(v);
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  const auto value = j.get<long long>();
  if (value < INT32_MIN || value > INT32_MAX) malformed(std::string(what) + " out of range");
  return static_cast<int>(value);
}

int as_count(const Json& j, const char* what) {
  const int value = as_int(j, what);
  if (value < 0) malformed(std::string(what) + " must be non-negative");
  return value;
}

Vertex as_vertex(const Json& j, int n, const char* what) {
  const int v = as_int(j, what);
  if (v < 0 || v >= n) malformed(std::string(what) + " " + std::to_string(v) + " out of range");
  return v;
}

std::vector<Edge> read_pairs(const Json& j, int n, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<Edge> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) malformed(std::string(what) + " entries must be pairs");
    out.emplace_back(as_vertex(p[0], n, what), as_vertex(p[1], n, what));
  }
  return out;
}

VertexSet read_set(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  VertexSet out;
  for (const auto& v : j) {
    const int x = as_int(v, what);
    if (x < 0) malformed(std::string(what) + " holds a negative vertex");
    out.push_back(x);
  }
  VertexSet sorted = make_vertex_set(out);
  if (sorted.size() != out.size()) malformed(std::string(what) + " repeats a vertex");
  return sorted;
}

}  // namespace

Json to_json(const Graph& g) { return Json{{"n", g.vertex_count()}, {"edges", pair_list(g.edges())}}; }

Json to_json(const Digraph& d) {
  return Json{{"n", d.vertex_count()}, {"arcs", pair_list(d.arcs())}, {"oriented", d.oriented_flag()}};
}

Json to_json(const TreeDecomposition& td) {
  Json bags = Json::array();
  for (const auto& b : td.bags) bags.push_back(set_json(b));
  Json out{{"nodes", td.node_count}, {"tree_edges", pair_list(td.tree_edges)}, {"bags", bags}};
  out["root"] = td.root ? Json(*td.root) : Json(nullptr);
  return out;
}

Json to_json(const ConstructionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(Json{{"v", s.v}, {"clique", set_json(s.clique)}});
  return Json{{"k", t.k}, {"base", set_json(t.base)}, {"steps", steps}};
}

Json to_json(const Embedding& e, const Graph* guest) {
  Json map = Json::array();
  for (std::size_t v = 0; v < e.map.size(); ++v) map.push_back({v, {e.map[v].a, e.map[v].b}});
  Json out{{"host1", to_json(e.host1)}, {"host2", to_json(e.host2)}, {"map", map}};
  out["witness1"] = e.witness1 ? to_json(*e.witness1) : Json(nullptr);
  out["witness2"] = e.witness2 ? to_json(*e.witness2) : Json(nullptr);
  if (guest) out["guest"] = to_json(*guest);
  return out;
}

Json to_json(const DecompositionReport& r) {
  Json out{{"valid", r.is_valid}, {"width", r.width},         {"normal", r.is_normal},
           {"simple", r.is_k_simple}, {"smooth", r.is_k_smooth}, {"fine", r.is_k_fine}};
  Json why = Json::object();
  if (!r.valid_violation.empty()) why["valid"] = r.valid_violation;
  if (!r.normal_violation.empty()) why["normal"] = r.normal_violation;
  if (!r.simple_violation.empty()) why["simple"] = r.simple_violation;
  if (!r.smooth_violation.empty()) why["smooth"] = r.smooth_violation;
  if (!r.fine_violation.empty()) why["fine"] = r.fine_violation;
  out["violations"] = why;
  return out;
}

namespace {

Json witness_json(const WitnessCheck& w) {
  if (!w.present) return nullptr;
  Json out{{"valid", w.valid}, {"width", w.width}};
  if (!w.violation.empty()) out["violation"] = w.violation;
  return out;
}

}  // namespace

Json to_json(const EmbeddingReport& r) {
  return Json{{"ok", r.ok()},
              {"injective", r.injective},
              {"in_bounds", r.in_bounds},
              {"edges_realized", r.edges_realized},
              {"horizontal", r.horizontal},
              {"vertical", r.vertical},
              {"diagonal", r.diagonal},
              {"indegree1", r.indegree1},
              {"indegree2", r.indegree2},
              {"witness1", witness_json(r.witness1)},
              {"witness2", witness_json(r.witness2)},
              {"violations", r.violations}};
}

Json to_json(const CliqueDiagnostics& d) {
  Json members = Json::array();
  for (const auto& m : d.members)
    members.push_back(Json{{"v", m.v},
                           {"redundant1", m.redundant1},
                           {"redundant2", m.redundant2},
                           {"redundant", m.redundant},
                           {"attractive1", m.attractive1},
                           {"attractive2", m.attractive2}});
  Json attached = Json::array();
  for (const auto& a : d.attached)
    attached.push_back(Json{{"v", a.v},
                            {"in_box", a.in_box},
                            {"in_strip1", a.in_strip1},
                            {"in_strip2", a.in_strip2},
                            {"diagonal", a.diagonal},
                            {"magnetic1", a.magnetic1},
                            {"magnetic2", a.magnetic2}});
  return Json{{"clique", set_json(d.clique)},
              {"attachment_count", d.attachment_count},
              {"has_bad_vertex", d.has_bad_vertex()},
              {"members", members},
              {"attached", attached}};
}

Json to_json(const SearchBudget& b) {
  return Json{{"max_host_size", b.max_host_size}, {"max_indegree1", b.max_indegree1},
              {"max_indegree2", b.max_indegree2}, {"max_tw1", b.max_tw1},
              {"max_tw2", b.max_tw2},             {"oriented_only", b.oriented_only}};
}

Json to_json(const SearchCertificate& c) {
  Json out{{"verdict", c.embeddable ? "EMBEDDABLE" : "NON_EMBEDDABLE"},
           {"budget", to_json(c.budget)},
           {"hosts1", c.hosts1},
           {"hosts2", c.hosts2},
           {"pairs_examined", c.pairs_examined},
           {"pairs_skipped", c.pairs_skipped},
           {"search_nodes", c.search_nodes}};
  out["embedding"] = c.embedding ? to_json(*c.embedding) : Json(nullptr);
  return out;
}

Graph graph_from_json(const Json& j) {
  Graph g(as_count(field(j, "n"), "n"));
  for (auto [u, v] : read_pairs(field(j, "edges"), g.vertex_count(), "edge")) {
    if (u == v) malformed("self-loop in edge list");
    g.add_edge(u, v);
  }
  return g;
}

Digraph digraph_from_json(const Json& j) {
  Digraph d(as_count(field(j, "n"), "n"));
  for (auto [u, v] : read_pairs(field(j, "arcs"), d.vertex_count(), "arc")) {
    if (u == v) malformed("self-loop in arc list");
    d.add_arc(u, v);
  }
  bool oriented = false;
  if (j.contains("oriented")) {
    if (!j["oriented"].is_boolean()) malformed("oriented must be a boolean");
    oriented = j["oriented"].get<bool>();
  }
  if (oriented) {
    if (!d.is_oriented()) malformed("digraph marked oriented has anti-parallel arcs");
    d.set_oriented_flag(true);
  }
  return d;
}

TreeDecomposition decomposition_from_json(const Json& j) {
  TreeDecomposition td;
  td.node_count = as_count(field(j, "nodes"), "nodes");
  td.tree_edges = read_pairs(field(j, "tree_edges"), td.node_count, "tree edge");
  const Json& bags = field(j, "bags");
  if (!bags.is_array() || static_cast<int>(bags.size()) != td.node_count) malformed("need one bag per node");
  for (const auto& b : bags) td.bags.push_back(read_set(b, "bag"));
  if (j.contains("root") && !j["root"].is_null()) td.root = as_vertex(j["root"], td.node_count, "root");
  return td;
}

ConstructionTrace trace_from_json(const Json& j) {
  ConstructionTrace t;
  t.k = as_int(field(j, "k"), "k");
  t.base = read_set(field(j, "base"), "base");
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) malformed("steps must be an array");
  for (const auto& s : steps) {
    const int v = as_int(field(s, "v"), "step vertex");
    if (v < 0) malformed("step vertex must be non-negative");
    t.steps.push_back({v, read_set(field(s, "clique"), "clique")});
  }
  return t;
}

Embedding embedding_from_json(const Json& j) {
  Embedding e{digraph_from_json(field(j, "host1")), digraph_from_json(field(j, "host2")), {}, {}, {}};
  const Json& map = field(j, "map");
  if (!map.is_array()) malformed("map must be an array");
  e.map.assign(map.size(), Coord{-1, -1});
  std::vector<char> seen(map.size(), 0);
  const int n = static_cast<int>(map.size());
  for (const auto& entry : map) {
    if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array() || entry[1].size() != 2)
      malformed("map entries must look like [v, [a, b]]");
    const Vertex v = as_vertex(entry[0], n, "map vertex");
    if (seen[v]) malformed("map lists a vertex twice");
    seen[v] = 1;
    // Coordinates are range-checked by verify_embedding, not here.
    e.map[v] = {as_int(entry[1][0], "coordinate"), as_int(entry[1][1], "coordinate")};
  }
  if (j.contains("witness1") && !j["witness1"].is_null()) e.witness1 = decomposition_from_json(j["witness1"]);
  if (j.contains("witness2") && !j["witness2"].is_null()) e.witness2 = decomposition_from_json(j["witness2"]);
  return e;
}

std::optional<Graph> embedding_guest_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("guest")) return std::nullopt;
  return graph_from_json(j["guest"]);
}

DocumentKind document_kind(const Json& j) {
  if (!j.is_object()) return DocumentKind::Unknown;
  if (j.contains("host1")) return DocumentKind::Embedding;
  if (j.contains("steps")) return DocumentKind::Trace;
  if (j.contains("bags")) return DocumentKind::Decomposition;
  if (j.contains("arcs")) return DocumentKind::Digraph;
  if (j.contains("edges")) return DocumentKind::Graph;
  return DocumentKind::Unknown;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    malformed(std::string("invalid JSON: ") + ex.what());
  }
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const Digraph& d) {
  std::ostringstream out;
  out << "digraph H {\n";
  for (Vertex v = 0; v < d.vertex_count(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : d.arcs()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

const char* kind_colour(EdgeKind k) {
  switch (k) {
    case EdgeKind::Horizontal: return "blue";
    case EdgeKind::Vertical: return "darkgreen";
    case EdgeKind::Diagonal: return "red";
    case EdgeKind::Missing: return "black";
  }
  return "black";
}

std::string node_name(Coord c) { return "\"" + std::to_string(c.a) + "," + std::to_string(c.b) + "\""; }

}  // namespace

std::string to_dot(const Embedding& e, const Graph& guest) {
  const ProductIndex ix{e.host1.vertex_count(), e.host2.vertex_count()};
  const Digraph prod = directed_product(e.host1, e.host2);
  std::vector<Vertex> owner(ix.size(), -1);
  for (std::size_t v = 0; v < e.map.size(); ++v) {
    const Coord c = e.map[v];
    if (c.a >= 0 && c.a < ix.n1 && c.b >= 0 && c.b < ix.n2) owner[ix.id(c)] = static_cast<Vertex>(v);
  }
  std::vector<std::vector<char>> guest_arc(ix.size(), std::vector<char>(ix.size(), 0));
  for (auto [u, v] : guest.edges()) {
    const Coord cu = e.map[u], cv = e.map[v];
    if (cu.a < 0 || cu.a >= ix.n1 || cu.b < 0 || cu.b >= ix.n2) continue;
    if (cv.a < 0 || cv.a >= ix.n1 || cv.b < 0 || cv.b >= ix.n2) continue;
    guest_arc[ix.id(cu)][ix.id(cv)] = guest_arc[ix.id(cv)][ix.id(cu)] = 1;
  }
  std::ostringstream out;
  out << "digraph P {\n  node [shape=circle, fontsize=10];\n";
  for (int x = 0; x < ix.size(); ++x) {
    const Coord c = ix.coord(x);
    out << "  " << node_name(c) << " [pos=\"" << c.a << "," << c.b << "!\"";
    if (owner[x] >= 0) out << ", style=filled, fillcolor=gold, xlabel=\"" << owner[x] << "\"";
    out << "];\n";
  }
  for (auto [x, y] : prod.arcs()) {
    const Coord cx = ix.coord(x), cy = ix.coord(y);
    const EdgeKind kind = classify_edge(e, cx, cy);
    out << "  " << node_name(cx) << " -> " << node_name(cy) << " [color=" << kind_colour(kind);
    if (guest_arc[x][y]) out << ", penwidth=3";
    else out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace psk
