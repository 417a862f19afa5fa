#include "psk/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "psk/decomposition.hpp"
#include "psk/embedders.hpp"
#include "psk/instances.hpp"
#include "psk/oracle.hpp"
#include "psk/parallel.hpp"
#include "psk/products.hpp"
#include "psk/serialize.hpp"

namespace psk::cli {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParameterRange:
    case ErrorKind::ArityMismatch:
    case ErrorKind::NotAClique:
    case ErrorKind::NotAPartition:
      return 2;
    case ErrorKind::TooLarge:
    case ErrorKind::BudgetTooLarge:
    case ErrorKind::Explosion:
      return 3;
    default:
      return 1;
  }
}

namespace {

std::vector<Json> read_documents(std::istream& in) {
  std::vector<Json> docs;
  while (true) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) break;
    try {
      Json j;
      in >> j;
      docs.push_back(std::move(j));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::MalformedInput, std::string("invalid JSON document: ") + ex.what());
    }
  }
  return docs;
}

Json read_single_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  auto docs = read_documents(f);
  if (docs.size() != 1) throw Error(ErrorKind::MalformedInput, path + " must hold exactly one document");
  return docs.front();
}

Graph guest_graph(const Json& j) {
  switch (document_kind(j)) {
    case DocumentKind::Graph: return graph_from_json(j);
    case DocumentKind::Trace: return validate_trace(trace_from_json(j), false);
    default: throw Error(ErrorKind::MalformedInput, "expected a graph or trace document");
  }
}

ConstructionTrace need_trace(const Json& j) {
  if (document_kind(j) != DocumentKind::Trace) throw Error(ErrorKind::MalformedInput, "expected a trace document");
  return trace_from_json(j);
}

struct Context {
  std::istream* in;
  std::ostream* out;
  std::ostream* err;
  int jobs = 1;
  std::string dot_path;
};

// One result per input item: documents for the output stream and DOT text.
struct Item {
  std::vector<Json> docs;
  std::string dot;
  bool failed = false;
  std::string failure;
};

int emit(Context& ctx, const std::vector<Item>& items) {
  int code = 0;
  std::string dot;
  for (const auto& item : items) {
    for (const auto& d : item.docs) *ctx.out << d.dump() << '\n';
    dot += item.dot;
    if (item.failed) {
      *ctx.err << "VerificationFailed: " << item.failure << '\n';
      code = 1;
    }
  }
  ctx.out->flush();
  if (!ctx.dot_path.empty()) {
    std::ofstream f(ctx.dot_path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + ctx.dot_path);
    f << dot;
  }
  return code;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  int k = 2;
  int n = 10;
  std::uint64_t seed = 1;
  int count = 1;
  int copies = 1;
  int rounds = 1;
  long long cap = kDefaultVertexCap;
  std::string base_path;
  bool with_decomposition = false;
};

std::vector<Json> generate_one(const GenerateArgs& a, std::uint64_t seed) {
  const std::string& f = a.family;
  if (f == "kbar3") return {to_json(gen_kbar3(a.k))};
  if (f == "complete") return {to_json(Graph::complete(a.n))};
  if (f == "path") return {to_json(Graph::path(a.n))};
  if (f == "simple-ktree") return {to_json(gen_random_simple_ktree(a.k, a.n, seed))};
  if (f == "ktree") return {to_json(gen_random_ktree(a.k, a.n, seed))};
  if (f == "max-outerplanar") return {to_json(gen_max_outerplanar(a.n, seed))};
  if (f == "max-outerplanar-trace") return {to_json(gen_max_outerplanar_trace(a.n, seed))};
  if (f == "attachment-closure") {
    const Graph base = a.base_path.empty() ? Graph::complete(a.k + 1) : guest_graph(read_single_file(a.base_path));
    return {to_json(gen_attachment_closure(base, a.k, a.copies, a.rounds, a.cap))};
  }
  if (f == "stw-lowerbound") {
    const Graph base = a.base_path.empty() ? Graph::complete(a.k) : guest_graph(read_single_file(a.base_path));
    if (!a.with_decomposition) return {to_json(gen_stw_lowerbound(a.k, base, a.cap))};
    const TreeDecomposition base_td = exact_treewidth(base).witness;
    const auto out = gen_stw_lowerbound_decomposed(a.k, base, base_td, a.cap);
    return {to_json(out.graph), to_json(out.td)};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family " + f);
}

int cmd_generate(Context& ctx, GenerateArgs a) {
  if (const char* env = std::getenv("PSK_SEED")) {
    try {
      a.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "PSK_SEED must be an unsigned integer");
    }
  }
  if (a.count < 1) throw Error(ErrorKind::ParameterRange, "count must be at least 1");
  auto items = ordered_map(static_cast<std::size_t>(a.count), ctx.jobs, [&](std::size_t i) {
    return Item{generate_one(a, a.seed + i), "", false, ""};
  });
  return emit(ctx, items);
}

// ---------------------------------------------------------------- embed / verify

struct EmbedArgs {
  std::string method;
  int p = 0;
  int q = 0;
  bool check_invariants = false;
};

// Method-specific bounds on top of verify_embedding.
std::string bound_violation(const EmbeddingReport& r, int max_indegree, int max_width1, int max_width2) {
  if (!r.ok()) return r.violations.empty() ? "embedding rejected" : r.violations.front();
  if (max_indegree >= 0 && (r.indegree1 > max_indegree || r.indegree2 > max_indegree))
    return "host indegree exceeds " + std::to_string(max_indegree);
  if (!r.witness1.present || !r.witness2.present) return "missing host witness";
  if (r.witness1.width > max_width1 || r.witness2.width > max_width2) return "host witness too wide";
  return "";
}

Item embed_one(const EmbedArgs& a, const Json& doc) {
  EmbedOptions opts;
  opts.check_invariants = a.check_invariants;
  Graph guest;
  Embedding e;
  int max_indegree = -1, w1 = 0, w2 = 0;
  if (a.method == "outerplanar") {
    guest = guest_graph(doc);
    e = embed_outerplanar(guest, opts);
    max_indegree = 1;
    w1 = w2 = 1;
  } else if (a.method == "simple-stw") {
    const ConstructionTrace t = need_trace(doc);
    guest = validate_trace(t, true);
    e = embed_simple_treewidth(t, opts);
    max_indegree = w1 = w2 = t.k - 1;
  } else if (a.method == "unbounded") {
    const ConstructionTrace t = need_trace(doc);
    guest = validate_trace(t, false);
    e = embed_unbounded_indegree(t, a.p, a.q);
    w1 = a.p;
    w2 = a.q;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method " + a.method);
  }
  const auto report = verify_embedding(guest, e);
  const std::string why = bound_violation(report, max_indegree, w1, w2);
  if (!why.empty()) return Item{{}, "", true, why};
  return Item{{to_json(e, &guest)}, to_dot(e, guest), false, ""};
}

template <class F>
int per_document(Context& ctx, F&& f) {
  const auto docs = read_documents(*ctx.in);
  auto items = ordered_map(docs.size(), ctx.jobs, [&](std::size_t i) { return f(docs[i]); });
  return emit(ctx, items);
}

Item verify_one(const Json& doc, const std::optional<Graph>& graph, std::optional<int> k) {
  switch (document_kind(doc)) {
    case DocumentKind::Embedding: {
      auto guest = embedding_guest_from_json(doc);
      if (!guest) guest = graph;
      if (!guest) throw Error(ErrorKind::MalformedInput, "embedding has no guest; pass --graph");
      const Embedding e = embedding_from_json(doc);
      const auto r = verify_embedding(*guest, e);
      Json out = to_json(r);
      out["strong_product"] = embeds_in_strong_product(*guest, e);
      Item item{{out}, to_dot(e, *guest), false, ""};
      if (!r.ok()) {
        item.failed = true;
        item.failure = r.violations.empty() ? "embedding rejected" : r.violations.front();
      }
      return item;
    }
    case DocumentKind::Decomposition: {
      if (!graph) throw Error(ErrorKind::MalformedInput, "decomposition check needs --graph");
      const TreeDecomposition td = decomposition_from_json(doc);
      const auto r = verify_decomposition(*graph, td, k.value_or(std::max(td.width(), 0)));
      Item item{{to_json(r)}, "", !r.is_valid, r.valid_violation};
      return item;
    }
    case DocumentKind::Trace: {
      const ConstructionTrace t = trace_from_json(doc);
      Json out{{"valid", true}, {"simple", true}};
      try {
        validate_trace(t, false);
      } catch (const Error& ex) {
        if (ex.kind() != ErrorKind::InvalidTrace) throw;
        return Item{{Json{{"valid", false}, {"simple", false}, {"violation", ex.what()}}}, "", true, ex.what()};
      }
      try {
        validate_trace(t, true);
      } catch (const Error& ex) {
        if (ex.kind() != ErrorKind::InvalidTrace) throw;
        out["simple"] = false;
      }
      return Item{{out}, "", false, ""};
    }
    default:
      throw Error(ErrorKind::MalformedInput, "verify expects embedding, decomposition or trace documents");
  }
}

// ---------------------------------------------------------------- normalize

int cmd_normalize(Context& ctx, int k, bool emit_trace) {
  const auto docs = read_documents(*ctx.in);
  if (docs.size() % 2 != 0) throw Error(ErrorKind::MalformedInput, "normalize reads graph/decomposition pairs");
  auto items = ordered_map(docs.size() / 2, ctx.jobs, [&](std::size_t i) {
    const Graph g = guest_graph(docs[2 * i]);
    if (document_kind(docs[2 * i + 1]) != DocumentKind::Decomposition)
      throw Error(ErrorKind::MalformedInput, "expected a decomposition after each graph");
    const TreeDecomposition td = decomposition_from_json(docs[2 * i + 1]);
    const TreeDecomposition smooth = normalize_to_smooth_simple(g, td, k);
    Item item{{to_json(smooth)}, "", false, ""};
    if (emit_trace) item.docs.push_back(to_json(decomposition_to_simple_ktree(g, smooth, k).trace));
    return item;
  });
  return emit(ctx, items);
}

// ---------------------------------------------------------------- product

int cmd_product(Context& ctx, bool strong) {
  const auto docs = read_documents(*ctx.in);
  if (docs.size() != 2) throw Error(ErrorKind::MalformedInput, "product reads exactly two documents");
  Item item;
  if (strong) {
    const Graph p = strong_product(guest_graph(docs[0]), guest_graph(docs[1]));
    item.docs.push_back(to_json(p));
    item.dot = to_dot(p);
  } else {
    const Digraph p = directed_product(digraph_from_json(docs[0]), digraph_from_json(docs[1]));
    item.docs.push_back(to_json(p));
    item.dot = to_dot(p);
  }
  return emit(ctx, {item});
}

// ---------------------------------------------------------------- oracle / diagnose

Item oracle_one(const std::string& what, const Json& doc, const SearchBudget& budget, bool witness) {
  const Graph g = guest_graph(doc);
  if (what == "tw") {
    auto r = exact_treewidth(g);
    if (!witness) return Item{{Json(r.width)}, "", false, ""};
    return Item{{Json{{"tw", r.width}, {"witness", to_json(r.witness)}}}, "", false, ""};
  }
  if (what == "stw") {
    auto r = exact_simple_treewidth(g);
    if (!witness) return Item{{Json(r.width)}, "", false, ""};
    Json out{{"stw", r.width}};
    out["trace"] = r.trace ? to_json(*r.trace) : Json(nullptr);
    return Item{{out}, "", false, ""};
  }
  if (what == "omega") return Item{{Json(clique_number(g))}, "", false, ""};
  if (what == "search") {
    const auto cert = exhaustive_embedding_search(g, budget);
    std::string dot;
    if (cert.embedding) dot = to_dot(*cert.embedding, g);
    return Item{{to_json(cert)}, dot, false, ""};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown oracle " + what);
}

Item diagnose_one(const Json& doc, const std::vector<int>& clique, int k) {
  const auto guest = embedding_guest_from_json(doc);
  if (!guest) throw Error(ErrorKind::MalformedInput, "diagnose needs an embedding with a guest graph");
  const Embedding e = embedding_from_json(doc);
  Item item;
  if (!clique.empty()) {
    item.docs.push_back(to_json(clique_diagnostics(*guest, e, make_vertex_set(clique))));
  } else {
    for (const auto& c : cliques_of_size(*guest, k)) item.docs.push_back(to_json(clique_diagnostics(*guest, e, c)));
  }
  return item;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embeddings of bounded simple treewidth graphs into graph products", "psk"};
  app.require_subcommand(1);
  std::string input_path, output_path, dot_path;
  int jobs = 1;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input_path, "Input file (default stdin)");
    sub->add_option("-o,--output", output_path, "Output file (default stdout)");
    sub->add_option("--dot", dot_path, "Write a DOT rendering to this file");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Emit generated graphs or traces");
  common(generate);
  generate->add_option("--family", gen.family, "Family tag")->required();
  generate->add_option("--k", gen.k);
  generate->add_option("--n", gen.n);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--count", gen.count, "Documents to emit, seeds seed, seed+1, ...");
  generate->add_option("--copies", gen.copies);
  generate->add_option("--rounds", gen.rounds);
  generate->add_option("--cap", gen.cap, "Vertex cap for the blow-up families");
  generate->add_option("--base", gen.base_path, "Base graph file");
  generate->add_flag("--with-decomposition", gen.with_decomposition);

  EmbedArgs emb;
  auto* embed = app.add_subcommand("embed", "Embed each input into a directed product");
  common(embed);
  embed->add_option("--method", emb.method)
      ->required()
      ->check(CLI::IsMember({"outerplanar", "simple-stw", "unbounded"}));
  embed->add_option("--p", emb.p);
  embed->add_option("--q", emb.q);
  embed->add_flag("--check-invariants", emb.check_invariants, "Recheck construction invariants per step");

  std::string graph_path;
  std::optional<int> verify_k;
  auto* verify = app.add_subcommand("verify", "Check embeddings, decompositions or traces");
  common(verify);
  verify->add_option("--graph", graph_path, "Guest graph file for documents without one");
  verify->add_option("--k", verify_k);

  int normalize_k = 2;
  bool normalize_trace = false;
  auto* normalize = app.add_subcommand("normalize", "Make k-simple decompositions normal and smooth");
  common(normalize);
  normalize->add_option("--k", normalize_k)->required();
  normalize->add_flag("--trace", normalize_trace, "Also emit the simple k-tree trace");

  bool strong = false, directed = false;
  auto* product = app.add_subcommand("product", "Product of two graphs or digraphs");
  common(product);
  auto* strong_flag = product->add_flag("--strong", strong);
  auto* directed_flag = product->add_flag("--directed", directed);
  strong_flag->excludes(directed_flag);

  std::string oracle_what;
  SearchBudget budget;
  bool oracle_witness = false;
  auto* oracle = app.add_subcommand("oracle", "Exact brute-force quantities");
  common(oracle);
  oracle->add_option("what", oracle_what)->required()->check(CLI::IsMember({"tw", "stw", "omega", "search"}));
  oracle->add_flag("--witness", oracle_witness, "Emit the witness with tw / stw");
  oracle->add_option("--max-host-size", budget.max_host_size, "search: vertices per host (1..4)");
  oracle->add_option("--max-indegree1", budget.max_indegree1, "search: indegree cap of the first host");
  oracle->add_option("--max-indegree2", budget.max_indegree2, "search: indegree cap of the second host");
  oracle->add_option("--max-tw1", budget.max_tw1, "search: treewidth cap of the first host");
  oracle->add_option("--max-tw2", budget.max_tw2, "search: treewidth cap of the second host");
  oracle->add_flag("--oriented-only", budget.oriented_only, "search: forbid anti-parallel arcs");

  std::vector<int> clique;
  int diagnose_k = 0;
  auto* diagnose = app.add_subcommand("diagnose", "Attachment diagnostics of cliques in an embedding");
  common(diagnose);
  auto* clique_opt = diagnose->add_option("--clique", clique, "Comma separated vertices")->delimiter(',');
  auto* k_opt = diagnose->add_option("--k", diagnose_k, "Diagnose every k-clique");
  clique_opt->excludes(k_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << ex.what() << '\n';
    return 2;
  }

  try {
    std::ifstream fin;
    std::ofstream fout;
    Context ctx{&in, &out, &err, jobs, dot_path};
    if (!input_path.empty()) {
      fin.open(input_path);
      if (!fin) throw Error(ErrorKind::MalformedInput, "cannot open " + input_path);
      ctx.in = &fin;
    }
    if (!output_path.empty()) {
      fout.open(output_path);
      if (!fout) throw Error(ErrorKind::InvalidArgument, "cannot write " + output_path);
      ctx.out = &fout;
    }

    if (generate->parsed()) return cmd_generate(ctx, gen);
    if (embed->parsed()) return per_document(ctx, [&](const Json& d) { return embed_one(emb, d); });
    if (verify->parsed()) {
      std::optional<Graph> g;
      if (!graph_path.empty()) g = guest_graph(read_single_file(graph_path));
      return per_document(ctx, [&](const Json& d) { return verify_one(d, g, verify_k); });
    }
    if (normalize->parsed()) return cmd_normalize(ctx, normalize_k, normalize_trace);
    if (product->parsed()) {
      if (!strong && !directed) throw Error(ErrorKind::InvalidArgument, "choose --strong or --directed");
      return cmd_product(ctx, strong);
    }
    if (oracle->parsed())
      return per_document(ctx, [&](const Json& d) { return oracle_one(oracle_what, d, budget, oracle_witness); });
    if (diagnose->parsed()) {
      if (clique.empty() && diagnose_k < 1) throw Error(ErrorKind::InvalidArgument, "pass --clique or --k");
      return per_document(ctx, [&](const Json& d) { return diagnose_one(d, clique, diagnose_k); });
    }
    return 2;
  } catch (const Error& ex) {
    err << ex.what() << '\n';
    return exit_code_for(ex.kind());
  }
}

}  // namespace psk::cli
