#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "psk/decomposition.hpp"
#include "psk/graph.hpp"
#include "psk/oracle.hpp"
#include "psk/products.hpp"

namespace psk {

using Json = nlohmann::ordered_json;

Json to_json(const Graph& g);
Json to_json(const Digraph& d);
Json to_json(const TreeDecomposition& td);
Json to_json(const ConstructionTrace& t);
/// The guest graph is stored under "guest" when given, so a document can be re-verified alone.
Json to_json(const Embedding& e, const Graph* guest = nullptr);
Json to_json(const DecompositionReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const CliqueDiagnostics& d);
Json to_json(const SearchCertificate& c);
Json to_json(const SearchBudget& b);

// Readers throw Error(MalformedInput) on any shape or range problem.
Graph graph_from_json(const Json& j);
Digraph digraph_from_json(const Json& j);
TreeDecomposition decomposition_from_json(const Json& j);
ConstructionTrace trace_from_json(const Json& j);
Embedding embedding_from_json(const Json& j);
std::optional<Graph> embedding_guest_from_json(const Json& j);

enum class DocumentKind { Graph, Digraph, Decomposition, Trace, Embedding, Unknown };
DocumentKind document_kind(const Json& j);

/// Parses one JSON document; throws MalformedInput.
Json parse_json(const std::string& text);

std::string to_dot(const Graph& g);
std::string to_dot(const Digraph& d);
/// The directed product of the hosts; guest images filled, guest edges bold and
/// coloured by kind.
std::string to_dot(const Embedding& e, const Graph& guest);

}  // namespace psk
