#pragma once

#include "ssi/filter_bank.hpp"
#include "ssi/gnn.hpp"
#include "ssi/graph.hpp"
#include "ssi/lattice.hpp"
#include "ssi/learn.hpp"

#include <json.hpp>

#include <string>

namespace ssi {

using Json = nlohmann::ordered_json;

// Graph JSON form: {"n": int, "directed": bool, "edges": [[u, v, w], ...]}.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// Typed-graph JSON adds "node_types" and "edge_types" arrays.
Json typed_graph_to_json(const TypedGraph& tg);
TypedGraph typed_graph_from_json(const Json& j);

// Bank spec JSON form: {"C": [[ids...], ...], "D": [ints...]}; filters add
// "coeffs": [[...], ...]. The ambient size comes from the host graph.
Json bank_spec_to_json(const BankSpec& spec);
BankSpec bank_spec_from_json(const Json& j, int ambient_n);
Json ssi_filter_to_json(const SsiFilter& filter);
SsiFilter ssi_filter_from_json(const Json& j, int ambient_n);

// Observation sets: {"V0": [ids...], "X": [[...]], "Xp": [[...]]}.
Json observations_to_json(const ObservationSet& obs);
ObservationSet observations_from_json(const Json& j, int ambient_n);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json lattice_to_json(const BankLattice& lattice);
Json learn_result_to_json(const LearnResult& result);
Json genericity_to_json(const GenericityReport& report);

/// Reads a graph from disk, accepting both the JSON form and the edge-list
/// text form (chosen by attempting JSON first).
Graph load_graph_file(const std::string& path);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ssi
