#include "ssi/serialize.hpp"

#include <fstream>
#include <sstream>

namespace ssi {

Json graph_to_json(const Graph& g) {
    Json j;
    j["n"] = g.n();
    j["directed"] = g.directed();
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.weight}));
    j["edges"] = std::move(edges);
    return j;
}

Graph graph_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw ValidationError("graph json: need keys n and edges");
    std::vector<Edge> edges;
    for (const auto& item : j.at("edges")) {
        if (!item.is_array() || item.size() < 2 || item.size() > 3)
            throw ValidationError("graph json: each edge must be [u, v] or [u, v, w]");
        Edge e;
        e.u = item.at(0).get<int>();
        e.v = item.at(1).get<int>();
        e.weight = item.size() == 3 ? item.at(2).get<double>() : 1.0;
        edges.push_back(e);
    }
    return Graph(j.at("n").get<int>(), std::move(edges),
                 j.value("directed", false));
}

Json typed_graph_to_json(const TypedGraph& tg) {
    Json j = graph_to_json(tg.graph);
    j["node_types"] = tg.node_types;
    j["edge_types"] = tg.edge_types;
    return j;
}

TypedGraph typed_graph_from_json(const Json& j) {
    Graph g = graph_from_json(j);
    if (!j.contains("node_types") || !j.contains("edge_types"))
        throw ValidationError("typed graph json: need node_types and edge_types");
    return TypedGraph(std::move(g), j.at("node_types").get<std::vector<int>>(),
                      j.at("edge_types").get<std::vector<int>>());
}

Json bank_spec_to_json(const BankSpec& spec) {
    Json j;
    Json c = Json::array();
    for (const VertexSet& v : spec.C.sets()) c.push_back(v.members());
    j["C"] = std::move(c);
    j["D"] = spec.D;
    return j;
}

BankSpec bank_spec_from_json(const Json& j, int ambient_n) {
    if (!j.contains("C") || !j.contains("D"))
        throw ValidationError("bank spec json: need keys C and D");
    std::vector<VertexSet> sets;
    for (const auto& members : j.at("C"))
        sets.emplace_back(members.get<std::vector<int>>(), ambient_n);
    return BankSpec(SupportTuple(std::move(sets), ambient_n), j.at("D").get<DegreeTuple>());
}

Json ssi_filter_to_json(const SsiFilter& filter) {
    Json j = bank_spec_to_json(filter.spec);
    j["coeffs"] = filter.coeffs;
    return j;
}

SsiFilter ssi_filter_from_json(const Json& j, int ambient_n) {
    if (!j.contains("coeffs")) throw ValidationError("filter json: need key coeffs");
    return SsiFilter(bank_spec_from_json(j, ambient_n),
                     j.at("coeffs").get<std::vector<std::vector<double>>>());
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix json: need a non-empty array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
            throw ValidationError("matrix json: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
}

Json observations_to_json(const ObservationSet& obs) {
    Json j;
    j["V0"] = obs.V0.members();
    j["X"] = matrix_to_json(obs.X);
    j["Xp"] = matrix_to_json(obs.Xp);
    return j;
}

ObservationSet observations_from_json(const Json& j, int ambient_n) {
    if (!j.contains("V0") || !j.contains("X") || !j.contains("Xp"))
        throw ValidationError("observations json: need keys V0, X, Xp");
    return ObservationSet(VertexSet(j.at("V0").get<std::vector<int>>(), ambient_n),
                          matrix_from_json(j.at("X")), matrix_from_json(j.at("Xp")));
}

Json lattice_to_json(const BankLattice& lattice) {
    Json j;
    Json nodes = Json::array();
    for (const auto& node : lattice.nodes()) {
        Json item;
        item["spec"] = node.spec ? bank_spec_to_json(*node.spec) : Json(nullptr);
        item["dim"] = node.dimension;
        nodes.push_back(std::move(item));
    }
    j["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& [child, parent] : lattice.edges())
        edges.push_back(Json::array({child, parent}));
    j["edges"] = std::move(edges);
    return j;
}

Json learn_result_to_json(const LearnResult& result) {
    Json j;
    j["F0"] = matrix_to_json(result.F0);
    if (result.F) j["F"] = ssi_filter_to_json(*result.F);
    j["objective"] = result.objective;
    j["residual_history"] = result.residual_history;
    return j;
}

Json genericity_to_json(const GenericityReport& report) {
    Json j;
    j["distinct_eigenvalues"] = report.distinct_eigenvalues;
    j["min_eigenvalue_gap"] = report.min_eigenvalue_gap;
    j["nonzero_eigenvector_entries"] = report.nonzero_eigenvector_entries;
    j["min_eigenvector_entry"] = report.min_eigenvector_entry;
    j["tolerance"] = report.tolerance;
    return j;
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open graph file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (Json::accept(text)) return graph_from_json(Json::parse(text));
    return read_edge_list(text);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON in " + path);
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
}

}  // namespace ssi
