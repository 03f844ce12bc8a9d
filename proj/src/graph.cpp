#include "ssi/graph.hpp"

#include "ssi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace ssi {

Graph::Graph(int n, std::vector<Edge> edges, bool directed, bool allow_self_loops)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
    if (n < 0) throw ValidationError("graph: vertex count must be non-negative");
    adj_.resize(static_cast<std::size_t>(n));
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw ValidationError("graph: edge endpoint out of range");
        if (e.u == e.v && !allow_self_loops)
            throw ValidationError("graph: self-loop not allowed");
        if (!std::isfinite(e.weight))
            throw ValidationError("graph: edge weight must be finite");
        adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        if (!directed_ && e.u != e.v) adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
    return adj_.at(static_cast<std::size_t>(v));
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    const std::vector<int> dist = hop_distances_from(*this, 0);
    return std::all_of(dist.begin(), dist.end(), [](int d) { return d != kInfiniteHops; });
}

int Graph::diameter() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) {
        for (int d : hop_distances_from(*this, v))
            if (d != kInfiniteHops) best = std::max(best, d);
    }
    return best;
}

VertexSet::VertexSet(std::vector<int> members, int ambient_n)
    : members_(std::move(members)), ambient_n_(ambient_n) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int v : members_)
        if (v < 0 || v >= ambient_n_) throw ValidationError("vertex set: member out of range");
}

bool VertexSet::contains(int v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

int VertexSet::position(int v) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) return -1;
    return static_cast<int>(it - members_.begin());
}

VertexSet VertexSet::full(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    return VertexSet(std::move(all), n);
}

// ---------------------------------------------------------------------------
// Standard matrices
// ---------------------------------------------------------------------------

Matrix adjacency(const Graph& g) {
    Matrix a = Matrix::Zero(g.n(), g.n());
    for (const Edge& e : g.edges()) {
        a(e.v, e.u) += e.weight;
        if (!g.directed() && e.u != e.v) a(e.u, e.v) += e.weight;
    }
    return a;
}

Matrix laplacian(const Graph& g) {
    if (g.directed()) throw ValidationError("laplacian-requires-undirected");
    const Matrix a = adjacency(g);
    Matrix l = -a;
    for (int v = 0; v < g.n(); ++v) l(v, v) += a.row(v).sum();
    return l;
}

Matrix normalized_adjacency_selfloops(const Graph& g) {
    if (g.directed()) throw ValidationError("normalized-adjacency-requires-undirected");
    Matrix a = adjacency(g);
    a += Matrix::Identity(g.n(), g.n());
    Vector dinv_sqrt(g.n());
    for (int v = 0; v < g.n(); ++v) dinv_sqrt(v) = 1.0 / std::sqrt(a.row(v).sum());
    return dinv_sqrt.asDiagonal() * a * dinv_sqrt.asDiagonal();
}

// ---------------------------------------------------------------------------
// Hop-distance machinery
// ---------------------------------------------------------------------------

std::vector<int> hop_distances_from(const Graph& g, int src) {
    if (src < 0 || src >= g.n()) throw ValidationError("hop distance: vertex out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.n()), kInfiniteHops);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(src)] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] == kInfiniteHops) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int hop_distance(const Graph& g, int u, int v) {
    if (v < 0 || v >= g.n()) throw ValidationError("hop distance: vertex out of range");
    return hop_distances_from(g, u)[static_cast<std::size_t>(v)];
}

VertexSet d_hop_neighborhood(const Graph& g, const VertexSet& v0, int d) {
    if (d < 0) throw ValidationError("d-hop neighborhood: d must be >= 0");
    std::vector<int> dist(static_cast<std::size_t>(g.n()), kInfiniteHops);
    std::deque<int> queue;
    for (int v : v0.members()) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (dist[static_cast<std::size_t>(v)] == d) continue;
        for (int w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] == kInfiniteHops) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<int> members;
    for (int v = 0; v < g.n(); ++v)
        if (dist[static_cast<std::size_t>(v)] <= d) members.push_back(v);
    return VertexSet(std::move(members), g.n());
}

std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const VertexSet& v0) {
    if (v0.empty()) throw ValidationError("induced subgraph: vertex set must be nonempty");
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        const int pu = v0.position(e.u);
        const int pv = v0.position(e.v);
        if (pu >= 0 && pv >= 0) edges.push_back({pu, pv, e.weight});
    }
    return {Graph(v0.size(), std::move(edges), g.directed()), v0.members()};
}

Matrix extended_laplacian(const Graph& g, const VertexSet& v0, int d) {
    const VertexSet ball = d_hop_neighborhood(g, v0, d);
    auto [sub, ids] = induced_subgraph(g, ball);
    const Matrix lsub = laplacian(sub);
    Matrix out = Matrix::Zero(g.n(), g.n());
    for (int i = 0; i < sub.n(); ++i)
        for (int j = 0; j < sub.n(); ++j)
            out(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]) = lsub(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "path") return GraphKind::Path;
    if (name == "cycle") return GraphKind::Cycle;
    if (name == "directed_cycle") return GraphKind::DirectedCycle;
    if (name == "lattice") return GraphKind::Lattice;
    if (name == "erdos_renyi") return GraphKind::ErdosRenyi;
    if (name == "random_connected") return GraphKind::RandomConnected;
    throw ValidationError("unknown graph kind: " + name);
}

std::string graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::Path: return "path";
        case GraphKind::Cycle: return "cycle";
        case GraphKind::DirectedCycle: return "directed_cycle";
        case GraphKind::Lattice: return "lattice";
        case GraphKind::ErdosRenyi: return "erdos_renyi";
        case GraphKind::RandomConnected: return "random_connected";
    }
    throw ValidationError("unknown graph kind");
}

namespace {

Graph make_erdos_renyi(int n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.push_back({u, v, 1.0});
    return Graph(n, std::move(edges), false);
}

}  // namespace

Graph make_graph(const GraphParams& params, std::uint64_t seed) {
    switch (params.kind) {
        case GraphKind::Path: {
            if (params.n < 1) throw ValidationError("path: n must be >= 1");
            std::vector<Edge> edges;
            for (int v = 0; v + 1 < params.n; ++v) edges.push_back({v, v + 1, 1.0});
            return Graph(params.n, std::move(edges), false);
        }
        case GraphKind::Cycle: {
            if (params.n < 3) throw ValidationError("cycle: n must be >= 3");
            std::vector<Edge> edges;
            for (int v = 0; v < params.n; ++v) edges.push_back({v, (v + 1) % params.n, 1.0});
            return Graph(params.n, std::move(edges), false);
        }
        case GraphKind::DirectedCycle: {
            if (params.n < 2) throw ValidationError("directed_cycle: n must be >= 2");
            std::vector<Edge> edges;
            for (int v = 0; v < params.n; ++v) edges.push_back({v, (v + 1) % params.n, 1.0});
            return Graph(params.n, std::move(edges), true);
        }
        case GraphKind::Lattice: {
            if (params.rows < 1 || params.cols < 1)
                throw ValidationError("lattice: rows and cols must be >= 1");
            // Vertex id = row * cols + col.
            std::vector<Edge> edges;
            for (int r = 0; r < params.rows; ++r) {
                for (int c = 0; c < params.cols; ++c) {
                    const int id = r * params.cols + c;
                    if (c + 1 < params.cols) edges.push_back({id, id + 1, 1.0});
                    if (r + 1 < params.rows) edges.push_back({id, id + params.cols, 1.0});
                }
            }
            return Graph(params.rows * params.cols, std::move(edges), false);
        }
        case GraphKind::ErdosRenyi: {
            if (params.n < 1 || params.p < 0.0 || params.p > 1.0)
                throw ValidationError("erdos_renyi: need n >= 1 and p in [0,1]");
            Rng rng(seed);
            return make_erdos_renyi(params.n, params.p, rng);
        }
        case GraphKind::RandomConnected: {
            if (params.n < 1 || params.p < 0.0 || params.p > 1.0)
                throw ValidationError("random_connected: need n >= 1 and p in [0,1]");
            Rng rng(seed);
            for (int attempt = 0; attempt < 10000; ++attempt) {
                Graph g = make_erdos_renyi(params.n, params.p, rng);
                if (g.connected()) return g;
            }
            throw NumericalError("random_connected: no connected draw after 10000 attempts");
        }
    }
    throw ValidationError("unknown graph kind");
}

// ---------------------------------------------------------------------------
// File I/O
// ---------------------------------------------------------------------------

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.n() << " directed " << (g.directed() ? 1 : 0) << "\n";
    out.precision(17);
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << " " << e.weight << "\n";
    return out.str();
}

Graph read_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string tok_n, tok_directed;
    int n = 0, directed = 0;
    if (!(in >> tok_n >> n >> tok_directed >> directed) || tok_n != "n" || tok_directed != "directed")
        throw ValidationError("edge list: bad header, expected 'n <count> directed <0|1>'");
    std::vector<Edge> edges;
    std::string line;
    std::getline(in, line);  // rest of header line
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.u >> e.v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ValidationError("edge list: bad edge line: " + line);
        }
        if (!(ls >> e.weight)) e.weight = 1.0;
        edges.push_back(e);
    }
    return Graph(n, std::move(edges), directed != 0);
}

}  // namespace ssi
