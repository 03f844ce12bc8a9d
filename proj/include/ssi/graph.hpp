#pragma once

#include "ssi/common.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

namespace ssi {

inline constexpr int kInfiniteHops = std::numeric_limits<int>::max();

struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;
};

/// Finite simple graph, optionally directed and weighted. Immutable after
/// construction; undirected graphs store each edge once and expose it
/// symmetrically.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges, bool directed, bool allow_self_loops = false);

    int n() const { return n_; }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Out-neighbors for directed graphs, all neighbors for undirected ones.
    const std::vector<int>& neighbors(int v) const;

    bool connected() const;
    /// Largest finite hop distance over all vertex pairs (0 for n <= 1).
    int diameter() const;

private:
    int n_;
    bool directed_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;  // traversal lists (symmetrized for undirected)
};

/// Sorted duplicate-free set of vertex ids inside a host graph of size
/// ambient_n. May be empty (operations that need nonempty sets say so).
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::vector<int> members, int ambient_n);

    const std::vector<int>& members() const { return members_; }
    int ambient_n() const { return ambient_n_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool contains(int v) const;
    /// Position of v within the sorted member list, -1 if absent.
    int position(int v) const;

    bool operator==(const VertexSet& other) const {
        return ambient_n_ == other.ambient_n_ && members_ == other.members_;
    }

    static VertexSet full(int n);

private:
    std::vector<int> members_;
    int ambient_n_ = 0;
};

// ---------------------------------------------------------------------------
// Standard matrices
// ---------------------------------------------------------------------------

/// Adjacency matrix. Directed convention: A[v][u] = weight of edge u -> v,
/// so (A f)(v) aggregates from the in-neighbors of v.
Matrix adjacency(const Graph& g);

/// Combinatorial Laplacian Deg - A. Undirected graphs only.
Matrix laplacian(const Graph& g);

/// Symmetrically normalized adjacency with self-loops,
/// Dt^{-1/2} (A + I) Dt^{-1/2} with Dt the degree matrix of A + I.
Matrix normalized_adjacency_selfloops(const Graph& g);

// ---------------------------------------------------------------------------
// Hop-distance machinery
// ---------------------------------------------------------------------------

/// Shortest-path edge count by BFS; kInfiniteHops when unreachable.
int hop_distance(const Graph& g, int u, int v);

/// BFS distances from src to every vertex (kInfiniteHops when unreachable).
std::vector<int> hop_distances_from(const Graph& g, int src);

/// Union of vertices at hop distance <= d from some member of v0.
VertexSet d_hop_neighborhood(const Graph& g, const VertexSet& v0, int d);

/// Subgraph induced by v0 plus the map from new ids back to original ids.
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const VertexSet& v0);

/// Laplacian of the subgraph induced by the d-hop neighborhood of v0,
/// embedded at the original indices and zero elsewhere.
Matrix extended_laplacian(const Graph& g, const VertexSet& v0, int d);

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class GraphKind { Path, Cycle, DirectedCycle, Lattice, ErdosRenyi, RandomConnected };

struct GraphParams {
    GraphKind kind = GraphKind::Path;
    int n = 0;             // path / cycle / directed_cycle / random kinds
    int rows = 0, cols = 0;  // lattice
    double p = 0.0;        // edge probability for random kinds
};

GraphKind parse_graph_kind(const std::string& name);
std::string graph_kind_name(GraphKind kind);

/// Deterministic for deterministic kinds; seed-reproducible for random
/// kinds. random_connected resamples Erdos-Renyi draws until connected.
Graph make_graph(const GraphParams& params, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// File I/O
// ---------------------------------------------------------------------------

/// Whitespace edge-list text with a header line "n <count> directed <0|1>"
/// followed by one "u v [w]" line per edge.
std::string write_edge_list(const Graph& g);
Graph read_edge_list(const std::string& text);

}  // namespace ssi
