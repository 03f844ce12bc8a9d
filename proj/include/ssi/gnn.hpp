#pragma once

#include "ssi/filter_bank.hpp"
#include "ssi/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ssi {

/// Node features, row v = feature vector of vertex v.
using FeatureMatrix = Matrix;

struct LabelVector {
    std::vector<int> labels;  // class id per vertex
    std::vector<int> mask;    // observed vertices (empty: all observed)

    int num_classes() const;
    void validate(int n) const;
};

/// Graph with finite node- and edge-type alphabets.
struct TypedGraph {
    Graph graph;
    std::vector<int> node_types;  // per vertex
    std::vector<int> edge_types;  // per edge, aligned with graph.edges()

    TypedGraph(Graph g, std::vector<int> nt, std::vector<int> et);

    int num_edge_types() const;
};

// ---------------------------------------------------------------------------
// Homophily
// ---------------------------------------------------------------------------

struct HomophilyScore {
    double score = 0.0;  // NaN when no class member has any h-hop neighbor
    int counted = 0;     // vertices included in the average
};

/// Mean fraction of same-label exactly-h-hop neighbors over the vertices of
/// class eta (h in {1, 2}); vertices with no h-hop neighbor are skipped.
HomophilyScore homophily_score(const Graph& g, const std::vector<int>& labels, int eta, int hops);

// ---------------------------------------------------------------------------
// Support construction for SemiGCN
// ---------------------------------------------------------------------------

/// Lloyd k-means on feature rows with seeded distinct-row initialization.
/// Returns the clusters as a support tuple (empty clusters are re-seeded
/// from the farthest point, so the output is a partition).
SupportTuple kmeans(const FeatureMatrix& x, int k, std::uint64_t seed, int max_iter = 100);

/// One subset per edge type: all endpoints of edges of that type. Vertices
/// may appear in several subsets; isolated vertices in none.
SupportTuple heterogeneous_support(const TypedGraph& tg);

// ---------------------------------------------------------------------------
// SemiGCN layers
// ---------------------------------------------------------------------------

enum class Activation { Relu, Identity, SoftmaxRows };

/// Propagation rule  H' = act( sum_j sum_{i<=d_j} P|_{V_j} At^i H W_i )
/// with At the normalized adjacency with self-loops. The degree-indexed
/// weights W_i are shared across subsets; an unshared per-subset variant is
/// available for ablation. Weights may be left empty and initialized by the
/// trainer.
struct SemiGcnLayer {
    SupportTuple C;
    DegreeTuple D;
    std::vector<Matrix> weights;  // shared: W_i for i = 0..max(D)
    std::vector<std::vector<Matrix>> subset_weights;  // unshared variant, [j][i]
    Activation activation = Activation::Relu;
    bool shared = true;

    SemiGcnLayer(SupportTuple c, DegreeTuple d, std::vector<Matrix> w = {},
                 Activation act = Activation::Relu);
    static SemiGcnLayer unshared(SupportTuple c, DegreeTuple d,
                                 std::vector<std::vector<Matrix>> w,
                                 Activation act = Activation::Relu);

    int max_degree() const;
    bool initialized() const;
    int in_features() const;
    int out_features() const;
    void validate() const;
};

Matrix semigcn_layer(const Matrix& h, const Graph& g, const SemiGcnLayer& layer);

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct TrainReport {
    std::vector<SemiGcnLayer> layers;  // trained weights
    std::vector<double> loss_curve;
    std::vector<double> accuracy_curve;  // masked train accuracy per epoch
};

/// Full-batch gradient descent on the masked cross-entropy of a 1- or
/// 2-layer SemiGCN (final activation row-softmax). Gradients are analytic;
/// the run is a pure function of the seed.
TrainReport train_node_classifier(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                                  std::vector<SemiGcnLayer> layers, int epochs, double lr,
                                  std::uint64_t seed);

/// Masked cross-entropy loss and gradients for a given layer stack; exposed
/// for finite-difference verification.
double semigcn_loss(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                    const std::vector<SemiGcnLayer>& layers);
std::vector<std::vector<Matrix>> semigcn_loss_gradients(const Graph& g, const FeatureMatrix& x,
                                                        const LabelVector& y,
                                                        const std::vector<SemiGcnLayer>& layers);

}  // namespace ssi
