#include "ssi/gnn.hpp"

#include "ssi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace ssi {

int LabelVector::num_classes() const {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

void LabelVector::validate(int n) const {
    if (static_cast<int>(labels.size()) != n)
        throw ValidationError("labels: need one class id per vertex");
    for (int l : labels)
        if (l < 0) throw ValidationError("labels: class ids must be non-negative");
    for (int v : mask)
        if (v < 0 || v >= n) throw ValidationError("labels: mask vertex out of range");
}

TypedGraph::TypedGraph(Graph g, std::vector<int> nt, std::vector<int> et)
    : graph(std::move(g)), node_types(std::move(nt)), edge_types(std::move(et)) {
    if (static_cast<int>(node_types.size()) != graph.n())
        throw ValidationError("typed graph: need one node type per vertex");
    if (edge_types.size() != graph.edges().size())
        throw ValidationError("typed graph: need one edge type per edge");
}

int TypedGraph::num_edge_types() const {
    std::set<int> types(edge_types.begin(), edge_types.end());
    return static_cast<int>(types.size());
}

// ---------------------------------------------------------------------------
// Homophily
// ---------------------------------------------------------------------------

namespace {

std::vector<int> exact_hop_neighbors(const Graph& g, int v, int hops) {
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(v)] = 0;
    queue.push_back(v);
    std::vector<int> ring;
    while (!queue.empty()) {
        const int w = queue.front();
        queue.pop_front();
        if (dist[static_cast<std::size_t>(w)] == hops) {
            ring.push_back(w);
            continue;
        }
        for (int u : g.neighbors(w))
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(w)] + 1;
                queue.push_back(u);
            }
    }
    return ring;
}

}  // namespace

HomophilyScore homophily_score(const Graph& g, const std::vector<int>& labels, int eta, int hops) {
    if (static_cast<int>(labels.size()) != g.n())
        throw ValidationError("homophily: need one label per vertex");
    if (hops != 1 && hops != 2) throw ValidationError("homophily: hops must be 1 or 2");
    if (std::find(labels.begin(), labels.end(), eta) == labels.end())
        throw ValidationError("homophily: class absent from the graph");

    double total = 0.0;
    int counted = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (labels[static_cast<std::size_t>(v)] != eta) continue;
        const std::vector<int> ring = exact_hop_neighbors(g, v, hops);
        if (ring.empty()) continue;
        int same = 0;
        for (int u : ring)
            if (labels[static_cast<std::size_t>(u)] == eta) ++same;
        total += static_cast<double>(same) / static_cast<double>(ring.size());
        ++counted;
    }
    HomophilyScore result;
    result.counted = counted;
    result.score = counted > 0 ? total / counted : std::numeric_limits<double>::quiet_NaN();
    return result;
}

// ---------------------------------------------------------------------------
// Support construction
// ---------------------------------------------------------------------------

SupportTuple kmeans(const FeatureMatrix& x, int k, std::uint64_t seed, int max_iter) {
    const int n = static_cast<int>(x.rows());
    if (k < 1 || k > n) throw ValidationError("kmeans: need 1 <= k <= n");
    Rng rng(seed);

    // k distinct rows as initial centroids.
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
    for (int i = 0; i < k; ++i)
        std::swap(pool[static_cast<std::size_t>(i)],
                  pool[static_cast<std::size_t>(rng.uniform_int(i, n - 1))]);
    Matrix centroids(k, x.cols());
    for (int c = 0; c < k; ++c) centroids.row(c) = x.row(pool[static_cast<std::size_t>(c)]);

    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    double prev_objective = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < max_iter; ++iter) {
        // Assignment (ties to the lowest cluster index).
        bool changed = false;
        for (int v = 0; v < n; ++v) {
            int best = 0;
            double best_d = (x.row(v) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (x.row(v) - centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[static_cast<std::size_t>(v)] != best) changed = true;
            assign[static_cast<std::size_t>(v)] = best;
        }

        // Re-seed empty clusters from the farthest point.
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int v = 0; v < n; ++v) ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(v)])];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int v = 0; v < n; ++v) {
                if (counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(v)])] <= 1) continue;
                const double d = (x.row(v) - centroids.row(assign[static_cast<std::size_t>(v)])).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far = v;
                }
            }
            if (far < 0) throw NumericalError("kmeans: cannot re-seed empty cluster");
            --counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(far)])];
            assign[static_cast<std::size_t>(far)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            centroids.row(c) = x.row(far);
            changed = true;
        }

        // Centroid update.
        Matrix sums = Matrix::Zero(k, x.cols());
        for (int v = 0; v < n; ++v) sums.row(assign[static_cast<std::size_t>(v)]) += x.row(v);
        for (int c = 0; c < k; ++c) centroids.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];

        double objective = 0.0;
        for (int v = 0; v < n; ++v)
            objective += (x.row(v) - centroids.row(assign[static_cast<std::size_t>(v)])).squaredNorm();
        if (objective > prev_objective * (1.0 + 1e-12) + 1e-12)
            throw NumericalError("kmeans: objective increased");
        prev_objective = objective;
        if (!changed) break;
    }

    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v) clusters[static_cast<std::size_t>(assign[static_cast<std::size_t>(v)])].push_back(v);
    std::vector<VertexSet> sets;
    for (auto& members : clusters) sets.emplace_back(std::move(members), n);
    return SupportTuple(std::move(sets), n);
}

SupportTuple heterogeneous_support(const TypedGraph& tg) {
    if (tg.graph.edges().empty()) throw ValidationError("heterogeneous support: need at least one edge");
    std::set<int> types(tg.edge_types.begin(), tg.edge_types.end());
    std::vector<VertexSet> sets;
    for (int type : types) {
        std::vector<int> members;
        for (std::size_t e = 0; e < tg.edge_types.size(); ++e) {
            if (tg.edge_types[e] != type) continue;
            members.push_back(tg.graph.edges()[e].u);
            members.push_back(tg.graph.edges()[e].v);
        }
        sets.emplace_back(std::move(members), tg.graph.n());
    }
    return SupportTuple(std::move(sets), tg.graph.n());
}

// ---------------------------------------------------------------------------
// SemiGCN layers
// ---------------------------------------------------------------------------

SemiGcnLayer::SemiGcnLayer(SupportTuple c, DegreeTuple d, std::vector<Matrix> w, Activation act)
    : C(std::move(c)), D(std::move(d)), weights(std::move(w)), activation(act) {
    validate();
}

SemiGcnLayer SemiGcnLayer::unshared(SupportTuple c, DegreeTuple d,
                                    std::vector<std::vector<Matrix>> w, Activation act) {
    SemiGcnLayer layer(std::move(c), std::move(d), {}, act);
    layer.shared = false;
    layer.subset_weights = std::move(w);
    layer.validate();
    return layer;
}

int SemiGcnLayer::max_degree() const {
    return *std::max_element(D.begin(), D.end());
}

bool SemiGcnLayer::initialized() const {
    return shared ? !weights.empty() : !subset_weights.empty();
}

int SemiGcnLayer::in_features() const {
    if (!initialized()) throw ValidationError("semigcn layer: weights not initialized");
    return static_cast<int>(shared ? weights.front().rows() : subset_weights.front().front().rows());
}

int SemiGcnLayer::out_features() const {
    if (!initialized()) throw ValidationError("semigcn layer: weights not initialized");
    return static_cast<int>(shared ? weights.front().cols() : subset_weights.front().front().cols());
}

void SemiGcnLayer::validate() const {
    if (static_cast<int>(D.size()) != C.k())
        throw ValidationError("semigcn layer: C and D must have equal length");
    for (int d : D)
        if (d < 0) throw ValidationError("semigcn layer: degrees must be >= 0");
    if (!initialized()) return;
    if (shared) {
        if (static_cast<int>(weights.size()) != max_degree() + 1)
            throw ValidationError("semigcn layer: need one shared weight per power 0..max(D)");
        for (const Matrix& w : weights)
            if (w.rows() != weights.front().rows() || w.cols() != weights.front().cols())
                throw ValidationError("semigcn layer: inconsistent weight shapes");
    } else {
        if (static_cast<int>(subset_weights.size()) != C.k())
            throw ValidationError("semigcn layer: need one weight list per subset");
        for (int j = 0; j < C.k(); ++j) {
            if (static_cast<int>(subset_weights[static_cast<std::size_t>(j)].size()) !=
                D[static_cast<std::size_t>(j)] + 1)
                throw ValidationError("semigcn layer: need weights for powers 0..d_j");
            for (const Matrix& w : subset_weights[static_cast<std::size_t>(j)])
                if (w.rows() != in_features() || w.cols() != out_features())
                    throw ValidationError("semigcn layer: inconsistent weight shapes");
        }
    }
}

namespace {

Matrix apply_activation(const Matrix& z, Activation act) {
    switch (act) {
        case Activation::Relu: return z.cwiseMax(0.0);
        case Activation::Identity: return z;
        case Activation::SoftmaxRows: {
            Matrix out(z.rows(), z.cols());
            for (Eigen::Index r = 0; r < z.rows(); ++r) {
                const double row_max = z.row(r).maxCoeff();
                Eigen::ArrayXd e = (z.row(r).array() - row_max).exp();
                out.row(r) = (e / e.sum()).matrix();
            }
            return out;
        }
    }
    throw ValidationError("unknown activation");
}

// Pre-activation  Z = sum_j sum_{i<=d_j} P|_{V_j} At^i H W(j, i).
Matrix layer_preactivation(const Matrix& h, const Matrix& a_norm, const SemiGcnLayer& layer,
                           std::vector<Matrix>* propagated_out) {
    layer.validate();
    if (h.cols() != layer.in_features())
        throw ValidationError("semigcn layer: feature dimension mismatch");
    if (h.rows() != a_norm.rows())
        throw ValidationError("semigcn layer: vertex count mismatch");

    const int max_d = layer.max_degree();
    std::vector<Matrix> propagated;  // At^i H for i = 0..max_d
    propagated.reserve(static_cast<std::size_t>(max_d) + 1);
    propagated.push_back(h);
    for (int i = 1; i <= max_d; ++i) propagated.push_back(a_norm * propagated.back());

    Matrix z = Matrix::Zero(h.rows(), layer.out_features());
    for (int j = 0; j < layer.C.k(); ++j) {
        Matrix acc = Matrix::Zero(h.rows(), layer.out_features());
        for (int i = 0; i <= layer.D[static_cast<std::size_t>(j)]; ++i) {
            const Matrix& w = layer.shared ? layer.weights[static_cast<std::size_t>(i)]
                                           : layer.subset_weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            acc += propagated[static_cast<std::size_t>(i)] * w;
        }
        for (int v : layer.C.sets()[static_cast<std::size_t>(j)].members()) z.row(v) += acc.row(v);
    }
    if (propagated_out) *propagated_out = std::move(propagated);
    return z;
}

}  // namespace

Matrix semigcn_layer(const Matrix& h, const Graph& g, const SemiGcnLayer& layer) {
    if (static_cast<int>(h.rows()) != g.n())
        throw ValidationError("semigcn layer: H must have one row per vertex");
    const Matrix a_norm = normalized_adjacency_selfloops(g);
    return apply_activation(layer_preactivation(h, a_norm, layer, nullptr), layer.activation);
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

namespace {

struct ForwardTrace {
    std::vector<Matrix> inputs;       // H per layer
    std::vector<Matrix> preact;       // Z per layer
    std::vector<std::vector<Matrix>> propagated;  // At^i H per layer
    Matrix probabilities;             // softmax of the last Z
};

std::vector<int> effective_mask(const LabelVector& y, int n) {
    if (!y.mask.empty()) return y.mask;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    return all;
}

ForwardTrace forward(const Matrix& a_norm, const FeatureMatrix& x,
                     const std::vector<SemiGcnLayer>& layers) {
    ForwardTrace trace;
    Matrix h = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        trace.inputs.push_back(h);
        std::vector<Matrix> propagated;
        Matrix z = layer_preactivation(h, a_norm, layers[l], &propagated);
        trace.propagated.push_back(std::move(propagated));
        if (l + 1 < layers.size())
            h = apply_activation(z, layers[l].activation);
        else
            trace.probabilities = apply_activation(z, Activation::SoftmaxRows);
        trace.preact.push_back(std::move(z));
    }
    return trace;
}

double masked_cross_entropy(const Matrix& probabilities, const LabelVector& y,
                            const std::vector<int>& mask) {
    double loss = 0.0;
    for (int v : mask)
        loss -= std::log(std::max(probabilities(v, y.labels[static_cast<std::size_t>(v)]), 1e-300));
    return loss / static_cast<double>(mask.size());
}

// Gradients with respect to every weight matrix, canonical order: shared
// layers list dL/dW_i for i = 0..max(D); unshared layers list subsets
// j-major, powers inner.
std::vector<std::vector<Matrix>> backward(const Matrix& a_norm, const LabelVector& y,
                                          const std::vector<SemiGcnLayer>& layers,
                                          const ForwardTrace& trace) {
    const int n = static_cast<int>(a_norm.rows());
    const std::vector<int> mask = effective_mask(y, n);

    Matrix g_z = Matrix::Zero(trace.probabilities.rows(), trace.probabilities.cols());
    for (int v : mask) {
        g_z.row(v) = trace.probabilities.row(v);
        g_z(v, y.labels[static_cast<std::size_t>(v)]) -= 1.0;
    }
    g_z /= static_cast<double>(mask.size());

    std::vector<std::vector<Matrix>> grads(layers.size());
    for (int l = static_cast<int>(layers.size()) - 1; l >= 0; --l) {
        const SemiGcnLayer& layer = layers[static_cast<std::size_t>(l)];
        const auto& propagated = trace.propagated[static_cast<std::size_t>(l)];
        const int max_d = layer.max_degree();

        // Mask-summed upstream gradient per power: M_i = sum_{j: d_j >= i} P|_j G.
        std::vector<Matrix> masked(static_cast<std::size_t>(max_d) + 1,
                                   Matrix::Zero(g_z.rows(), g_z.cols()));
        for (int j = 0; j < layer.C.k(); ++j)
            for (int v : layer.C.sets()[static_cast<std::size_t>(j)].members())
                for (int i = 0; i <= layer.D[static_cast<std::size_t>(j)]; ++i)
                    masked[static_cast<std::size_t>(i)].row(v) += g_z.row(v);

        if (layer.shared) {
            std::vector<Matrix>& out = grads[static_cast<std::size_t>(l)];
            out.resize(static_cast<std::size_t>(max_d) + 1);
            for (int i = 0; i <= max_d; ++i)
                out[static_cast<std::size_t>(i)] =
                    propagated[static_cast<std::size_t>(i)].transpose() * masked[static_cast<std::size_t>(i)];
        } else {
            for (int j = 0; j < layer.C.k(); ++j) {
                for (int i = 0; i <= layer.D[static_cast<std::size_t>(j)]; ++i) {
                    Matrix masked_j = Matrix::Zero(g_z.rows(), g_z.cols());
                    for (int v : layer.C.sets()[static_cast<std::size_t>(j)].members())
                        masked_j.row(v) = g_z.row(v);
                    grads[static_cast<std::size_t>(l)].push_back(
                        propagated[static_cast<std::size_t>(i)].transpose() * masked_j);
                }
            }
        }

        if (l == 0) break;

        // dL/dH for the previous layer: sum over terms of At^i P|_j G W^T
        // (At is symmetric), then through the previous activation.
        Matrix g_h = Matrix::Zero(n, layer.in_features());
        if (layer.shared) {
            for (int i = 0; i <= max_d; ++i) {
                Matrix lifted = masked[static_cast<std::size_t>(i)];
                for (int hop = 0; hop < i; ++hop) lifted = a_norm * lifted;
                g_h += lifted * layer.weights[static_cast<std::size_t>(i)].transpose();
            }
        } else {
            for (int j = 0; j < layer.C.k(); ++j)
                for (int i = 0; i <= layer.D[static_cast<std::size_t>(j)]; ++i) {
                    Matrix masked_j = Matrix::Zero(g_z.rows(), g_z.cols());
                    for (int v : layer.C.sets()[static_cast<std::size_t>(j)].members())
                        masked_j.row(v) = g_z.row(v);
                    for (int hop = 0; hop < i; ++hop) masked_j = a_norm * masked_j;
                    g_h += masked_j *
                           layer.subset_weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].transpose();
                }
        }

        const SemiGcnLayer& prev = layers[static_cast<std::size_t>(l - 1)];
        const Matrix& z_prev = trace.preact[static_cast<std::size_t>(l - 1)];
        switch (prev.activation) {
            case Activation::Relu:
                g_z = (z_prev.array() > 0.0).cast<double>().matrix().cwiseProduct(g_h);
                break;
            case Activation::Identity:
                g_z = g_h;
                break;
            case Activation::SoftmaxRows:
                throw ValidationError("softmax is only supported as the final activation");
        }
    }
    return grads;
}

void init_layer_weights(SemiGcnLayer& layer, int in_dim, int out_dim, Rng& rng) {
    const double scale = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    auto draw = [&]() {
        Matrix w(in_dim, out_dim);
        for (int r = 0; r < in_dim; ++r)
            for (int c = 0; c < out_dim; ++c) w(r, c) = rng.uniform(-scale, scale);
        return w;
    };
    if (layer.shared) {
        layer.weights.clear();
        for (int i = 0; i <= layer.max_degree(); ++i) layer.weights.push_back(draw());
    } else {
        layer.subset_weights.assign(static_cast<std::size_t>(layer.C.k()), {});
        for (int j = 0; j < layer.C.k(); ++j)
            for (int i = 0; i <= layer.D[static_cast<std::size_t>(j)]; ++i)
                layer.subset_weights[static_cast<std::size_t>(j)].push_back(draw());
    }
}

}  // namespace

double semigcn_loss(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                    const std::vector<SemiGcnLayer>& layers) {
    y.validate(g.n());
    const Matrix a_norm = normalized_adjacency_selfloops(g);
    const ForwardTrace trace = forward(a_norm, x, layers);
    return masked_cross_entropy(trace.probabilities, y, effective_mask(y, g.n()));
}

std::vector<std::vector<Matrix>> semigcn_loss_gradients(const Graph& g, const FeatureMatrix& x,
                                                        const LabelVector& y,
                                                        const std::vector<SemiGcnLayer>& layers) {
    y.validate(g.n());
    const Matrix a_norm = normalized_adjacency_selfloops(g);
    const ForwardTrace trace = forward(a_norm, x, layers);
    return backward(a_norm, y, layers, trace);
}

TrainReport train_node_classifier(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                                  std::vector<SemiGcnLayer> layers, int epochs, double lr,
                                  std::uint64_t seed) {
    y.validate(g.n());
    if (layers.empty() || layers.size() > 2)
        throw ValidationError("train: one or two layers supported");
    if (lr < 0.0) throw ValidationError("train: learning rate must be >= 0");
    if (static_cast<int>(x.rows()) != g.n())
        throw ValidationError("train: features must have one row per vertex");

    // Initialize any layer provided without weights.
    Rng rng(Rng::derive(seed, {0x5e}));
    int in_dim = static_cast<int>(x.cols());
    const int num_classes = y.num_classes();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        SemiGcnLayer& layer = layers[l];
        const bool empty = !layer.initialized();
        const int out_dim = (l + 1 == layers.size()) ? num_classes
                                                     : (empty ? 16 : layer.out_features());
        if (empty) init_layer_weights(layer, in_dim, out_dim, rng);
        layer.validate();
        if (layer.in_features() != in_dim)
            throw ValidationError("train: layer input dimension mismatch");
        in_dim = layer.out_features();
    }
    if (in_dim != num_classes)
        throw ValidationError("train: final layer must emit one logit per class");

    const Matrix a_norm = normalized_adjacency_selfloops(g);
    const std::vector<int> mask = effective_mask(y, g.n());

    TrainReport report;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        const ForwardTrace trace = forward(a_norm, x, layers);
        report.loss_curve.push_back(masked_cross_entropy(trace.probabilities, y, mask));
        int correct = 0;
        for (int v : mask) {
            Eigen::Index arg;
            trace.probabilities.row(v).maxCoeff(&arg);
            if (static_cast<int>(arg) == y.labels[static_cast<std::size_t>(v)]) ++correct;
        }
        report.accuracy_curve.push_back(static_cast<double>(correct) /
                                        static_cast<double>(mask.size()));

        const auto grads = backward(a_norm, y, layers, trace);
        for (std::size_t l = 0; l < layers.size(); ++l) {
            if (layers[l].shared) {
                for (std::size_t i = 0; i < layers[l].weights.size(); ++i)
                    layers[l].weights[i] -= lr * grads[l][i];
            } else {
                std::size_t c = 0;
                for (int j = 0; j < layers[l].C.k(); ++j)
                    for (int i = 0; i <= layers[l].D[static_cast<std::size_t>(j)]; ++i)
                        layers[l].subset_weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -=
                            lr * grads[l][c++];
            }
        }
    }
    report.layers = std::move(layers);
    return report;
}

}  // namespace ssi
