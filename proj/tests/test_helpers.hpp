#pragma once

#include "ssi/filter_bank.hpp"
#include "ssi/graph.hpp"
#include "ssi/rng.hpp"
#include "ssi/spectral.hpp"

#include <vector>

namespace ssi::testing {

inline Graph make_path(int n) { return make_graph({GraphKind::Path, n, 0, 0, 0.0}); }

inline Graph make_lattice(int rows, int cols) {
    GraphParams params;
    params.kind = GraphKind::Lattice;
    params.rows = rows;
    params.cols = cols;
    return make_graph(params);
}

inline Graph make_random_connected(int n, double p, std::uint64_t seed) {
    GraphParams params;
    params.kind = GraphKind::RandomConnected;
    params.n = n;
    params.p = p;
    return make_graph(params, seed);
}

/// Laplacian plus a random diagonal ~ Uniform[0, 1e-3]; the standard way the
/// tests obtain shifts satisfying the genericity hypotheses.
inline ShiftOperator perturbed_laplacian_shift(const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    Matrix s = laplacian(g);
    for (int v = 0; v < g.n(); ++v) s(v, v) += rng.uniform(0.0, 1e-3);
    return build_shift(s, ShiftKind::Custom);
}

/// Retries diagonal perturbations until the genericity check passes.
inline ShiftOperator generic_perturbed_shift(const Graph& g, std::uint64_t seed,
                                             int max_attempts = 50) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ShiftOperator s = perturbed_laplacian_shift(g, seed + 1000003ULL * attempt);
        if (genericity_check(s).generic()) return s;
    }
    throw NumericalError("generic_perturbed_shift: no generic perturbation found");
}

inline VertexSet singleton(int v, int n) { return VertexSet({v}, n); }

inline BankSpec single_set_bank(const VertexSet& v, int degree) {
    return BankSpec(SupportTuple({v}, v.ambient_n()), {degree});
}

inline std::vector<VertexSet> all_nonempty_subsets(int n) {
    std::vector<VertexSet> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        subsets.emplace_back(std::move(members), n);
    }
    return subsets;
}

/// All support tuples with k <= max_k over the nonempty subsets of [0, n),
/// as multisets (i <= j) so every span and predicate case is covered once.
inline std::vector<SupportTuple> all_support_tuples(int n, int max_k) {
    const std::vector<VertexSet> subsets = all_nonempty_subsets(n);
    std::vector<SupportTuple> tuples;
    for (std::size_t i = 0; i < subsets.size(); ++i) tuples.push_back(SupportTuple({subsets[i]}, n));
    if (max_k >= 2)
        for (std::size_t i = 0; i < subsets.size(); ++i)
            for (std::size_t j = i; j < subsets.size(); ++j)
                tuples.push_back(SupportTuple({subsets[i], subsets[j]}, n));
    return tuples;
}

inline bool vertex_subset_of(const VertexSet& a, const VertexSet& b) {
    for (int v : a.members())
        if (!b.contains(v)) return false;
    return true;
}

inline BankSpec constant_degree_bank(const SupportTuple& c, int degree) {
    return BankSpec(c, DegreeTuple(static_cast<std::size_t>(c.k()), degree));
}

/// Rejection-samples an essential support tuple with k sets.
inline SupportTuple sample_essential_tuple(int n, int k, Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<VertexSet> sets;
        for (int i = 0; i < k; ++i) {
            std::vector<int> members;
            while (members.empty())
                for (int v = 0; v < n; ++v)
                    if (rng.bernoulli(0.4)) members.push_back(v);
            sets.emplace_back(std::move(members), n);
        }
        SupportTuple tuple(std::move(sets), n);
        if (is_essential(tuple)) return tuple;
    }
    throw NumericalError("sample_essential_tuple: rejection sampling failed");
}

}  // namespace ssi::testing
