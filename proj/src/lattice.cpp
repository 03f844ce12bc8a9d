#include "ssi/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace ssi {

std::vector<long long> spec_sort_key(const BankSpec& spec) {
    std::vector<long long> key;
    key.push_back(spec.k());
    for (int i = 0; i < spec.k(); ++i) {
        const VertexSet& v = spec.C.sets()[static_cast<std::size_t>(i)];
        key.push_back(v.size());
        for (int m : v.members()) key.push_back(m);
        key.push_back(spec.D[static_cast<std::size_t>(i)]);
    }
    return key;
}

bool spec_less(const BankSpec& a, const BankSpec& b) {
    return spec_sort_key(a) < spec_sort_key(b);
}

std::string spec_to_string(const BankSpec& spec) {
    std::ostringstream out;
    out << "C=(";
    for (int i = 0; i < spec.k(); ++i) {
        if (i) out << ",";
        out << "{";
        const auto& members = spec.C.sets()[static_cast<std::size_t>(i)].members();
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (j) out << ",";
            out << members[j];
        }
        out << "}";
    }
    out << ") D=(";
    for (int i = 0; i < spec.k(); ++i) {
        if (i) out << ",";
        out << spec.D[static_cast<std::size_t>(i)];
    }
    out << ")";
    return out.str();
}

std::vector<BankSpec> dedup_banks(const std::vector<BankSpec>& specs, const ShiftOperator& s,
                                  double tol) {
    std::vector<BankSpec> kept;
    for (const BankSpec& candidate : specs) {
        bool merged = false;
        for (BankSpec& rep : kept) {
            if (is_subspace(candidate, rep, s, tol) && is_subspace(rep, candidate, s, tol)) {
                if (spec_less(candidate, rep)) rep = candidate;
                merged = true;
                break;
            }
        }
        if (!merged) kept.push_back(candidate);
    }
    std::sort(kept.begin(), kept.end(), spec_less);
    return kept;
}

std::vector<BankSpec> enumerate_banks(int n, int max_d, const EnumerationLimits& limits) {
    if (n < 1) throw ValidationError("enumerate_banks: n must be >= 1");
    if (max_d < 0 || max_d > n - 1) throw ValidationError("enumerate_banks: need 0 <= max_d <= n-1");
    if (n > 4 && !limits.override_guard)
        throw ValidationError("enumerate_banks: n > 4 requires an explicit guard override");
    const int max_set_size = limits.max_set_size < 0 ? n : limits.max_set_size;
    if (limits.max_k < 1) throw ValidationError("enumerate_banks: max_k must be >= 1");

    // Items: (subset, degree) pairs in deterministic (bitmask, degree) order.
    std::vector<std::pair<VertexSet, int>> items;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        if (static_cast<int>(members.size()) > max_set_size) continue;
        VertexSet set(members, n);
        for (int d = 0; d <= max_d; ++d) items.emplace_back(set, d);
    }

    // Specs: strictly increasing combinations of distinct items, k = 1..max_k.
    std::vector<BankSpec> specs;
    std::vector<int> chosen;
    auto emit = [&]() {
        std::vector<VertexSet> sets;
        DegreeTuple degrees;
        for (int idx : chosen) {
            sets.push_back(items[static_cast<std::size_t>(idx)].first);
            degrees.push_back(items[static_cast<std::size_t>(idx)].second);
        }
        specs.emplace_back(SupportTuple(std::move(sets), n), std::move(degrees));
    };
    auto recurse = [&](auto&& self, int start) -> void {
        if (!chosen.empty()) emit();
        if (static_cast<int>(chosen.size()) == limits.max_k) return;
        for (int idx = start; idx < static_cast<int>(items.size()); ++idx) {
            chosen.push_back(idx);
            self(self, idx + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return specs;
}

BankLattice build_lattice(const std::vector<BankSpec>& specs, const ShiftOperator& s, double tol,
                          bool adjoin_bottom) {
    BankLattice lattice;
    const int m = static_cast<int>(specs.size());
    for (const BankSpec& spec : specs)
        lattice.nodes_.push_back({spec, bank_dimension(spec, s, tol)});
    if (adjoin_bottom) {
        lattice.bottom_ = m;
        lattice.nodes_.push_back({std::nullopt, 0});
    }
    const int total = static_cast<int>(lattice.nodes_.size());

    lattice.contains_.assign(static_cast<std::size_t>(total),
                             std::vector<bool>(static_cast<std::size_t>(total), false));
    for (int i = 0; i < total; ++i) lattice.contains_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            if (is_subspace(specs[static_cast<std::size_t>(i)], specs[static_cast<std::size_t>(j)], s, tol))
                lattice.contains_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (lattice.contains_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                lattice.contains_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw ValidationError("build_lattice: duplicate spans, run dedup_banks first");
    if (adjoin_bottom)
        for (int j = 0; j < m; ++j)
            lattice.contains_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = true;

    // Hasse edges: strict containments with no strictly-between node.
    auto strictly = [&](int a, int b) {
        return a != b && lattice.contains_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };
    for (int a = 0; a < total; ++a) {
        for (int b = 0; b < total; ++b) {
            if (!strictly(a, b)) continue;
            bool maximal = true;
            for (int c = 0; c < total && maximal; ++c)
                if (c != a && c != b && strictly(a, c) && strictly(c, b)) maximal = false;
            if (maximal) lattice.edges_.emplace_back(a, b);
        }
    }
    return lattice;
}

namespace {

std::optional<int> unique_extremum(const BankLattice& lattice, const std::vector<int>& bounds,
                                   bool least) {
    for (int candidate : bounds) {
        bool extremal = true;
        for (int other : bounds) {
            const bool ok = least ? lattice.contains(candidate, other) : lattice.contains(other, candidate);
            if (!ok) {
                extremal = false;
                break;
            }
        }
        if (extremal) return candidate;
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> BankLattice::join(int a, int b) const {
    std::vector<int> uppers;
    for (int u = 0; u < static_cast<int>(nodes_.size()); ++u)
        if (contains(a, u) && contains(b, u)) uppers.push_back(u);
    if (uppers.empty()) return std::nullopt;
    return unique_extremum(*this, uppers, /*least=*/true);
}

std::optional<int> BankLattice::meet(int a, int b) const {
    std::vector<int> lowers;
    for (int l = 0; l < static_cast<int>(nodes_.size()); ++l)
        if (contains(l, a) && contains(l, b)) lowers.push_back(l);
    if (lowers.empty()) return std::nullopt;
    return unique_extremum(*this, lowers, /*least=*/false);
}

std::string BankLattice::to_dot() const {
    std::ostringstream out;
    out << "digraph bank_lattice {\n";
    out << "  rankdir=BT;\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        out << "  n" << i << " [label=\"";
        if (nodes_[i].spec)
            out << spec_to_string(*nodes_[i].spec);
        else
            out << "trivial";
        out << "\\ndim=" << nodes_[i].dimension << "\"];\n";
    }
    for (const auto& [child, parent] : edges_)
        out << "  n" << child << " -> n" << parent << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ssi
