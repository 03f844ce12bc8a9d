#pragma once

#include "ssi/filter_bank.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ssi {

/// Total order used to pick deduplication representatives and to fix node
/// ordering in exports: compare (k, then the flattened (members, degree)
/// sequence) lexicographically.
std::vector<long long> spec_sort_key(const BankSpec& spec);
bool spec_less(const BankSpec& a, const BankSpec& b);
std::string spec_to_string(const BankSpec& spec);

/// Keep one representative per distinct span (mutual containment means equal
/// spans); the representative is the spec_less-smallest spec of its class.
std::vector<BankSpec> dedup_banks(const std::vector<BankSpec>& specs, const ShiftOperator& s,
                                  double tol = -1.0);

struct EnumerationLimits {
    int max_k = 2;
    int max_set_size = -1;  // -1: up to n
    bool override_guard = false;
};

/// All bank specs over nonempty subsets of [0, n) with 1 <= k <= max_k and
/// degrees <= max_d, in canonical order. Duplicate spans are retained
/// (dedup_banks is a separate pass). Guarded to n <= 4 unless overridden.
std::vector<BankSpec> enumerate_banks(int n, int max_d, const EnumerationLimits& limits = {});

/// The containment DAG over a family of banks: nodes carry the spec and its
/// dimension; edges are the maximal strict containments (transitive
/// reduction). A synthetic zero-dimensional bottom node can be adjoined so
/// meets exist, matching the trivial bank.
class BankLattice {
public:
    struct Node {
        std::optional<BankSpec> spec;  // nullopt: the adjoined trivial bottom
        int dimension = 0;
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    /// Hasse edges (child, parent): child is a maximal proper subspace.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int bottom() const { return bottom_; }

    /// Reflexive containment: span(a) inside span(b).
    bool contains(int a, int b) const { return contains_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

    /// Least upper bound / greatest lower bound within the listed nodes;
    /// nullopt when no unique bound exists.
    std::optional<int> join(int a, int b) const;
    std::optional<int> meet(int a, int b) const;

    std::string to_dot() const;

    friend BankLattice build_lattice(const std::vector<BankSpec>& specs, const ShiftOperator& s,
                                     double tol, bool adjoin_bottom);

private:
    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<bool>> contains_;
    int bottom_ = -1;
};

/// Builds the lattice from deduplicated specs (throws on duplicate spans).
BankLattice build_lattice(const std::vector<BankSpec>& specs, const ShiftOperator& s,
                          double tol = -1.0, bool adjoin_bottom = true);

}  // namespace ssi
