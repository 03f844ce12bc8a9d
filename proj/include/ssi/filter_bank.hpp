#pragma once

#include "ssi/common.hpp"
#include "ssi/graph.hpp"
#include "ssi/spectral.hpp"

#include <cstdint>
#include <vector>

namespace ssi {

/// Ordered tuple (V_1, ..., V_k) of nonempty vertex subsets. Sets may
/// overlap; overlap matters for essentiality and refinement.
class SupportTuple {
public:
    SupportTuple(std::vector<VertexSet> sets, int ambient_n);

    const std::vector<VertexSet>& sets() const { return sets_; }
    int ambient_n() const { return ambient_n_; }
    int k() const { return static_cast<int>(sets_.size()); }

    VertexSet set_union() const;

    bool operator==(const SupportTuple& other) const {
        return ambient_n_ == other.ambient_n_ && sets_ == other.sets_;
    }

private:
    std::vector<VertexSet> sets_;
    int ambient_n_ = 0;
};

using DegreeTuple = std::vector<int>;

/// A filter bank: the span of filters P|_{V_j} . Q_{d_j}(S) for the paired
/// support tuple C and degree tuple D.
struct BankSpec {
    SupportTuple C;
    DegreeTuple D;

    BankSpec(SupportTuple c, DegreeTuple d);

    int ambient_n() const { return C.ambient_n(); }
    int k() const { return C.k(); }
    /// sum_i (d_i + 1): the number of spanning candidates and an upper bound
    /// on the bank dimension.
    int candidate_count() const;
};

/// A concrete member of a bank: coefficients a[i][j] for the spanning
/// candidates P|_{V_i} S^j, 0 <= j <= d_i.
struct SsiFilter {
    BankSpec spec;
    std::vector<std::vector<double>> coeffs;

    SsiFilter(BankSpec s, std::vector<std::vector<double>> a);

    static SsiFilter zero(const BankSpec& spec);
};

/// The spanning candidates of a bank in deterministic (set index, power)
/// order, with provenance tags.
struct SpanningSet {
    std::vector<Matrix> candidates;
    std::vector<std::pair<int, int>> provenance;  // (set index i, power j)
};

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

/// Diagonal 0/1 embedding projection P|_{V0}: keeps coordinates in V0,
/// zeroes the rest. V0 may be empty (gives the zero matrix).
Matrix projection_embed(const VertexSet& v0);

/// Row-selection projection P_{V0}: |V0| x n, row r selects member r.
Matrix projection_select(const VertexSet& v0);

// ---------------------------------------------------------------------------
// Bank algebra
// ---------------------------------------------------------------------------

Matrix materialize(const SsiFilter& filter, const ShiftOperator& s);

SpanningSet spanning_set(const BankSpec& spec, const ShiftOperator& s);

/// Numerical rank of the vectorized spanning set: singular values above
/// tol * sigma_max count. tol < 0 selects the default 1e-8. Columns are
/// normalized to unit Frobenius norm first (this does not change the span).
int bank_dimension(const BankSpec& spec, const ShiftOperator& s, double tol = -1.0);

/// True iff every V_i has a member outside the union of the other sets.
bool is_essential(const SupportTuple& c);

struct RefinementReport {
    bool union_equal = false;       // union of C' equals union of C
    bool each_contained = false;    // every V'_j inside some V_i
    bool disjoint_in_parent = false;  // V'-sets sharing a parent V_i are disjoint

    bool refinement() const { return union_equal && each_contained && disjoint_in_parent; }
};

/// Checks the three refinement clauses independently.
RefinementReport refinement_check(const SupportTuple& c_prime, const SupportTuple& c);

/// True iff c_prime is a refinement of c.
bool is_refinement(const SupportTuple& c_prime, const SupportTuple& c);

/// True iff span(bank a) is contained in span(bank b), decided by comparing
/// rank(span b) with rank(span a  union  span b) at the same tolerance.
bool is_subspace(const BankSpec& a, const BankSpec& b, const ShiftOperator& s, double tol = -1.0);

/// The two sides of the locality identity for a single-support bank
/// (V0, d) over S = L_G: P|_{V0} Q_d(L_G) and P|_{V0} Q_d(L_{V0,d}) for one
/// random degree-d polynomial Q_d with seeded coefficients. The pair agrees
/// within 1e-9 Frobenius.
std::pair<Matrix, Matrix> locality_equivalent(const Graph& g, const VertexSet& v0, int d,
                                              std::uint64_t seed);

/// Evaluate sum_j coeffs[j] S^j columnwise (helper shared with baselines).
Matrix polynomial_in_matrix(const Matrix& s, const std::vector<double>& coeffs);

}  // namespace ssi
