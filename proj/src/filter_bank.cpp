#include "ssi/filter_bank.hpp"

#include "ssi/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace ssi {

SupportTuple::SupportTuple(std::vector<VertexSet> sets, int ambient_n)
    : sets_(std::move(sets)), ambient_n_(ambient_n) {
    if (sets_.empty()) throw ValidationError("support tuple: need at least one set");
    for (const VertexSet& v : sets_) {
        if (v.empty()) throw ValidationError("support tuple: empty member set");
        if (v.ambient_n() != ambient_n_)
            throw ValidationError("support tuple: ambient size mismatch");
    }
}

VertexSet SupportTuple::set_union() const {
    std::vector<int> all;
    for (const VertexSet& v : sets_)
        all.insert(all.end(), v.members().begin(), v.members().end());
    return VertexSet(std::move(all), ambient_n_);
}

BankSpec::BankSpec(SupportTuple c, DegreeTuple d) : C(std::move(c)), D(std::move(d)) {
    if (static_cast<int>(D.size()) != C.k())
        throw ValidationError("bank spec: C and D must have equal length");
    for (int deg : D) {
        if (deg < 0) throw ValidationError("bank spec: degrees must be non-negative");
        if (deg > C.ambient_n() - 1)
            throw ValidationError("bank spec: degree exceeds n-1");
    }
}

int BankSpec::candidate_count() const {
    int total = 0;
    for (int d : D) total += d + 1;
    return total;
}

SsiFilter::SsiFilter(BankSpec s, std::vector<std::vector<double>> a)
    : spec(std::move(s)), coeffs(std::move(a)) {
    if (static_cast<int>(coeffs.size()) != spec.k())
        throw ValidationError("ssi filter: coefficient rows must match k");
    for (int i = 0; i < spec.k(); ++i)
        if (static_cast<int>(coeffs[static_cast<std::size_t>(i)].size()) != spec.D[static_cast<std::size_t>(i)] + 1)
            throw ValidationError("ssi filter: coefficient row length must be d_i + 1");
}

SsiFilter SsiFilter::zero(const BankSpec& spec) {
    std::vector<std::vector<double>> a;
    for (int d : spec.D) a.emplace_back(static_cast<std::size_t>(d + 1), 0.0);
    return SsiFilter(spec, std::move(a));
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

Matrix projection_embed(const VertexSet& v0) {
    Matrix p = Matrix::Zero(v0.ambient_n(), v0.ambient_n());
    for (int v : v0.members()) p(v, v) = 1.0;
    return p;
}

Matrix projection_select(const VertexSet& v0) {
    if (v0.empty()) throw ValidationError("projection_select: vertex set must be nonempty");
    Matrix p = Matrix::Zero(v0.size(), v0.ambient_n());
    for (int r = 0; r < v0.size(); ++r) p(r, v0.members()[static_cast<std::size_t>(r)]) = 1.0;
    return p;
}

// ---------------------------------------------------------------------------
// Bank algebra
// ---------------------------------------------------------------------------

namespace {

std::vector<Matrix> matrix_powers(const Matrix& s, int max_power) {
    std::vector<Matrix> powers;
    powers.reserve(static_cast<std::size_t>(max_power) + 1);
    powers.push_back(Matrix::Identity(s.rows(), s.cols()));
    for (int j = 1; j <= max_power; ++j) powers.push_back(powers.back() * s);
    return powers;
}

void mask_rows(Matrix& m, const VertexSet& keep) {
    Eigen::Index r = 0;
    auto it = keep.members().begin();
    for (r = 0; r < m.rows(); ++r) {
        if (it != keep.members().end() && *it == static_cast<int>(r))
            ++it;
        else
            m.row(r).setZero();
    }
}

// Vectorized (column-major) spanning candidates as columns, each normalized
// to unit length. Normalizing columns changes neither the span nor the
// subspace relations but keeps the singular value spread independent of the
// size of S^j entries.
Matrix span_columns(const SpanningSet& span) {
    const Eigen::Index n2 = span.candidates.empty() ? 0 : span.candidates.front().size();
    Matrix cols(n2, static_cast<Eigen::Index>(span.candidates.size()));
    for (std::size_t c = 0; c < span.candidates.size(); ++c) {
        Eigen::Map<const Vector> v(span.candidates[c].data(), n2);
        const double norm = v.norm();
        cols.col(static_cast<Eigen::Index>(c)) = norm > 0 ? (v / norm).eval() : v;
    }
    return cols;
}

int numerical_rank(const Matrix& columns, double tol) {
    if (columns.cols() == 0 || columns.rows() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(columns);
    const Vector& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0) return 0;
    const double threshold = (tol >= 0 ? tol : 1e-8) * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return rank;
}

}  // namespace

Matrix materialize(const SsiFilter& filter, const ShiftOperator& s) {
    if (filter.spec.ambient_n() != s.n())
        throw ValidationError("materialize: spec and shift dimension mismatch");
    const int max_power = *std::max_element(filter.spec.D.begin(), filter.spec.D.end());
    const std::vector<Matrix> powers = matrix_powers(s.matrix(), max_power);

    Matrix out = Matrix::Zero(s.n(), s.n());
    for (int i = 0; i < filter.spec.k(); ++i) {
        Matrix poly = Matrix::Zero(s.n(), s.n());
        for (int j = 0; j <= filter.spec.D[static_cast<std::size_t>(i)]; ++j)
            poly += filter.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                    powers[static_cast<std::size_t>(j)];
        mask_rows(poly, filter.spec.C.sets()[static_cast<std::size_t>(i)]);
        out += poly;
    }
    return out;
}

SpanningSet spanning_set(const BankSpec& spec, const ShiftOperator& s) {
    if (spec.ambient_n() != s.n())
        throw ValidationError("spanning_set: spec and shift dimension mismatch");
    const int max_power = *std::max_element(spec.D.begin(), spec.D.end());
    const std::vector<Matrix> powers = matrix_powers(s.matrix(), max_power);

    SpanningSet span;
    for (int i = 0; i < spec.k(); ++i) {
        for (int j = 0; j <= spec.D[static_cast<std::size_t>(i)]; ++j) {
            Matrix candidate = powers[static_cast<std::size_t>(j)];
            mask_rows(candidate, spec.C.sets()[static_cast<std::size_t>(i)]);
            span.candidates.push_back(std::move(candidate));
            span.provenance.emplace_back(i, j);
        }
    }
    return span;
}

int bank_dimension(const BankSpec& spec, const ShiftOperator& s, double tol) {
    return numerical_rank(span_columns(spanning_set(spec, s)), tol);
}

bool is_essential(const SupportTuple& c) {
    for (int i = 0; i < c.k(); ++i) {
        bool has_private = false;
        for (int v : c.sets()[static_cast<std::size_t>(i)].members()) {
            bool covered = false;
            for (int j = 0; j < c.k() && !covered; ++j)
                if (j != i && c.sets()[static_cast<std::size_t>(j)].contains(v)) covered = true;
            if (!covered) {
                has_private = true;
                break;
            }
        }
        if (!has_private) return false;
    }
    return true;
}

namespace {

bool subset_of(const VertexSet& a, const VertexSet& b) {
    for (int v : a.members())
        if (!b.contains(v)) return false;
    return true;
}

bool intersects(const VertexSet& a, const VertexSet& b) {
    for (int v : a.members())
        if (b.contains(v)) return true;
    return false;
}

}  // namespace

RefinementReport refinement_check(const SupportTuple& c_prime, const SupportTuple& c) {
    if (c_prime.ambient_n() != c.ambient_n())
        throw ValidationError("refinement: ambient size mismatch");
    RefinementReport report;
    report.union_equal = c_prime.set_union() == c.set_union();

    report.each_contained = true;
    for (const VertexSet& vp : c_prime.sets()) {
        bool contained = false;
        for (const VertexSet& v : c.sets())
            if (subset_of(vp, v)) {
                contained = true;
                break;
            }
        if (!contained) {
            report.each_contained = false;
            break;
        }
    }

    report.disjoint_in_parent = true;
    for (int j1 = 0; j1 < c_prime.k() && report.disjoint_in_parent; ++j1) {
        for (int j2 = j1 + 1; j2 < c_prime.k() && report.disjoint_in_parent; ++j2) {
            const VertexSet& a = c_prime.sets()[static_cast<std::size_t>(j1)];
            const VertexSet& b = c_prime.sets()[static_cast<std::size_t>(j2)];
            for (const VertexSet& parent : c.sets()) {
                if (subset_of(a, parent) && subset_of(b, parent) && intersects(a, b)) {
                    report.disjoint_in_parent = false;
                    break;
                }
            }
        }
    }
    return report;
}

bool is_refinement(const SupportTuple& c_prime, const SupportTuple& c) {
    return refinement_check(c_prime, c).refinement();
}

bool is_subspace(const BankSpec& a, const BankSpec& b, const ShiftOperator& s, double tol) {
    if (a.ambient_n() != b.ambient_n())
        throw ValidationError("is_subspace: ambient size mismatch");
    const Matrix cols_b = span_columns(spanning_set(b, s));
    const Matrix cols_a = span_columns(spanning_set(a, s));
    Matrix joint(cols_b.rows(), cols_b.cols() + cols_a.cols());
    joint << cols_b, cols_a;
    return numerical_rank(cols_b, tol) == numerical_rank(joint, tol);
}

std::pair<Matrix, Matrix> locality_equivalent(const Graph& g, const VertexSet& v0, int d,
                                              std::uint64_t seed) {
    if (d < 0) throw ValidationError("locality_equivalent: d must be >= 0");
    Rng rng(seed);
    std::vector<double> q(static_cast<std::size_t>(d) + 1);
    for (double& c : q) c = rng.uniform(-1.0, 1.0);
    if (d >= 0 && q.back() == 0.0) q.back() = 1.0;  // keep the degree exact

    Matrix lhs = polynomial_in_matrix(laplacian(g), q);
    Matrix rhs = polynomial_in_matrix(extended_laplacian(g, v0, d), q);
    mask_rows(lhs, v0);
    mask_rows(rhs, v0);
    return {lhs, rhs};
}

Matrix polynomial_in_matrix(const Matrix& s, const std::vector<double>& coeffs) {
    Matrix out = Matrix::Zero(s.rows(), s.cols());
    Matrix power = Matrix::Identity(s.rows(), s.cols());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j > 0) power = power * s;
        out += coeffs[j] * power;
    }
    return out;
}

}  // namespace ssi
