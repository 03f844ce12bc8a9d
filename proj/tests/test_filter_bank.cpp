#include "ssi/filter_bank.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ssi;
using namespace ssi::testing;

TEST_CASE("projection matrices") {
    CHECK((projection_embed(VertexSet::full(3)) - Matrix::Identity(3, 3)).norm() == 0.0);
    CHECK(projection_embed(VertexSet({}, 3)).norm() == 0.0);

    const Matrix p = projection_embed(VertexSet({0, 2}, 3));
    CHECK(p(0, 0) == 1.0);
    CHECK(p(1, 1) == 0.0);
    CHECK(p(2, 2) == 1.0);
    CHECK((p * p - p).norm() == 0.0);

    CHECK((projection_select(VertexSet::full(4)) - Matrix::Identity(4, 4)).norm() == 0.0);
    const Matrix sel = projection_select(VertexSet({2}, 3));
    CHECK(sel.rows() == 1);
    CHECK(sel(0, 2) == 1.0);
    CHECK_THROWS_AS(projection_select(VertexSet({}, 3)), ValidationError);

    const VertexSet v({1, 3}, 5);
    const Matrix s = projection_select(v);
    CHECK((s.transpose() * s - projection_embed(v)).norm() == 0.0);
    CHECK((s * projection_embed(v) - s).norm() == 0.0);
}

TEST_CASE("directed 8-cycle filter permutes the V0 components") {
    GraphParams params;
    params.kind = GraphKind::DirectedCycle;
    params.n = 8;
    const ShiftOperator s = adjacency_shift(make_graph(params));

    const SupportTuple c({VertexSet({1, 2}, 8), VertexSet({0, 5}, 8)}, 8);
    const SsiFilter filter(BankSpec(c, {1, 3}), {{0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}});
    const Matrix f = materialize(filter, s);

    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Vector sig(8);
        for (int i = 0; i < 8; ++i) sig(i) = rng.uniform(-1.0, 1.0);
        const Vector out = f * sig;
        CHECK(out(1) == doctest::Approx(sig(0)).epsilon(1e-12));
        CHECK(out(2) == doctest::Approx(sig(1)).epsilon(1e-12));
        CHECK(out(5) == doctest::Approx(sig(2)).epsilon(1e-12));
        CHECK(out(0) == doctest::Approx(sig(5)).epsilon(1e-12));
        for (int v : {3, 4, 6, 7}) CHECK(out(v) == 0.0);
    }
}

TEST_CASE("materialize basics") {
    const ShiftOperator s = laplacian_shift(make_path(3));
    const BankSpec full(SupportTuple({VertexSet::full(3)}, 3), {2});
    CHECK((materialize(SsiFilter(full, {{1.0, 0.0, 0.0}}), s) - Matrix::Identity(3, 3)).norm() ==
          0.0);
    CHECK(materialize(SsiFilter::zero(full), s).norm() == 0.0);
}

TEST_CASE("spanning set counts and order") {
    const ShiftOperator s = laplacian_shift(make_path(3));
    const BankSpec bank(SupportTuple({VertexSet({1}, 3)}, 3), {2});
    const SpanningSet span = spanning_set(bank, s);
    REQUIRE(span.candidates.size() == 3);
    CHECK(span.provenance ==
          std::vector<std::pair<int, int>>({{0, 0}, {0, 1}, {0, 2}}));
    CHECK((span.candidates[0] - projection_embed(VertexSet({1}, 3))).norm() == 0.0);

    const BankSpec identity_bank(SupportTuple({VertexSet::full(3)}, 3), {0});
    const SpanningSet id_span = spanning_set(identity_bank, s);
    REQUIRE(id_span.candidates.size() == 1);
    CHECK((id_span.candidates[0] - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("bank dimensions on generic shifts") {
    const ShiftOperator p2 = perturbed_laplacian_shift(make_path(2), 3);
    REQUIRE(genericity_check(p2).generic());
    for (int d = 0; d <= 1; ++d)
        CHECK(bank_dimension(single_set_bank(singleton(0, 2), d), p2) == d + 1);

    // All singletons at full degree span every filter.
    const ShiftOperator p3 = generic_perturbed_shift(make_path(3), 5);
    const SupportTuple singletons({singleton(0, 3), singleton(1, 3), singleton(2, 3)}, 3);
    CHECK(bank_dimension(BankSpec(singletons, {2, 2, 2}), p3) == 9);

    // Essential tuple: dim = sum d_i + k (Fig. lattice case, unperturbed).
    const ShiftOperator plain = laplacian_shift(make_path(2));
    const SupportTuple both({singleton(0, 2), singleton(1, 2)}, 2);
    CHECK(bank_dimension(BankSpec(both, {1, 1}), plain) == 4);
}

TEST_CASE("dimension is bounded by the candidate count and exact for essential tuples") {
    Rng rng(2024);
    int instances = 0;
    for (std::uint64_t seed = 0; instances < 20; ++seed) {
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 5));
        const Graph g = make_random_connected(n, 0.5, 40000 + seed);
        ShiftOperator s = perturbed_laplacian_shift(g, seed);
        if (!genericity_check(s).generic()) continue;
        ++instances;

        const int k = 1 + static_cast<int>(rng.uniform_int(0, 2));
        const SupportTuple c = sample_essential_tuple(n, k, rng);
        DegreeTuple d;
        int expected = k;
        for (int i = 0; i < k; ++i) {
            d.push_back(static_cast<int>(rng.uniform_int(0, n - 1)));
            expected += d.back();
        }
        const BankSpec spec(c, d);
        const int dim = bank_dimension(spec, s);
        CHECK(dim <= spec.candidate_count());
        CHECK(dim == expected);
    }
}

TEST_CASE("single-set dimension monotonicity, exhaustive at small n") {
    for (int n = 2; n <= 4; ++n) {
        const ShiftOperator s = perturbed_laplacian_shift(make_random_connected(n, 0.7, 7 + n), n);
        const std::vector<VertexSet> subsets = all_nonempty_subsets(n);
        for (const VertexSet& v1 : subsets) {
            for (const VertexSet& v2 : subsets) {
                if (!vertex_subset_of(v1, v2)) continue;
                for (int d1 = 0; d1 <= n - 1; ++d1)
                    for (int d2 = d1; d2 <= n - 1; ++d2)
                        CHECK(bank_dimension(single_set_bank(v1, d1), s) <=
                              bank_dimension(single_set_bank(v2, d2), s));
            }
        }
    }
}

TEST_CASE("essential and refinement predicates") {
    const int n = 6;
    CHECK(is_essential(SupportTuple({VertexSet({1, 2}, n), VertexSet({2, 3}, n)}, n)));
    CHECK_FALSE(is_essential(
        SupportTuple({VertexSet({1, 2}, n), VertexSet({1}, n), VertexSet({2}, n)}, n)));
    CHECK(is_essential(SupportTuple({VertexSet({0, 4}, n)}, n)));

    // Valid refinement.
    const SupportTuple c({VertexSet({1, 2, 3}, n), VertexSet({4, 5}, n)}, n);
    const SupportTuple cp({VertexSet({1, 2}, n), VertexSet({3}, n), VertexSet({4, 5}, n)}, n);
    CHECK(is_refinement(cp, c));

    // A set straddling two parents fails clause b.
    const SupportTuple c2({VertexSet({0, 1, 2}, n), VertexSet({3, 4, 5}, n)}, n);
    const SupportTuple straddle({VertexSet({0, 1}, n), VertexSet({2, 3}, n), VertexSet({4, 5}, n)},
                                n);
    const RefinementReport rb = refinement_check(straddle, c2);
    CHECK(rb.union_equal);
    CHECK_FALSE(rb.each_contained);
    CHECK_FALSE(rb.refinement());

    // Overlapping children inside one parent fail clause c.
    const SupportTuple overlap({VertexSet({0, 1}, n), VertexSet({1, 2}, n), VertexSet({3, 4, 5}, n)},
                               n);
    const RefinementReport rc = refinement_check(overlap, c2);
    CHECK(rc.union_equal);
    CHECK(rc.each_contained);
    CHECK_FALSE(rc.disjoint_in_parent);
    CHECK_FALSE(rc.refinement());
}

TEST_CASE("subspace fixtures") {
    const ShiftOperator p2 = laplacian_shift(make_path(2));
    const BankSpec low = single_set_bank(singleton(0, 2), 0);
    const BankSpec high = single_set_bank(singleton(0, 2), 1);
    CHECK(is_subspace(low, high, p2));
    CHECK_FALSE(is_subspace(high, low, p2));

    const BankSpec si(SupportTuple({VertexSet::full(2)}, 2), {1});
    CHECK_FALSE(is_subspace(si, high, p2));
    CHECK_FALSE(is_subspace(high, si, p2));
}

TEST_CASE("refinement theorem, both directions, exhaustive at n = 3") {
    const int n = 3;
    const ShiftOperator s = generic_perturbed_shift(make_random_connected(n, 0.8, 12), 34);
    const std::vector<SupportTuple> tuples = all_support_tuples(n, 2);
    for (int d = 0; d <= 1; ++d) {
        for (const SupportTuple& c : tuples) {
            const BankSpec coarse = constant_degree_bank(c, d);
            const VertexSet c_union = c.set_union();
            for (const SupportTuple& cp : tuples) {
                const BankSpec fine = constant_degree_bank(cp, d);
                const bool refinement = is_refinement(cp, c);
                if (refinement) CHECK(is_subspace(coarse, fine, s));
                if (is_essential(cp) && vertex_subset_of(cp.set_union(), c_union))
                    CHECK(is_subspace(coarse, fine, s) == refinement);
            }
        }
    }
}

TEST_CASE("refinement with matching degrees implies containment on random instances") {
    Rng rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_int(0, 3));
        const ShiftOperator s =
            perturbed_laplacian_shift(make_random_connected(n, 0.5, 600 + trial), trial);

        // Split a random base set into a partition to build a refinement.
        std::vector<int> base;
        for (int v = 0; v < n; ++v)
            if (rng.bernoulli(0.7)) base.push_back(v);
        if (base.size() < 2) continue;
        std::vector<int> left, right;
        for (std::size_t i = 0; i < base.size(); ++i)
            (rng.bernoulli(0.5) ? left : right).push_back(base[i]);
        if (left.empty() || right.empty()) continue;

        const SupportTuple c({VertexSet(base, n)}, n);
        const SupportTuple cp({VertexSet(left, n), VertexSet(right, n)}, n);
        REQUIRE(is_refinement(cp, c));

        const int d = static_cast<int>(rng.uniform_int(0, 2));
        const int dp = d + static_cast<int>(rng.uniform_int(0, std::max(0, n - 1 - d)));
        const BankSpec coarse(c, {d});
        const BankSpec fine(cp, {dp, dp});
        CHECK(is_subspace(coarse, fine, s));
    }
}

TEST_CASE("locality identity fixtures") {
    const Graph p5 = make_path(5);

    // d = 0: both sides reduce to a multiple of the embedding projection.
    auto [a0, b0] = locality_equivalent(p5, VertexSet({1, 3}, 5), 0, 4);
    CHECK((a0 - b0).norm() == 0.0);
    CHECK((a0.cwiseAbs().colwise().sum().transpose() -
           a0.diagonal().cwiseAbs()).norm() == 0.0);  // diagonal matrix

    // V0 = V: identical by construction.
    auto [a1, b1] = locality_equivalent(p5, VertexSet::full(5), 2, 5);
    CHECK((a1 - b1).norm() <= 1e-12 * a1.norm());

    // Hand check for V0 = {0, 1}, d = 1, Q = X.
    const VertexSet v0({0, 1}, 5);
    Matrix lhs = laplacian(p5);
    Matrix rhs = extended_laplacian(p5, v0, 1);
    for (int r = 2; r < 5; ++r) {
        lhs.row(r).setZero();
        rhs.row(r).setZero();
    }
    CHECK((lhs - rhs).norm() == 0.0);
    for (int r = 0; r < 2; ++r) CHECK(lhs.row(r).cwiseAbs().sum() > 0.0);
}

TEST_CASE("locality identity holds over random draws") {
    Rng rng(3001);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_int(0, 11));
        const Graph g = make_random_connected(n, 0.35, 7000 + trial);
        std::vector<int> members;
        while (members.empty())
            for (int v = 0; v < n; ++v)
                if (rng.bernoulli(0.3)) members.push_back(v);
        const VertexSet v0(members, n);
        const int d = static_cast<int>(rng.uniform_int(0, 4));
        auto [lhs, rhs] = locality_equivalent(g, v0, d, 5000 + trial);

        std::vector<double> probe_coeffs;  // scale reference: Q_d(L_G) itself
        Rng probe(5000 + trial);
        for (int j = 0; j <= d; ++j) probe_coeffs.push_back(probe.uniform(-1.0, 1.0));
        if (probe_coeffs.back() == 0.0) probe_coeffs.back() = 1.0;
        const double scale = polynomial_in_matrix(laplacian(g), probe_coeffs).norm();
        CHECK((lhs - rhs).norm() <= 1e-9 * std::max(scale, 1.0));
    }
}

TEST_CASE("materialization is linear with dyadic coefficients") {
    const ShiftOperator s = laplacian_shift(make_lattice(2, 3));
    const SupportTuple c({VertexSet({0, 1, 4}, 6), VertexSet({2, 3}, 6)}, 6);
    const BankSpec spec(c, {2, 1});

    const SsiFilter f(spec, {{0.5, 1.0, 0.25}, {2.0, 0.5}});
    const SsiFilter g(spec, {{1.5, 0.0, 0.75}, {0.25, 1.0}});
    const double alpha = 2.0, beta = 0.5;

    std::vector<std::vector<double>> combined = f.coeffs;
    for (std::size_t i = 0; i < combined.size(); ++i)
        for (std::size_t j = 0; j < combined[i].size(); ++j)
            combined[i][j] = alpha * f.coeffs[i][j] + beta * g.coeffs[i][j];

    const Matrix lhs = materialize(SsiFilter(spec, combined), s);
    const Matrix rhs = alpha * materialize(f, s) + beta * materialize(g, s);
    CHECK((lhs - rhs).norm() == 0.0);
}

TEST_CASE("materialized filters vanish outside the support union") {
    Rng rng(15);
    const ShiftOperator s = adjacency_shift(make_random_connected(7, 0.5, 10));
    const SupportTuple c({VertexSet({1, 2}, 7), VertexSet({4}, 7)}, 7);
    std::vector<std::vector<double>> coeffs = {{rng.uniform01(), rng.uniform01()},
                                               {rng.uniform01(), rng.uniform01(), rng.uniform01()}};
    const Matrix f = materialize(SsiFilter(BankSpec(c, {1, 2}), coeffs), s);
    for (int row : {0, 3, 5, 6}) CHECK(f.row(row).cwiseAbs().sum() == 0.0);
}

TEST_CASE("degree cap and validation errors") {
    CHECK_THROWS_AS(single_set_bank(singleton(0, 3), 3), ValidationError);
    CHECK_THROWS_AS(single_set_bank(singleton(0, 3), -1), ValidationError);
    CHECK_THROWS_AS(SupportTuple({VertexSet({}, 3)}, 3), ValidationError);
    CHECK_THROWS_AS(SupportTuple({}, 3), ValidationError);
    const BankSpec ok = single_set_bank(singleton(0, 3), 1);
    CHECK_THROWS_AS(SsiFilter(ok, {{1.0}}), ValidationError);  // wrong coefficient shape
}
