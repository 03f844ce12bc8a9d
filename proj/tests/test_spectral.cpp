#include "ssi/spectral.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace ssi;
using namespace ssi::testing;

TEST_CASE("two-node path laplacian spectrum") {
    const ShiftOperator s = laplacian_shift(make_path(2));
    REQUIRE(s.n() == 2);
    CHECK(s.eigenvalues()(0).real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.eigenvalues()(1).real() == doctest::Approx(2.0));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Matrix& u = s.real_eigenbasis();
    CHECK(u(0, 0) == doctest::Approx(inv_sqrt2));
    CHECK(u(1, 0) == doctest::Approx(inv_sqrt2));
    CHECK(u(0, 1) == doctest::Approx(inv_sqrt2));
    CHECK(u(1, 1) == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("directed cycle adjacency has the roots of unity as spectrum") {
    GraphParams params;
    params.kind = GraphKind::DirectedCycle;
    params.n = 8;
    const ShiftOperator s = adjacency_shift(make_graph(params));
    CHECK_FALSE(s.symmetric());

    // Circulant oracle: eigenvalues are exp(2 pi i k / 8).
    std::vector<std::complex<double>> expected;
    for (int k = 0; k < 8; ++k)
        expected.push_back(std::polar(1.0, 2.0 * M_PI * k / 8.0));
    for (Eigen::Index i = 0; i < 8; ++i) {
        const std::complex<double> lam = s.eigenvalues()(i);
        const double best = std::accumulate(
            expected.begin(), expected.end(), 1e9, [&](double acc, std::complex<double> e) {
                return std::min(acc, std::abs(lam - e));
            });
        CHECK(best < 1e-10);
    }

    const ComplexMatrix recon =
        s.eigenvectors() * s.eigenvalues().asDiagonal() * s.eigenvectors().adjoint();
    CHECK((recon - s.matrix().cast<std::complex<double>>()).norm() < 1e-10);
}

TEST_CASE("non-normal matrices are rejected") {
    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(build_shift(bad), NumericalError);
}

TEST_CASE("reconstruction invariant over assorted shifts") {
    std::vector<ShiftOperator> shifts;
    shifts.push_back(laplacian_shift(make_lattice(3, 4)));
    shifts.push_back(adjacency_shift(make_random_connected(9, 0.4, 17)));
    shifts.push_back(perturbed_laplacian_shift(make_random_connected(8, 0.5, 4), 9));
    for (const ShiftOperator& s : shifts) {
        const ComplexMatrix recon =
            s.eigenvectors() * s.eigenvalues().asDiagonal() * s.eigenvectors().adjoint();
        CHECK((recon - s.matrix().cast<std::complex<double>>()).norm() <= 1e-8 * s.matrix().norm());
        CHECK((s.eigenvectors().adjoint() * s.eigenvectors() - ComplexMatrix::Identity(s.n(), s.n()))
                  .norm() <= 1e-8);
    }
}

TEST_CASE("genericity fixtures") {
    const GenericityReport p2 = genericity_check(laplacian_shift(make_path(2)));
    CHECK(p2.distinct_eigenvalues);
    CHECK(p2.nonzero_eigenvector_entries);
    CHECK(p2.min_eigenvalue_gap == doctest::Approx(2.0));
    CHECK(p2.min_eigenvector_entry == doctest::Approx(1.0 / std::sqrt(2.0)));

    // Two disjoint edges: spectrum {0, 0, 2, 2}.
    const Graph disjoint(4, {{0, 1}, {2, 3}}, false);
    const GenericityReport rep = genericity_check(laplacian_shift(disjoint));
    CHECK_FALSE(rep.distinct_eigenvalues);

    // P3 laplacian: eigenvector (-1, 0, 1)/sqrt(2) has a zero entry.
    const GenericityReport p3 = genericity_check(laplacian_shift(make_path(3)));
    CHECK(p3.distinct_eigenvalues);
    CHECK_FALSE(p3.nonzero_eigenvector_entries);
}

TEST_CASE("gft fixtures and round trip") {
    const ShiftOperator s = laplacian_shift(make_path(2));
    Vector f(2);
    f << 0.3, -1.7;
    const ComplexVector fhat = gft(s, f);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(fhat(0).real() == doctest::Approx((0.3 - 1.7) * inv_sqrt2));
    CHECK(fhat(1).real() == doctest::Approx((0.3 + 1.7) * inv_sqrt2));

    const Vector zero = Vector::Zero(2);
    CHECK(gft(s, zero).norm() == 0.0);

    // A Fourier basis vector maps to a coordinate vector.
    const ShiftOperator lat = laplacian_shift(make_lattice(2, 3));
    const Vector col = lat.real_eigenbasis().col(2);
    const ComplexVector e2 = gft(lat, col);
    for (Eigen::Index i = 0; i < e2.size(); ++i)
        CHECK(std::abs(e2(i) - (i == 2 ? 1.0 : 0.0)) < 1e-12);

    Vector g(2);
    g << 1.25, 0.5;
    CHECK((igft(s, gft(s, g)).real() - g).norm() < 1e-10);
    const Vector wrong_size = Vector::Zero(5);
    CHECK_THROWS_AS(gft(s, wrong_size), ValidationError);
}

TEST_CASE("parseval over random signals") {
    const ShiftOperator s = adjacency_shift(make_random_connected(11, 0.4, 23));
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        Vector f(11);
        for (int i = 0; i < 11; ++i) f(i) = rng.uniform(-2.0, 2.0);
        CHECK(gft(s, f).norm() == doctest::Approx(f.norm()).epsilon(1e-10));
    }
}

TEST_CASE("random gft signals are deterministic with coefficients in [0,1)") {
    const ShiftOperator s = laplacian_shift(make_lattice(3, 3));
    Rng rng_a(5), rng_b(5);
    const Vector a = random_signal_gft(s, rng_a);
    const Vector b = random_signal_gft(s, rng_b);
    CHECK((a - b).norm() == 0.0);

    // The GFT coefficients of the generated signal are the uniform draws.
    const ComplexVector coeffs = gft(s, a);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        CHECK(coeffs(i).real() >= -1e-12);
        CHECK(coeffs(i).real() < 1.0 + 1e-12);
        CHECK(std::abs(coeffs(i).imag()) < 1e-12);
    }

    CHECK_THROWS_AS(random_signal_gft(adjacency_shift(make_graph({GraphKind::DirectedCycle, 4, 0, 0, 0.0})), rng_a),
                    ValidationError);
}

TEST_CASE("perturbed laplacians of random connected graphs are usually generic") {
    int generic_count = 0;
    const int total = 50;
    for (int trial = 0; trial < total; ++trial) {
        GraphParams params;
        params.kind = GraphKind::RandomConnected;
        params.n = 6 + trial % 5;
        params.p = 0.5;
        const Graph g = make_graph(params, 9000 + trial);
        const ShiftOperator s = perturbed_laplacian_shift(g, 31 * trial + 1);
        if (genericity_check(s).generic()) ++generic_count;
    }
    CHECK(generic_count >= static_cast<int>(0.95 * total));
}
