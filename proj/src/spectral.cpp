#include "ssi/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ssi {

ShiftKind parse_shift_kind(const std::string& name) {
    if (name == "adjacency") return ShiftKind::Adjacency;
    if (name == "laplacian") return ShiftKind::Laplacian;
    if (name == "normalized_adjacency") return ShiftKind::NormalizedAdjacency;
    if (name == "normalized_laplacian") return ShiftKind::NormalizedLaplacian;
    if (name == "custom") return ShiftKind::Custom;
    throw ValidationError("unknown shift kind: " + name);
}

std::string shift_kind_name(ShiftKind kind) {
    switch (kind) {
        case ShiftKind::Adjacency: return "adjacency";
        case ShiftKind::Laplacian: return "laplacian";
        case ShiftKind::NormalizedAdjacency: return "normalized_adjacency";
        case ShiftKind::NormalizedLaplacian: return "normalized_laplacian";
        case ShiftKind::Custom: return "custom";
    }
    throw ValidationError("unknown shift kind");
}

namespace {

// Canonical phase: rotate each column so its largest-magnitude entry (first
// among ties) is real positive. Keeps columns unitary, makes the cached
// decomposition a pure function of the input matrix.
void canonicalize_columns(ComplexMatrix& u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            const double mag = std::abs(u(r, c));
            if (mag > best + 1e-14) {
                best = mag;
                pivot = r;
            }
        }
        const std::complex<double> z = u(pivot, c);
        if (std::abs(z) > 0) u.col(c) *= std::conj(z) / std::abs(z);
    }
}

void sort_eigenpairs(ComplexVector& values, ComplexMatrix& vectors) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
        return values(a).imag() < values(b).imag();
    });
    ComplexVector sorted_values(values.size());
    ComplexMatrix sorted_vectors(vectors.rows(), vectors.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted_values(static_cast<Eigen::Index>(i)) = values(order[i]);
        sorted_vectors.col(static_cast<Eigen::Index>(i)) = vectors.col(order[i]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

}  // namespace

ShiftOperator build_shift(const Matrix& matrix, ShiftKind kind, double tol) {
    if (matrix.rows() != matrix.cols()) throw ValidationError("build_shift: matrix must be square");
    if (matrix.rows() == 0) throw ValidationError("build_shift: matrix must be nonempty");

    const double fro2 = std::max(matrix.squaredNorm(), 1e-300);
    const double defect = (matrix * matrix.transpose() - matrix.transpose() * matrix).norm();
    if (defect > tol * fro2) {
        std::ostringstream msg;
        msg << "gso-not-normal: commutator defect " << defect << " exceeds " << tol * fro2;
        throw NumericalError(msg.str());
    }

    ShiftOperator op;
    op.s_ = matrix;
    op.kind_ = kind;
    op.symmetric_ = (matrix - matrix.transpose()).norm() <= 1e-12 * std::sqrt(fro2);

    if (op.symmetric_) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix);
        if (solver.info() != Eigen::Success)
            throw NumericalError("build_shift: eigendecomposition failed");
        Matrix u = solver.eigenvectors();
        // Same canonicalization as the complex path, restricted to signs.
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            Eigen::Index pivot = 0;
            double best = -1.0;
            for (Eigen::Index r = 0; r < u.rows(); ++r) {
                if (std::abs(u(r, c)) > best + 1e-14) {
                    best = std::abs(u(r, c));
                    pivot = r;
                }
            }
            if (u(pivot, c) < 0) u.col(c) = -u.col(c);
        }
        op.real_u_ = u;
        op.eigenvalues_ = solver.eigenvalues().cast<std::complex<double>>();
        op.eigenvectors_ = u.cast<std::complex<double>>();
    } else {
        Eigen::ComplexSchur<ComplexMatrix> schur(matrix.cast<std::complex<double>>());
        if (schur.info() != Eigen::Success)
            throw NumericalError("build_shift: Schur decomposition failed");
        // For a normal matrix the Schur form is diagonal, so the unitary
        // factor's columns are eigenvectors.
        ComplexVector values = schur.matrixT().diagonal();
        ComplexMatrix vectors = schur.matrixU();
        sort_eigenpairs(values, vectors);
        canonicalize_columns(vectors);
        op.eigenvalues_ = values;
        op.eigenvectors_ = vectors;
    }

    op.norm_scale_ = op.eigenvalues_.cwiseAbs().maxCoeff();

    const ComplexMatrix reconstructed =
        op.eigenvectors_ * op.eigenvalues_.asDiagonal() * op.eigenvectors_.adjoint();
    const double rel = (reconstructed - matrix.cast<std::complex<double>>()).norm() /
                       std::max(matrix.norm(), 1e-300);
    if (matrix.norm() > 0 && rel > 1e-8)
        throw NumericalError("build_shift: eigendecomposition reconstruction error too large");
    return op;
}

const Matrix& ShiftOperator::real_eigenbasis() const {
    if (!symmetric_) throw ValidationError("real eigenbasis requires a symmetric shift");
    return real_u_;
}

ShiftOperator laplacian_shift(const Graph& g, double tol) {
    return build_shift(laplacian(g), ShiftKind::Laplacian, tol);
}

ShiftOperator adjacency_shift(const Graph& g, double tol) {
    return build_shift(adjacency(g), ShiftKind::Adjacency, tol);
}

GenericityReport genericity_check(const ShiftOperator& s, double tol) {
    GenericityReport report;
    report.tolerance = tol >= 0 ? tol : 1e-8 * std::max(s.norm_scale(), 1e-300);

    const ComplexVector& lam = s.eigenvalues();
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        for (Eigen::Index j = i + 1; j < lam.size(); ++j)
            min_gap = std::min(min_gap, std::abs(lam(i) - lam(j)));
    if (lam.size() < 2) min_gap = std::numeric_limits<double>::infinity();
    report.min_eigenvalue_gap = min_gap;
    report.distinct_eigenvalues = min_gap > report.tolerance;

    report.min_eigenvector_entry = s.eigenvectors().cwiseAbs().minCoeff();
    report.nonzero_eigenvector_entries = report.min_eigenvector_entry > report.tolerance;
    return report;
}

ComplexVector gft(const ShiftOperator& s, const Vector& f) {
    if (f.size() != s.n()) throw ValidationError("gft: dimension mismatch");
    return s.eigenvectors().adjoint() * f.cast<std::complex<double>>();
}

ComplexVector gft(const ShiftOperator& s, const ComplexVector& f) {
    if (f.size() != s.n()) throw ValidationError("gft: dimension mismatch");
    return s.eigenvectors().adjoint() * f;
}

ComplexVector igft(const ShiftOperator& s, const ComplexVector& fhat) {
    if (fhat.size() != s.n()) throw ValidationError("igft: dimension mismatch");
    return s.eigenvectors() * fhat;
}

Vector random_signal_gft(const ShiftOperator& s, Rng& rng) {
    const Matrix& u = s.real_eigenbasis();
    Vector coeffs(s.n());
    for (int i = 0; i < s.n(); ++i) coeffs(i) = rng.uniform01();
    return u * coeffs;
}

}  // namespace ssi
