#pragma once

#include "ssi/common.hpp"
#include "ssi/graph.hpp"
#include "ssi/rng.hpp"

#include <string>

namespace ssi {

enum class ShiftKind { Adjacency, Laplacian, NormalizedAdjacency, NormalizedLaplacian, Custom };

ShiftKind parse_shift_kind(const std::string& name);
std::string shift_kind_name(ShiftKind kind);

/// A normal graph shift operator with its eigendecomposition S = U Lambda U*
/// cached at construction. Immutable afterwards, safe to share across
/// threads. Eigenpairs are sorted by (Re, Im) and eigenvector phases are
/// canonicalized so equal inputs give equal decompositions.
class ShiftOperator {
public:
    const Matrix& matrix() const { return s_; }
    ShiftKind kind() const { return kind_; }
    int n() const { return static_cast<int>(s_.rows()); }

    const ComplexVector& eigenvalues() const { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

    bool symmetric() const { return symmetric_; }
    /// Real orthonormal eigenbasis; only available for symmetric shifts.
    const Matrix& real_eigenbasis() const;

    double norm_scale() const { return norm_scale_; }  // max |eigenvalue|

    friend ShiftOperator build_shift(const Matrix& matrix, ShiftKind kind, double tol);

private:
    ShiftOperator() = default;

    Matrix s_;
    ShiftKind kind_ = ShiftKind::Custom;
    ComplexVector eigenvalues_;
    ComplexMatrix eigenvectors_;
    Matrix real_u_;
    bool symmetric_ = false;
    double norm_scale_ = 0.0;
};

/// Verifies normality (||S S^T - S^T S||_F <= tol ||S||_F^2) and computes the
/// spectrum; symmetric inputs use the self-adjoint solver, general normal
/// ones a complex Schur decomposition. Throws NumericalError "gso-not-normal"
/// carrying the defect norm otherwise.
ShiftOperator build_shift(const Matrix& matrix, ShiftKind kind = ShiftKind::Custom,
                          double tol = 1e-8);

ShiftOperator laplacian_shift(const Graph& g, double tol = 1e-8);
ShiftOperator adjacency_shift(const Graph& g, double tol = 1e-8);

struct GenericityReport {
    bool distinct_eigenvalues = false;
    double min_eigenvalue_gap = 0.0;
    bool nonzero_eigenvector_entries = false;
    double min_eigenvector_entry = 0.0;
    double tolerance = 0.0;

    bool generic() const { return distinct_eigenvalues && nonzero_eigenvector_entries; }
};

/// Checks the two genericity hypotheses: all eigenvalue pairs separated by
/// more than tol and no eigenvector entry of magnitude <= tol. A tol < 0
/// selects the default 1e-8 * max|eigenvalue|.
GenericityReport genericity_check(const ShiftOperator& s, double tol = -1.0);

/// Graph Fourier transform  f_hat = U* f  and its inverse.
ComplexVector gft(const ShiftOperator& s, const Vector& f);
ComplexVector gft(const ShiftOperator& s, const ComplexVector& f);
ComplexVector igft(const ShiftOperator& s, const ComplexVector& fhat);

/// Signal U c with i.i.d. GFT coefficients c_i ~ Uniform[0,1). Requires a
/// symmetric shift (real Fourier basis).
Vector random_signal_gft(const ShiftOperator& s, Rng& rng);

}  // namespace ssi
