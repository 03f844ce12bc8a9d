#pragma once

#include "ssi/filter_bank.hpp"
#include "ssi/graph.hpp"
#include "ssi/spectral.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace ssi {

/// Partial observations on V0: row t of X is x_t = P_{V0} y_t, row t of Xp
/// is x'_t = P_{V0} z_t.
struct ObservationSet {
    VertexSet V0;
    Matrix X;   // T x |V0|
    Matrix Xp;  // T x |V0|

    ObservationSet(VertexSet v0, Matrix x, Matrix xp);

    int T() const { return static_cast<int>(X.rows()); }
    int n0() const { return V0.size(); }
};

enum class LearnSolver { ClosedForm, Alternating };
enum class LearnLoss { Frobenius };

struct LearnConfig {
    int r = 1;                 // degree slack of the constructed support
    double beta = 0.0;         // regularization weight
    LearnLoss loss = LearnLoss::Frobenius;
    double ridge = 1e-8;       // diagonal stabilizer, must stay < 1e-3
    double tol = 1e-9;         // solver tolerance
    LearnSolver solver = LearnSolver::ClosedForm;
    int max_iterations = 2000;  // alternating solver cap

    void validate() const;
};

struct LearnResult {
    Matrix F0;                  // |V0| x |V0| predictor
    std::optional<SsiFilter> F;  // fitted ambient bank member (absent for baselines)
    double objective = 0.0;
    std::vector<double> residual_history;
};

// ---------------------------------------------------------------------------
// Support construction
// ---------------------------------------------------------------------------

/// Builds (C_{V0}, D_{V0}): V_1 collects V0-vertices with a 1-hop V0
/// neighbor; for i >= 2, a vertex whose nearest other V0-vertex is exactly
/// i hops away contributes itself and its exactly-i-hop V0 neighbors to V_i.
/// Empty V_i are dropped and degrees are i + r. V0-vertices with no V0 peer
/// at any finite distance form one extra set of degree r so the tuple covers
/// V0. Degrees are capped at n-1.
BankSpec build_support(const Graph& g, const VertexSet& v0, int r);

// ---------------------------------------------------------------------------
// Joint estimation
// ---------------------------------------------------------------------------

/// Solves the regularized joint problem
///   min_{a, F0 symmetric}  sum_t ||x'_t - F0 x_t||^2
///                          + beta ||P_{V0} F(a) - F0 P_{V0}||_F^2
///                          + ridge (||a||^2 + ||F0||_F^2)
/// in closed form over the stacked unknowns (a; upper triangle of F0), or by
/// alternating F0-step / a-step when cfg.solver says so.
LearnResult learn(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                  const LearnConfig& cfg);

/// Direct evaluation of the learn() objective at an arbitrary point.
double learn_objective(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                       const LearnConfig& cfg, const std::vector<std::vector<double>>& coeffs,
                       const Matrix& f0);

/// Analytic gradient of the learn() objective over the stacked unknowns
/// (a; vech F0), in the same coordinates used by the closed-form solver.
Vector learn_gradient(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                      const LearnConfig& cfg, const std::vector<std::vector<double>>& coeffs,
                      const Matrix& f0);

/// Stacks (coeffs, F0) into the solver coordinates and back.
Vector learn_pack(const BankSpec& spec, const std::vector<std::vector<double>>& coeffs,
                  const Matrix& f0);
void learn_unpack(const BankSpec& spec, int n0, const Vector& theta,
                  std::vector<std::vector<double>>& coeffs, Matrix& f0);

/// Mean Euclidean recovery error (1/T) sum_t ||x'_t - F0 x_t||_2.
double recovery_error(const Matrix& f0, const ObservationSet& obs);

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

/// Least-squares fit of F0 = sum_j c_j L_{H0}^j where H0 is the subgraph
/// induced by V0. Rank-deficient designs (e.g. edgeless H0) resolve to the
/// minimum-norm coefficients.
LearnResult baseline_subgraph_si(const ObservationSet& obs, const Graph& g, int degree,
                                 double ridge = 0.0);

/// Interpolation baseline: lift each observation to the bandwidth-lowest
/// Laplacian eigenvectors (least squares, minimum norm), fit a degree-d
/// polynomial in L_G on the lifted pairs, and predict through
/// P_{V0} o filter o lift.
LearnResult baseline_gi(const ObservationSet& obs, const Graph& g, const ShiftOperator& s,
                        int bandwidth, int degree, double ridge = 0.0);

// ---------------------------------------------------------------------------
// Experiment protocol
// ---------------------------------------------------------------------------

struct TrialParams {
    double v0_fraction = 0.4;
    std::vector<int> v0_explicit;  // overrides the fraction when nonempty
    int T = 10;
    double beta = 0.0;
    int r = 1;
    double ridge = 1e-8;
    int baseline_degree = 2;   // polynomial degree for both baselines
    int gi_bandwidth = -1;     // -1: |V0|
    std::uint64_t seed = 0;
};

struct MethodOutcome {
    double train_error = 0.0;
    double eval_error = 0.0;
    double objective = 0.0;
};

struct TrialRecord {
    std::vector<int> v0;
    std::array<double, 3> truth_coeffs{};  // ground-truth a0, a1, a2
    MethodOutcome ssi;
    MethodOutcome gi;
    MethodOutcome lh0;
};

/// One protocol trial: draw the ground-truth degree-2 polynomial filter in
/// L_G with Uniform[0,1] coefficients, draw T train and T held-out signal
/// pairs with Uniform[0,1] GFT coefficients, fit learn() and both baselines,
/// and record train / held-out recovery errors. Fully determined by
/// params.seed.
TrialRecord run_trial(const Graph& g, const ShiftOperator& s, const TrialParams& params);

}  // namespace ssi
