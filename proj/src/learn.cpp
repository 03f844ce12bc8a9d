#include "ssi/learn.hpp"

#include "ssi/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>

namespace ssi {

ObservationSet::ObservationSet(VertexSet v0, Matrix x, Matrix xp)
    : V0(std::move(v0)), X(std::move(x)), Xp(std::move(xp)) {
    if (V0.empty()) throw ValidationError("observations: V0 must be nonempty");
    if (X.rows() != Xp.rows() || X.cols() != Xp.cols())
        throw ValidationError("observations: X and Xp must have the same shape");
    if (X.rows() < 1) throw ValidationError("observations: need T >= 1");
    if (X.cols() != V0.size()) throw ValidationError("observations: column count must be |V0|");
    if (!X.allFinite() || !Xp.allFinite())
        throw ValidationError("observations: entries must be finite");
}

void LearnConfig::validate() const {
    if (r < 0) throw ValidationError("learn config: r must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ValidationError("learn config: beta must be finite and >= 0");
    if (ridge < 0.0 || ridge >= 1e-3)
        throw ValidationError("learn config: ridge must be in [0, 1e-3)");
    if (tol <= 0.0) throw ValidationError("learn config: tol must be positive");
    if (max_iterations < 1) throw ValidationError("learn config: max_iterations must be >= 1");
}

// ---------------------------------------------------------------------------
// Support construction
// ---------------------------------------------------------------------------

BankSpec build_support(const Graph& g, const VertexSet& v0, int r) {
    if (v0.empty()) throw ValidationError("build_support: V0 must be nonempty");
    if (r < 0) throw ValidationError("build_support: r must be >= 0");
    const int n = g.n();
    const auto& members = v0.members();
    const int n0 = v0.size();

    // Pairwise hop distances within V0 (computed in G).
    std::vector<std::vector<int>> from(static_cast<std::size_t>(n0));
    for (int i = 0; i < n0; ++i)
        from[static_cast<std::size_t>(i)] = hop_distances_from(g, members[static_cast<std::size_t>(i)]);

    auto hop = [&](int i, int j) { return from[static_cast<std::size_t>(i)][static_cast<std::size_t>(members[static_cast<std::size_t>(j)])]; };

    std::vector<int> nearest(static_cast<std::size_t>(n0), kInfiniteHops);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j)
            if (i != j) nearest[static_cast<std::size_t>(i)] = std::min(nearest[static_cast<std::size_t>(i)], hop(i, j));

    std::map<int, std::vector<int>> tiers;  // i -> members of V_i (original ids)
    std::vector<int> isolated;
    for (int i = 0; i < n0; ++i) {
        const int d = nearest[static_cast<std::size_t>(i)];
        if (d == kInfiniteHops) {
            isolated.push_back(members[static_cast<std::size_t>(i)]);
            continue;
        }
        tiers[d].push_back(members[static_cast<std::size_t>(i)]);
        // The exactly-d-hop V0 neighbors of this vertex join the same tier.
        for (int j = 0; j < n0; ++j)
            if (j != i && hop(i, j) == d) tiers[d].push_back(members[static_cast<std::size_t>(j)]);
    }

    std::vector<VertexSet> sets;
    DegreeTuple degrees;
    for (const auto& [i, ids] : tiers) {
        sets.emplace_back(ids, n);
        degrees.push_back(std::min(i + r, n - 1));
    }
    if (!isolated.empty()) {
        sets.emplace_back(isolated, n);
        degrees.push_back(std::min(r, n - 1));
    }
    return BankSpec(SupportTuple(std::move(sets), n), std::move(degrees));
}

// ---------------------------------------------------------------------------
// Joint estimation
// ---------------------------------------------------------------------------

namespace {

// vech index of entry (p, q) of a symmetric n0 x n0 matrix, p <= q.
inline int vech_index(int p, int q, int n0) {
    if (p > q) std::swap(p, q);
    return p * n0 - p * (p - 1) / 2 + (q - p);
}

inline int vech_size(int n0) { return n0 * (n0 + 1) / 2; }

struct Assembled {
    Matrix N;        // normal matrix including beta and ridge blocks
    Vector b;        // right-hand side
    int m = 0;       // coefficient unknowns actually present (0 when beta == 0)
    std::vector<Matrix> R;  // P_{V0} B_c for each spanning candidate
};

std::vector<Matrix> restricted_candidates(const ObservationSet& obs, const BankSpec& spec,
                                          const ShiftOperator& s) {
    const SpanningSet span = spanning_set(spec, s);
    std::vector<Matrix> r;
    r.reserve(span.candidates.size());
    const auto& v0 = obs.V0.members();
    for (const Matrix& b : span.candidates) {
        Matrix rows(obs.n0(), s.n());
        for (int p = 0; p < obs.n0(); ++p) rows.row(p) = b.row(v0[static_cast<std::size_t>(p)]);
        r.push_back(std::move(rows));
    }
    return r;
}

Assembled assemble_normal_equations(const ObservationSet& obs, const BankSpec& spec,
                                    const ShiftOperator& s, const LearnConfig& cfg,
                                    bool force_coefficients) {
    const int n0 = obs.n0();
    const int v = vech_size(n0);
    Assembled out;
    out.R = restricted_candidates(obs, spec, s);
    out.m = (cfg.beta > 0.0 || force_coefficients) ? static_cast<int>(out.R.size()) : 0;
    const int dim = out.m + v;

    out.N = Matrix::Zero(dim, dim);
    out.b = Vector::Zero(dim);

    const Matrix gram = obs.X.transpose() * obs.X;    // sum_t x x^T
    const Matrix cross = obs.Xp.transpose() * obs.X;  // H[p][q] = sum_t x'_p x_q

    // Data term, scattered into the vech block row by row.
    for (int p = 0; p < n0; ++p) {
        for (int q1 = 0; q1 < n0; ++q1) {
            const int k1 = out.m + vech_index(p, q1, n0);
            out.b(k1) += cross(p, q1);
            for (int q2 = 0; q2 < n0; ++q2)
                out.N(k1, out.m + vech_index(p, q2, n0)) += gram(q1, q2);
        }
    }

    // Geometric regularizer beta ||P F(a) - F0 P||_F^2.
    if (cfg.beta > 0.0 && out.m > 0) {
        const auto& v0 = obs.V0.members();
        for (int c1 = 0; c1 < out.m; ++c1)
            for (int c2 = c1; c2 < out.m; ++c2) {
                const double dot = cfg.beta * out.R[static_cast<std::size_t>(c1)]
                                                  .cwiseProduct(out.R[static_cast<std::size_t>(c2)])
                                                  .sum();
                out.N(c1, c2) += dot;
                if (c2 != c1) out.N(c2, c1) += dot;
            }
        for (int c = 0; c < out.m; ++c)
            for (int p = 0; p < n0; ++p)
                for (int q = 0; q < n0; ++q) {
                    const int k = out.m + vech_index(p, q, n0);
                    const double val = -cfg.beta * out.R[static_cast<std::size_t>(c)](p, v0[static_cast<std::size_t>(q)]);
                    out.N(c, k) += val;
                    out.N(k, c) += val;
                }
        for (int p = 0; p < n0; ++p)
            for (int q = 0; q < n0; ++q) {
                const int k = out.m + vech_index(p, q, n0);
                out.N(k, k) += cfg.beta;
            }
    }

    // Ridge. Off-diagonal vech entries appear twice in ||F0||_F^2.
    for (int c = 0; c < out.m; ++c) out.N(c, c) += cfg.ridge;
    for (int p = 0; p < n0; ++p)
        for (int q = p; q < n0; ++q)
            out.N(out.m + vech_index(p, q, n0), out.m + vech_index(p, q, n0)) +=
                (p == q ? 1.0 : 2.0) * cfg.ridge;

    return out;
}

Matrix unvech(const Vector& theta, int offset, int n0) {
    Matrix f0(n0, n0);
    for (int p = 0; p < n0; ++p)
        for (int q = p; q < n0; ++q) {
            const double val = theta(offset + vech_index(p, q, n0));
            f0(p, q) = val;
            f0(q, p) = val;
        }
    return f0;
}

std::vector<std::vector<double>> coeffs_from_vector(const BankSpec& spec, const Vector& a) {
    std::vector<std::vector<double>> coeffs;
    int c = 0;
    for (int i = 0; i < spec.k(); ++i) {
        std::vector<double> row;
        for (int j = 0; j <= spec.D[static_cast<std::size_t>(i)]; ++j) row.push_back(a.size() > 0 ? a(c++) : 0.0);
        coeffs.push_back(std::move(row));
    }
    return coeffs;
}

Vector coeffs_to_vector(const BankSpec& spec, const std::vector<std::vector<double>>& coeffs) {
    Vector a(spec.candidate_count());
    int c = 0;
    for (int i = 0; i < spec.k(); ++i)
        for (int j = 0; j <= spec.D[static_cast<std::size_t>(i)]; ++j)
            a(c++) = coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return a;
}

void check_solvable_or_throw(const Eigen::LDLT<Matrix>& ldlt, double ridge) {
    const Vector d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    const double dmin = d.cwiseAbs().minCoeff();
    if (ldlt.info() != Eigen::Success || !(dmin > 1e-13 * std::max(dmax, 1e-300)) || d.minCoeff() < 0) {
        if (ridge == 0.0)
            throw NumericalError("learn: singular normal matrix; set ridge > 0");
        throw NumericalError("learn: normal equations could not be factorized");
    }
}

LearnResult solve_closed_form(const ObservationSet& obs, const BankSpec& spec,
                              const ShiftOperator& s, const LearnConfig& cfg) {
    const Assembled sys = assemble_normal_equations(obs, spec, s, cfg, false);
    Eigen::LDLT<Matrix> ldlt(sys.N);
    check_solvable_or_throw(ldlt, cfg.ridge);
    const Vector theta = ldlt.solve(sys.b);

    LearnResult result;
    Vector a = Vector::Zero(spec.candidate_count());
    if (sys.m > 0) a = theta.head(sys.m);
    result.F0 = unvech(theta, sys.m, obs.n0());
    result.F = SsiFilter(spec, coeffs_from_vector(spec, a));
    result.objective = learn_objective(obs, spec, s, cfg, result.F->coeffs, result.F0);
    result.residual_history = {result.objective};
    return result;
}

LearnResult solve_alternating(const ObservationSet& obs, const BankSpec& spec,
                              const ShiftOperator& s, const LearnConfig& cfg) {
    const int n0 = obs.n0();
    const std::vector<Matrix> r_mats = restricted_candidates(obs, spec, s);
    const int m = static_cast<int>(r_mats.size());
    const auto& v0 = obs.V0.members();

    const Matrix gram = obs.X.transpose() * obs.X;
    const Matrix cross_sym = 0.5 * (obs.Xp.transpose() * obs.X + obs.X.transpose() * obs.Xp);

    // F0-step operates in the eigenbasis of gram: the stationarity condition
    // (F0 G + G F0)/2 + (beta + ridge) F0 = sym(H) + beta sym(M0) decouples
    // entrywise there.
    Eigen::SelfAdjointEigenSolver<Matrix> gram_eig(gram);
    const Matrix v_basis = gram_eig.eigenvectors();
    const Vector lam = gram_eig.eigenvalues();

    const double shift = cfg.beta + cfg.ridge;
    for (Eigen::Index p = 0; p < lam.size(); ++p)
        for (Eigen::Index q = 0; q < lam.size(); ++q)
            if (0.5 * (lam(p) + lam(q)) + shift <= 0)
                throw NumericalError("learn: singular normal matrix; set ridge > 0");

    // a-step normal matrix is constant across iterations.
    Matrix a_normal = Matrix::Zero(m, m);
    for (int c1 = 0; c1 < m; ++c1)
        for (int c2 = c1; c2 < m; ++c2) {
            const double dot = cfg.beta * r_mats[static_cast<std::size_t>(c1)]
                                              .cwiseProduct(r_mats[static_cast<std::size_t>(c2)])
                                              .sum();
            a_normal(c1, c2) = dot;
            a_normal(c2, c1) = dot;
        }
    a_normal += cfg.ridge * Matrix::Identity(m, m);

    Vector a = Vector::Zero(m);
    Matrix f0 = Matrix::Zero(n0, n0);
    LearnResult result;
    double prev = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        // F0-step given a.
        Matrix m0 = Matrix::Zero(n0, n0);
        if (cfg.beta > 0.0) {
            Matrix lifted = Matrix::Zero(n0, s.n());
            for (int c = 0; c < m; ++c) lifted += a(c) * r_mats[static_cast<std::size_t>(c)];
            for (int p = 0; p < n0; ++p)
                for (int q = 0; q < n0; ++q) m0(p, q) = lifted(p, v0[static_cast<std::size_t>(q)]);
        }
        const Matrix rhs = cross_sym + cfg.beta * 0.5 * (m0 + m0.transpose());
        const Matrix rhs_t = v_basis.transpose() * rhs * v_basis;
        Matrix f0_t(n0, n0);
        for (int p = 0; p < n0; ++p)
            for (int q = 0; q < n0; ++q)
                f0_t(p, q) = rhs_t(p, q) / (0.5 * (lam(p) + lam(q)) + shift);
        f0 = v_basis * f0_t * v_basis.transpose();
        f0 = 0.5 * (f0 + f0.transpose());  // scrub rounding asymmetry

        // a-step given F0.
        if (cfg.beta > 0.0 && m > 0) {
            Vector rhs_a(m);
            for (int c = 0; c < m; ++c) {
                double acc = 0.0;
                for (int p = 0; p < n0; ++p)
                    for (int q = 0; q < n0; ++q)
                        acc += r_mats[static_cast<std::size_t>(c)](p, v0[static_cast<std::size_t>(q)]) * f0(p, q);
                rhs_a(c) = cfg.beta * acc;
            }
            Eigen::LDLT<Matrix> ldlt(a_normal);
            check_solvable_or_throw(ldlt, cfg.ridge);
            a = ldlt.solve(rhs_a);
        }

        const double objective =
            learn_objective(obs, spec, s, cfg, coeffs_from_vector(spec, a), f0);
        result.residual_history.push_back(objective);
        if (std::abs(prev - objective) <= 1e-13 * (1.0 + std::abs(objective))) break;
        prev = objective;
    }

    result.F0 = f0;
    result.F = SsiFilter(spec, coeffs_from_vector(spec, a));
    result.objective = result.residual_history.back();
    return result;
}

}  // namespace

LearnResult learn(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                  const LearnConfig& cfg) {
    cfg.validate();
    if (spec.ambient_n() != s.n()) throw ValidationError("learn: spec and shift dimension mismatch");
    return cfg.solver == LearnSolver::ClosedForm ? solve_closed_form(obs, spec, s, cfg)
                                                 : solve_alternating(obs, spec, s, cfg);
}

double learn_objective(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                       const LearnConfig& cfg, const std::vector<std::vector<double>>& coeffs,
                       const Matrix& f0) {
    const double data = (obs.Xp - obs.X * f0).squaredNorm();

    const SsiFilter filter(spec, coeffs);
    const Matrix full = materialize(filter, s);
    Matrix residual(obs.n0(), s.n());
    const auto& v0 = obs.V0.members();
    for (int p = 0; p < obs.n0(); ++p) residual.row(p) = full.row(v0[static_cast<std::size_t>(p)]);
    for (int q = 0; q < obs.n0(); ++q) residual.col(v0[static_cast<std::size_t>(q)]) -= f0.col(q);

    const Vector a = coeffs_to_vector(spec, coeffs);
    return data + cfg.beta * residual.squaredNorm() +
           cfg.ridge * (a.squaredNorm() + f0.squaredNorm());
}

Vector learn_gradient(const ObservationSet& obs, const BankSpec& spec, const ShiftOperator& s,
                      const LearnConfig& cfg, const std::vector<std::vector<double>>& coeffs,
                      const Matrix& f0) {
    const Assembled sys = assemble_normal_equations(obs, spec, s, cfg, true);
    Vector theta(sys.m + vech_size(obs.n0()));
    theta.head(sys.m) = coeffs_to_vector(spec, coeffs);
    for (int p = 0; p < obs.n0(); ++p)
        for (int q = p; q < obs.n0(); ++q)
            theta(sys.m + vech_index(p, q, obs.n0())) = f0(p, q);
    return 2.0 * (sys.N * theta - sys.b);
}

Vector learn_pack(const BankSpec& spec, const std::vector<std::vector<double>>& coeffs,
                  const Matrix& f0) {
    const int n0 = static_cast<int>(f0.rows());
    Vector theta(spec.candidate_count() + vech_size(n0));
    theta.head(spec.candidate_count()) = coeffs_to_vector(spec, coeffs);
    for (int p = 0; p < n0; ++p)
        for (int q = p; q < n0; ++q)
            theta(spec.candidate_count() + vech_index(p, q, n0)) = f0(p, q);
    return theta;
}

void learn_unpack(const BankSpec& spec, int n0, const Vector& theta,
                  std::vector<std::vector<double>>& coeffs, Matrix& f0) {
    coeffs = coeffs_from_vector(spec, theta.head(spec.candidate_count()));
    f0 = unvech(theta, spec.candidate_count(), n0);
}

double recovery_error(const Matrix& f0, const ObservationSet& obs) {
    if (f0.rows() != obs.n0() || f0.cols() != obs.n0())
        throw ValidationError("recovery_error: shape mismatch");
    double total = 0.0;
    for (int t = 0; t < obs.T(); ++t)
        total += (obs.Xp.row(t).transpose() - f0 * obs.X.row(t).transpose()).norm();
    return total / obs.T();
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

namespace {

// Minimum-norm least squares for  min ||A c - y||^2 + ridge ||c||^2.
Vector fit_polynomial_coeffs(const Matrix& design, const Vector& target, double ridge) {
    if (ridge > 0.0) {
        const int m = static_cast<int>(design.cols());
        Matrix normal = design.transpose() * design + ridge * Matrix::Identity(m, m);
        return Eigen::LDLT<Matrix>(normal).solve(design.transpose() * target);
    }
    return design.completeOrthogonalDecomposition().solve(target);
}

}  // namespace

LearnResult baseline_subgraph_si(const ObservationSet& obs, const Graph& g, int degree,
                                 double ridge) {
    if (degree < 0 || degree > obs.n0() - 1)
        throw ValidationError("baseline_subgraph_si: need 0 <= degree <= |V0|-1");
    auto [h0, ids] = induced_subgraph(g, obs.V0);
    (void)ids;
    const Matrix l0 = laplacian(h0);

    const int n0 = obs.n0();
    const int t_count = obs.T();
    Matrix design(t_count * n0, degree + 1);
    Vector target(t_count * n0);
    Matrix powered = obs.X;  // row t holds (L^j x_t)^T for the current j
    for (int j = 0; j <= degree; ++j) {
        if (j > 0) powered = powered * l0;  // (L^j X^T)^T = X L^j for symmetric L
        for (int t = 0; t < t_count; ++t)
            design.block(t * n0, j, n0, 1) = powered.row(t).transpose();
    }
    for (int t = 0; t < t_count; ++t) target.segment(t * n0, n0) = obs.Xp.row(t).transpose();

    const Vector c = fit_polynomial_coeffs(design, target, ridge);
    std::vector<double> poly(c.data(), c.data() + c.size());

    LearnResult result;
    result.F0 = polynomial_in_matrix(l0, poly);
    result.objective = (design * c - target).squaredNorm() + ridge * c.squaredNorm();
    result.residual_history = {result.objective};
    return result;
}

LearnResult baseline_gi(const ObservationSet& obs, const Graph& g, const ShiftOperator& s,
                        int bandwidth, int degree, double ridge) {
    if (bandwidth < 1 || bandwidth > s.n())
        throw ValidationError("baseline_gi: need 1 <= bandwidth <= n");
    if (degree < 0) throw ValidationError("baseline_gi: degree must be >= 0");
    if (g.n() != s.n()) throw ValidationError("baseline_gi: graph and shift dimension mismatch");

    const Matrix u_low = s.real_eigenbasis().leftCols(bandwidth);
    const auto& v0 = obs.V0.members();
    Matrix observed_rows(obs.n0(), bandwidth);
    for (int p = 0; p < obs.n0(); ++p) observed_rows.row(p) = u_low.row(v0[static_cast<std::size_t>(p)]);
    const Matrix lift = u_low * observed_rows.completeOrthogonalDecomposition().pseudoInverse();

    // Lifted pairs as columns.
    const Matrix lifted_y = lift * obs.X.transpose();    // n x T
    const Matrix lifted_z = lift * obs.Xp.transpose();  // n x T

    const Matrix& l_full = s.matrix();
    const int n = s.n();
    const int t_count = obs.T();
    Matrix design(t_count * n, degree + 1);
    Vector target(t_count * n);
    Matrix powered = lifted_y;
    for (int j = 0; j <= degree; ++j) {
        if (j > 0) powered = l_full * powered;
        for (int t = 0; t < t_count; ++t)
            design.block(t * n, j, n, 1) = powered.col(t);
    }
    for (int t = 0; t < t_count; ++t) target.segment(t * n, n) = lifted_z.col(t);

    const Vector c = fit_polynomial_coeffs(design, target, ridge);
    std::vector<double> poly(c.data(), c.data() + c.size());

    const Matrix filter_full = polynomial_in_matrix(l_full, poly);
    const Matrix filtered_lift = filter_full * lift;  // n x n0
    Matrix f0(obs.n0(), obs.n0());
    for (int p = 0; p < obs.n0(); ++p) f0.row(p) = filtered_lift.row(v0[static_cast<std::size_t>(p)]);

    LearnResult result;
    result.F0 = f0;
    result.objective = (design * c - target).squaredNorm() + ridge * c.squaredNorm();
    result.residual_history = {result.objective};
    return result;
}

// ---------------------------------------------------------------------------
// Experiment protocol
// ---------------------------------------------------------------------------

namespace {

VertexSet sample_vertex_subset(int n, int count, Rng& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
    for (int i = 0; i < count; ++i) {
        const int j = static_cast<int>(rng.uniform_int(i, n - 1));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return VertexSet(std::move(pool), n);
}

ObservationSet draw_observations(const ShiftOperator& s, const Matrix& truth,
                                 const VertexSet& v0, int t_count, Rng& rng) {
    Matrix x(t_count, v0.size()), xp(t_count, v0.size());
    for (int t = 0; t < t_count; ++t) {
        const Vector y = random_signal_gft(s, rng);
        const Vector z = truth * y;
        for (int p = 0; p < v0.size(); ++p) {
            x(t, p) = y(v0.members()[static_cast<std::size_t>(p)]);
            xp(t, p) = z(v0.members()[static_cast<std::size_t>(p)]);
        }
    }
    return ObservationSet(v0, std::move(x), std::move(xp));
}

}  // namespace

TrialRecord run_trial(const Graph& g, const ShiftOperator& s, const TrialParams& params) {
    if (params.T < 1) throw ValidationError("run_trial: T must be >= 1");
    const int n = g.n();

    Rng rng_v0(Rng::derive(params.seed, {1}));
    Rng rng_truth(Rng::derive(params.seed, {2}));
    Rng rng_train(Rng::derive(params.seed, {3}));
    Rng rng_eval(Rng::derive(params.seed, {4}));

    VertexSet v0 = params.v0_explicit.empty()
                       ? sample_vertex_subset(
                             n, std::max(1, static_cast<int>(std::lround(params.v0_fraction * n))),
                             rng_v0)
                       : VertexSet(params.v0_explicit, n);

    TrialRecord record;
    record.v0 = v0.members();
    for (double& c : record.truth_coeffs) c = rng_truth.uniform01();
    const Matrix truth = polynomial_in_matrix(
        s.matrix(), {record.truth_coeffs[0], record.truth_coeffs[1], record.truth_coeffs[2]});

    const ObservationSet train = draw_observations(s, truth, v0, params.T, rng_train);
    const ObservationSet eval = draw_observations(s, truth, v0, params.T, rng_eval);

    const BankSpec spec = build_support(g, v0, params.r);
    LearnConfig cfg;
    cfg.r = params.r;
    cfg.beta = params.beta;
    cfg.ridge = params.ridge;
    const LearnResult ssi_fit = learn(train, spec, s, cfg);
    record.ssi = {recovery_error(ssi_fit.F0, train), recovery_error(ssi_fit.F0, eval),
                  ssi_fit.objective};

    const int degree = std::min(params.baseline_degree, v0.size() - 1);
    const LearnResult lh0_fit = baseline_subgraph_si(train, g, degree, params.ridge);
    record.lh0 = {recovery_error(lh0_fit.F0, train), recovery_error(lh0_fit.F0, eval),
                  lh0_fit.objective};

    const int bandwidth = params.gi_bandwidth > 0 ? params.gi_bandwidth : v0.size();
    const LearnResult gi_fit =
        baseline_gi(train, g, s, std::min(bandwidth, n), params.baseline_degree, params.ridge);
    record.gi = {recovery_error(gi_fit.F0, train), recovery_error(gi_fit.F0, eval),
                 gi_fit.objective};

    return record;
}

}  // namespace ssi
