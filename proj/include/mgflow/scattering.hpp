/// \file scattering.hpp
/// \brief Forward scattering for the first-order n x n spectral problem on
///        the line, the commutator hierarchy recursion, evolution of the
///        scattering matrix under the hierarchy flows, and the associated
///        Hamiltonian functionals.

#pragma once

#include <string>
#include <vector>

#include "mgflow/matrix.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/rng.hpp"

namespace mgflow {

/// Off-diagonal matrix potential sampled on a uniform grid over [-L, L].
struct Potential {
    double x0 = 0.0;            ///< left endpoint (-L)
    double h = 0.0;             ///< grid spacing
    std::vector<Mat> values;    ///< one zero-diagonal matrix per node
    bool skew = false;          ///< claims q + q* = 0 nodewise
    double tail_tol = 1e-12;    ///< endpoint decay bound

    int n() const { return values.empty() ? 0 : values.front().n(); }
    int nodes() const { return static_cast<int>(values.size()); }
    double x_at(int i) const { return x0 + h * i; }
    double half_width() const { return -x0; }

    /// Checks the type invariants: symmetric uniform grid, zero diagonals,
    /// endpoint tails below tail_tol, and (when flagged) skew-hermiticity.
    void validate() const;

    /// Value at an off-grid point by 6-point Lagrange interpolation.
    Mat at(double x) const;

    /// Trapezoid integral of the Frobenius norm (the small-norm functional).
    double l1_norm() const;
};

/// Spectral data: the diagonal matrix J = diag(i lambda_j) with strictly
/// decreasing real lambda, the xi evaluation grid, and ODE tolerances.
struct SpectralConfig {
    std::vector<double> lambda;
    std::vector<double> xi_grid;
    double rtol = 1e-10;
    double atol = 1e-12;
    double norm_cap = 25.0; ///< hard NormTooLarge threshold on the L1 norm

    int n() const { return static_cast<int>(lambda.size()); }
    Mat J() const;
    void validate() const;
    static std::vector<double> uniform_grid(double lo, double hi, int count);
};

/// Per-node scattering data: the scattering matrix and its triangular
/// factorization (s = s_pm v_pm^{-1}); nodes where the factorization fails
/// are flagged rather than fatal.
struct ScatteringNode {
    double xi = 0.0;
    Mat s;
    Mat v_plus, v_minus;
    Mat s_plus, s_minus;
    Mat delta_plus, delta_minus;
    bool flagged = false;
    std::string flag_reason;
};

struct ScatteringRecord {
    std::vector<ScatteringNode> nodes;
    std::vector<double> lambda; ///< spectral constants the record was built with
    double rtol = 0.0, atol = 0.0;
    bool skew = false;
    bool small_norm_warning = false; ///< L1 norm of q exceeded 1
    double q_l1 = 0.0;

    int n() const { return nodes.empty() ? 0 : nodes.front().s.n(); }
    int flagged_count() const;
};

/// One term of the commutator hierarchy, sampled on the potential's grid.
struct HierarchyTerm {
    int k = 0;
    std::vector<Mat> values;
    double residual = 0.0; ///< gridwise recursion residual (0 for k = 0)
};

/// Integrates m' = xi (J m - m J) + q m from m(-L) = 1 for every xi node and
/// records s(xi) = e^{-L xi J} m(L) e^{L xi J} with its factorization.
/// Throws NormTooLarge above cfg.norm_cap and OdeFailure on integrator
/// breakdown; factorization failures only flag the node.
ScatteringRecord forward_scatter(const Potential& q, const SpectralConfig& cfg);

/// Hierarchy terms F_0 = mu, ..., F_{k_max}: at each order the off-diagonal
/// part solves [J, F_{k+1}] = dF_k/dx - [q, F_k] entrywise and the diagonal
/// part is the cumulative trapezoid integral of diag([q, F_{k+1}^off]) from
/// -L (so F_{k+1}(-L) = 0 and the next stage stays solvable).  Derivatives
/// are 4th-order finite differences.  The sign on [q, F_k] follows the
/// convention fixed by the linearization check below; see the module notes.
/// Throws RecursionInconsistency when a gridwise residual exceeds
/// recursion_tol.
std::vector<HierarchyTerm> hierarchy_terms(const Potential& q, const SpectralConfig& cfg,
                                           const DiagonalGenerator& mu, int k_max,
                                           double recursion_tol = 1e-3);

/// Closed-form evolution s(xi, t) = exp(t xi^k mu) s(xi) exp(-t xi^k mu)
/// per node, with the triangular factors refreshed by refactorization.
ScatteringRecord evolve_scattering(const ScatteringRecord& rec, const DiagonalGenerator& mu,
                                   int k, double t);

/// One explicit Euler step q + dt [J, F_{k+1}] of the k-th hierarchy flow,
/// compared in scattering space against the linearized flow xi^k [mu, s]:
/// returns max_xi || (s(q_dt) - s(q))/dt - xi^k [mu, s(q)] ||.  First-order
/// accurate in dt by construction.
double linearization_check(const Potential& q, const DiagonalGenerator& mu, int k,
                           double dt, const SpectralConfig& cfg);

/// The k-th Hamiltonian functional
///   H_k = (1/2 pi i) Integral xi^k tr[mu log delta(xi)] dxi
/// by trapezoid quadrature over the record's grid, together with its
/// decomposition H_k = sum_nu c_nu * (1/2 pi i) Integral xi^k p_nu dxi.
struct HierarchyHamiltonian {
    cd value;
    std::vector<cd> coefficients;     ///< c_nu = mu_k - mu_j per label pair
    std::vector<cd> action_integrals; ///< (1/2 pi i) Integral xi^k p_nu dxi
    cd decomposition() const;
};
HierarchyHamiltonian hierarchy_hamiltonian(const ScatteringRecord& rec,
                                           const DiagonalGenerator& mu, int k);

/// Pointwise algebraic checks at each unflagged node:
/// - the local commutation relation [a_jk, a_lm] = 4 pi i (a_jk, a_lm),
/// - vanishing two-point brackets of the p_nu with every coordinate,
/// - unit local coefficients of the renormalized chart
///   (4 pi i (p_nu/2, q_nu'/(2 pi i)) = delta_{nu nu'}).
struct PointwiseBracketReport {
    double local_identity = 0.0;  ///< max |[.,.] - 4 pi i (.,.)|
    double action_locality = 0.0; ///< max |<p_nu, a_jk>|
    double renormalized = 0.0;    ///< max |4 pi i (p', q') - delta|
    int nodes_checked = 0;
};
PointwiseBracketReport pointwise_bracket_check(const ScatteringRecord& rec);

/// Gaussian-profile potential q(x) = c * exp(-x^2 / width^2) sampled on a
/// uniform grid over [-L, L]; c must have zero diagonal.
Potential gaussian_potential(const Mat& c, double half_width, double h, double width,
                             bool skew);

/// Random zero-diagonal coefficient matrix with the skew reduction
/// c_kj = -conj(c_jk).
Mat random_skew_coefficient(Rng& rng, int n, double scale);

} // namespace mgflow
