/// \file poisson.hpp
/// \brief The quadratic Poisson bracket on matrix space, its Casimirs and
///        conjugation flows, the generating Hamiltonian tr(mu log delta),
///        and the bilinear two-point bracket with its chart identities.
#pragma once

#include <functional>
#include <vector>

#include "mgflow/darboux.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/ode.hpp"
#include "mgflow/schedule.hpp"

namespace mgflow {

/// Scalar function of a matrix point with an (optional) analytic gradient
/// of partials d f / d a_jk.  When no gradient is supplied, a 5-point
/// central finite difference with step 1e-5 * scale is used; all functions
/// handled here are holomorphic in the entries, so a real-direction
/// difference recovers the complex partial.
struct SmoothFunction {
    std::function<cd(const Mat&)> evaluator;
    std::function<Mat(const Mat&)> gradient; ///< may be empty

    cd operator()(const Mat& a) const { return evaluator(a); }
    Mat grad(const Mat& a) const;
};

/// Finite-difference gradient used as the SmoothFunction fallback and as a
/// test oracle against analytic gradients.
Mat fd_gradient(const std::function<cd(const Mat&)>& f, const Mat& a,
                double step_scale = 1e-5);

/// Traceless diagonal generator mu.
struct DiagonalGenerator {
    explicit DiagonalGenerator(std::vector<cd> entries);
    const std::vector<cd>& mu() const { return mu_; }
    int n() const { return static_cast<int>(mu_.size()); }
    Mat matrix() const { return diag_mat(mu_); }

private:
    std::vector<cd> mu_;
};

/// sgn with sgn(0) = 0; shared by the pointwise and two-point brackets.
inline double sgn(int x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

/// Bivector component B_{jk,lm}(a) = (1/4)(sgn(l-j) - sgn(m-k)) a_jm a_lk
/// (0-based indices).
cd bracket_tensor(const Mat& a, int j, int k, int l, int m);

/// Pointwise bracket (f, g)(a) = sum df/da_jk dg/da_lm B_{jk,lm}(a).
cd bracket(const SmoothFunction& f, const SmoothFunction& g, const Mat& a);

/// Hamiltonian vector field: adot_jk = (h, a_jk) = sum_lm dh/da_lm B_{lm,jk}.
Mat hamiltonian_vector_field(const Mat& grad_h, const Mat& a);

/// Conjugation flow a(t) = exp(t mu / 2) a0 exp(-t mu / 2): the flow
/// generated by the Hamiltonian tr(mu log delta) under the quarter-
/// normalized bivector.  The rate convention is fixed by the chart: along
/// this flow every p_nu is constant and qdot_nu = mu_k - mu_j for the
/// step's label pair (j, k).
Mat linear_flow(const Mat& a0, const DiagonalGenerator& mu, double t);

/// H = tr(mu log delta) = sum_j mu_j log[(d-_j d+_{j-1}) / (d-_{j+1} d+_j)],
/// plus the coefficient vector c_nu with H = sum_nu c_nu p_nu for the
/// default schedule (c_nu = mu_k - mu_j for the step's label pair).
struct FlowHamiltonian {
    cd value;
    std::vector<cd> coefficients;
};
FlowHamiltonian flow_hamiltonian(const Mat& a, const DiagonalGenerator& mu);

/// SmoothFunction wrappers.
SmoothFunction coordinate_function(int j, int k);                     // a_jk, 0-based
SmoothFunction minor_function(IndexSet rows, IndexSet cols);          // m(rows; cols)
SmoothFunction casimir_function(int j, int n);                        // phi_j, 1-based j
SmoothFunction chart_p_function(const PermutationSchedule& s, int nu); // 1-based nu
SmoothFunction chart_q_function(const PermutationSchedule& s, int nu);
SmoothFunction flow_hamiltonian_function(const DiagonalGenerator& mu);
SmoothFunction product_function(const SmoothFunction& f, const SmoothFunction& g);
SmoothFunction scaled_function(const SmoothFunction& f, cd c);

/// Trajectory sample of hamiltonian_flow.
struct TrajectoryPoint {
    double t = 0.0;
    Mat a;
    double casimir_drift = 0.0; ///< max_j |phi_j(a(t)) - phi_j(a0)| / max(1, |phi_j(a0)|)
};

/// Default step control for bracket-generated flows.
OdeOptions flow_ode_options();

/// Integrates adot_jk = (h, a_jk) with an adaptive embedded Runge-Kutta
/// 4(5) pair, sampling the state at `steps` equal time intervals.  Throws
/// StepFailure on step collapse and StratumExit when a principal minor
/// magnitude falls below the singular threshold.
std::vector<TrajectoryPoint> hamiltonian_flow(const Mat& a0, const SmoothFunction& h,
                                              double t, int steps,
                                              const OdeOptions& opts = flow_ode_options());

/// Two-point bracket <f, g>(s1, s2) =
///   sum df/da_jk(s1) dg/da_lm(s2) s1_jk s2_lm (delta_jl - delta_km).
cd nonlocal_bracket(const SmoothFunction& f, const SmoothFunction& g, const Mat& s1,
                    const Mat& s2);

/// Index-set weight eps(J,K; J',K') = |J intersect J'| - |K intersect K'|:
/// the two-point bracket of minors is eps * m(J;K;s1) * m(J';K';s2).
int intersection_weight(const IndexSet& j1, const IndexSet& k1, const IndexSet& j2,
                        const IndexSet& k2);

/// Chart rescaling p -> p/2, q -> q/(2 pi i); under it the local part of the
/// scattering bracket has unit coefficients.
DarbouxChart renormalized_chart(const DarbouxChart& chart);

} // namespace mgflow
