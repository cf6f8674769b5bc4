/// \file su3.hpp
/// \brief Real action-angle variables on SU(3): spectral actions, the cubic
///        spectral identity, Liouville angles via elliptic integrals, and the
///        pendulum reduction of the diagonal-phase dynamics.

#pragma once

#include <vector>

#include "mgflow/matrix.hpp"
#include "mgflow/rng.hpp"

namespace mgflow {

/// Validated special-unitary 3x3 point: a a* = 1 and det a = 1 to 1e-10.
/// On such points the cofactor matrix is the entrywise conjugate of a.
struct SU3Point {
    Mat a;
    explicit SU3Point(const Mat& m);
};

/// Values of the canonical log chart on 3x3 matrices,
///   p1 = log(a11 A11), p2 = log(a11 a22 a33), p3 = log(a33 A33),
///   q1 = i log(a23 A13 / (a32 A31)),
///   q2 = i log(a21 A31 a32 / (a12 A13 a23)),
///   q3 = i log(A13 a12 / (A31 a21)),
/// with A the cofactor matrix and principal log branches throughout.
struct SU3Chart {
    cd p[3];
    cd q[3];
};

/// Entrywise gradients of the six chart functions (same ordering as SU3Chart).
struct SU3ChartGradients {
    Mat dp[3];
    Mat dq[3];
};

SU3Chart su3_chart(const Mat& a);
SU3ChartGradients su3_chart_gradients(const Mat& a);

/// Action-side data at a point of SL(3,C): the three spectral actions
/// I_j = a_jj A_jj (real on the unitary slice), the diagonal product
/// zeta = a11 a22 a33, the dependent invariant I0 = I2 - I1 - I3 - 1,
/// rho = sqrt(I1 I2 I3), the unwrapped phase omega, the chart values, and
/// the angle variables Theta_j once computed.
struct ActionAngleState {
    double I1 = 0.0, I2 = 0.0, I3 = 0.0;
    double I0 = 0.0;
    double rho = 0.0;
    cd zeta;
    double omega = 0.0;
    cd p[3];
    cd q[3];
    cd theta[3];
    bool chart_valid = false;     ///< chart logs were all well defined
    bool branch_ambiguous = false;///< |zeta| too small to pin the phase branch
};

/// Compute the action-side data (I_j, zeta, I0, rho, omega) together with the
/// chart values when defined.  `previous_omega`, when supplied, selects the
/// 2*pi branch of omega nearest the previous trajectory sample.
ActionAngleState actions(const Mat& a, const double* previous_omega = nullptr);

/// Left-hand side of the cubic spectral identity
///   (zeta I0 + 2 I1 I3)^2 + 4 cos^2(q2/2)(zeta - I1)(zeta - I3)(zeta - I1 I3),
/// evaluated with the complex invariants; vanishes identically on SL(3,C).
cd spectral_identity_residual(const Mat& a);

/// Nonzero roots alpha, beta of the deflated cubic
///   4 z^3 + c2 z^2 + c1 z,  c2 = I0^2 - 4(I1+I3+I1 I3),
///   c1 = 4 I1 I3 (I0 + 1 + I1 + I3);
/// the remaining root is z = 0 and alpha*beta = I1 I2 I3.
void spectral_roots(double i1, double i3, double i0, cd& alpha, cd& beta);

/// Angle variables Theta_j conjugate to the actions, with the elliptic-curve
/// roots used along the way.  Theta_2 is the second-kind-free period integral
/// of dzeta / sqrt(F+G); Theta_1 and Theta_3 add first- and third-kind terms
/// to q_j / I_j.  Computed by panelled Gauss-Legendre quadrature along the
/// straight zeta path from zeta(a) to -2 I1 I3 / I0 with branch continuation.
struct AngleVariables {
    cd theta[3];
    cd alpha, beta;  ///< nonzero roots of the spectral cubic
    cd sigma;        ///< unit calibration factor for the sqrt branch
};
AngleVariables angle_variables(const ActionAngleState& state, int panels = 16);

/// Theta_2 evaluated by per-leg Carlson RF along the same zeta path
/// (duplication-theorem elliptic integrals, used to cross-check quadrature).
cd angle_theta2_carlson(const ActionAngleState& state, int nlegs = 8);

/// One recorded sample of the pendulum trajectory.
struct PendulumSample {
    double t = 0.0;
    double action[3] = {0.0, 0.0, 0.0};  ///< I1, I2, I3
    double omega = 0.0;                  ///< unwrapped diagonal phase
    double omega_dot = 0.0;              ///< d(omega)/dt along the flow
    cd residual;                         ///< spectral identity residual
    double mod2[9] = {0.0};              ///< |a_jk|^2 row-major
    Mat a;                               ///< the (re-unitarized) point
};

/// Entrywise gradient of log(a22 A22) (the log of the middle action).
Mat log_i2_gradient(const Mat& a);

/// Integrate a' = -i (log I2, .) with the coordinate bivector, fixed-step
/// RK4 with polar re-unitarization after every step; records the sample data
/// at every step including both endpoints.  Throws StratumExit when the
/// trajectory reaches a degenerate stratum and StepFailure on numerical
/// breakdown.
std::vector<PendulumSample> pendulum_flow(const SU3Point& start, double t_final,
                                          int steps);

/// Random special-unitary point rotated (in the first two rows) onto the
/// stratum I2 = |a22|^2 = 2^{-1/2}, where the pendulum frequency relation
/// takes its normalized form.
Mat unitary_stratum_point(Rng& rng);

} // namespace mgflow
