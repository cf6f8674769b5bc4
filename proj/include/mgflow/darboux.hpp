/// \file darboux.hpp
/// \brief The symplectic form on GL_* and its Darboux charts: the two-form
///        evaluated through the triangular factorization, log-minor-ratio
///        coordinates along a transposition schedule, analytic chart
///        differentials, and the order-two symmetries.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mgflow/factorization.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/schedule.hpp"

namespace mgflow {

/// Point plus direction; the direction is an unconstrained n x n matrix.
struct TangentVector {
    Mat base;
    Mat direction;
};

/// Log-minor-ratio chart along a schedule, with the Casimir ladder.
struct DarbouxChart {
    std::vector<cd> p; ///< N = (n^2 - n)/2 values
    std::vector<cd> q; ///< N values, principal branch (defined modulo 2*pi*i)
    PermutationSchedule schedule;
    std::vector<cd> casimirs; ///< phi_1 .. phi_n
};

/// The two-form evaluated via the analytic differentials of the triangular
/// factors: for each sign, M = a_pm^{-1} (adot) v_pm splits into the
/// triangular part Y = a_pm^{-1} da_pm and strictly-triangular complement
/// -X with X = v_pm^{-1} dv_pm; the value is
/// tr[X1+ Y2+ - X2+ Y1+] - tr[X1- Y2- - X2- Y1-].
cd omega_eval(const TangentVector& t1, const TangentVector& t2,
              double singular_tol = kSingularTol);

/// Equivalent expression tr[W1 Z2 - W2 Z1] with W = (dv_+)v_+^{-1} -
/// (dv_-)v_-^{-1} and Z = a^{-1} adot; used as a cross-oracle.
cd omega_eval_alt(const TangentVector& t1, const TangentVector& t2,
                  double singular_tol = kSingularTol);

/// Chart values at a: for step nu at position k (with J = (1..k-1), minors
/// taken of b = r_{nu-1}^{-1} a r_{nu-1}),
///   p_nu = log[ m(J,k; J,k) m(J,k+1; J,k+1) / (m(J;J) m(J,k,k+1; J,k,k+1)) ]
///   q_nu = log[ m(J,k+1; J,k) / m(J,k; J,k+1) ]
/// principal branch.  Throws DegeneratePoint(nu) when a required minor
/// vanishes numerically.
DarbouxChart darboux_coordinates(const Mat& a, const PermutationSchedule& schedule,
                                 double singular_tol = kSingularTol);

/// Analytic gradients of all chart coordinates (Jacobi's formula on the
/// defining submatrices, mapped back through the permutation).
struct ChartGradients {
    std::vector<Mat> dp;
    std::vector<Mat> dq;
};
ChartGradients chart_gradients(const Mat& a, const PermutationSchedule& schedule,
                               double singular_tol = kSingularTol);

/// Gradient of minor(a, rows, cols) with respect to the entries of a:
/// the signed cofactors of the submatrix scattered into full positions.
Mat minor_gradient(const Mat& a, const IndexSet& rows, const IndexSet& cols);

/// Gradient of the cofactor entry A_jk (0-based j, k) with respect to a.
Mat cofactor_entry_gradient(const Mat& a, int j, int k);

/// Max over `trials` random tangent pairs of
/// |Omega(t1, t2) - sum_nu [dp_nu(t1) dq_nu(t2) - dp_nu(t2) dq_nu(t1)]|.
double verify_decomposition(const Mat& a, const PermutationSchedule& schedule,
                            int trials, std::uint64_t seed = 2026);

/// Order-two symmetries of the form.
enum class Symmetry { TransposeInverse, AntidiagonalConjugation };

/// Omega evaluated at Phi(a) on pushed-forward tangents dPhi(adot); both
/// symmetries satisfy pullback = -Omega.
cd symmetry_pullback(const Mat& a, Symmetry which, const TangentVector& t1,
                     const TangentVector& t2);

/// Closed-form n = 3 chart built from matrix entries and cofactor entries:
///   p = ( log(a11 a22 / A33), log(A11 A33 / (det a * a22)), log(a22 a33 / A11) )
///   q = ( log(a21 / a12),     log(A13 / A31),               log(a32 / a23)   )
/// (1-based labels; A is the cofactor matrix).  Matches darboux_coordinates
/// with the default 3-schedule.
void chart_n3_closed_form(const Mat& a, std::vector<cd>& p, std::vector<cd>& q);

/// Analytic gradients of the closed-form n = 3 chart.
void chart_n3_closed_form_gradients(const Mat& a, std::vector<Mat>& dp,
                                    std::vector<Mat>& dq);

/// Entrywise pairing sum_jk grad_jk * dir_jk (complex-bilinear differential).
cd apply_gradient(const Mat& grad, const Mat& direction);

/// Shift `value` by the multiple of 2*pi*i that brings its imaginary part
/// nearest to `reference`; continuity helper for q_nu along flows.
cd unwrap_towards(cd value, cd reference);

} // namespace mgflow
