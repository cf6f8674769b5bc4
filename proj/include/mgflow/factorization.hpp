/// \file factorization.hpp
/// \brief Triangular factorizations a = a_+ v_+^{-1} = a_- v_-^{-1} and the
///        Gauss (LDU) factorization of unit-triangular products.
///
/// Shapes: a_plus upper-triangular, v_plus unit lower-triangular,
///         a_minus lower-triangular, v_minus unit upper-triangular.
/// The diagonals satisfy
///         (delta_plus)_jj  = dminus(j) / dminus(j+1)   (trailing minors),
///         (delta_minus)_jj = dplus(j)  / dplus(j-1)    (leading minors),
/// and delta = delta_minus^{-1} delta_plus.
#pragma once

#include "mgflow/matrix.hpp"

namespace mgflow {

/// Default relative threshold below which a pivot counts as a vanished
/// principal minor.  Pivots are compared against singular_tol times a
/// Hadamard-type scale of the submatrix feeding them.
inline constexpr double kSingularTol = 1e-10;

/// Residual tolerance factor for factorization identities (scaled by the
/// matrix norm in verification code).
inline constexpr double kTolFactor = 1e-9;

struct TriangularFactorization {
    Mat a_plus;      ///< upper-triangular
    Mat a_minus;     ///< lower-triangular
    Mat v_plus;      ///< unit lower-triangular
    Mat v_minus;     ///< unit upper-triangular
    Mat delta_plus;  ///< diag(a_plus)
    Mat delta_minus; ///< diag(a_minus)
    Mat delta;       ///< delta_minus^{-1} * delta_plus
};

/// Both one-sided factorizations of a point of GL_*.
/// Throws NotInGLStar(j, side) when a required principal minor is
/// numerically zero (side "minus" <-> leading minors, "plus" <-> trailing).
TriangularFactorization factorize(const Mat& a, double singular_tol = kSingularTol);

/// Gauss factorization v = b_minus^{-1} * delta * b_plus of an invertible
/// matrix whose leading principal minors are nonzero; equivalently the
/// standard LDU factorization v = L * delta * b_plus with b_minus = L^{-1}.
/// b_minus is unit lower-triangular and b_plus unit upper-triangular.
/// Throws SingularLeadingMinor(j) on a vanished leading minor.
struct GaussFactorization {
    Mat b_minus; ///< unit lower-triangular (inverse of the L factor)
    Mat delta;   ///< diagonal
    Mat b_plus;  ///< unit upper-triangular
};

GaussFactorization gauss_factorize(const Mat& v, double singular_tol = kSingularTol);

/// Casimir ladder phi_j = dplus(j) / dminus(j+1) for j < n, phi_n = det a.
std::vector<cd> casimir_values(const Mat& a);

/// Inverse of a unit lower/upper triangular matrix by forward/back
/// substitution (exact unit diagonal preserved).
Mat invert_unit_lower(const Mat& l);
Mat invert_unit_upper(const Mat& u);

} // namespace mgflow
