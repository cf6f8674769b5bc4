/// \file carlson.hpp
/// \brief Carlson symmetric elliptic integrals R_F, R_C, R_J for complex
///        arguments, after Carlson, Numerical Algorithms 10, 13-26 (1995).
///
/// The duplication iterations converge for the principal square-root branch
/// as long as the arguments avoid the negative real axis pinch; the callers
/// in this library arrange their branch points accordingly.
#pragma once

#include "mgflow/matrix.hpp"

namespace mgflow {

/// R_F(x, y, z): at most one argument may be zero.
cd carlson_rf(cd x, cd y, cd z, double tol = 1e-14);

/// R_C(x, y) = R_F(x, y, y) degenerate case (y off the negative real axis).
cd carlson_rc(cd x, cd y, double tol = 1e-14);

/// R_J(x, y, z, p), principal branch.
cd carlson_rj(cd x, cd y, cd z, cd p, double tol = 1e-14);

} // namespace mgflow
