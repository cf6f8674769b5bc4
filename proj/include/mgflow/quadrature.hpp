/// \file quadrature.hpp
/// \brief Gauss-Legendre panels and an adaptive Gauss-Kronrod 7/15 rule for
///        complex-valued integrands of a real parameter.
#pragma once

#include <functional>
#include <vector>

#include "mgflow/matrix.hpp"

namespace mgflow {

/// Nodes/weights on [-1, 1], computed by Newton iteration on the Legendre
/// polynomial (Golub-Welsch is unnecessary at these sizes).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int npoints);

/// Integral of f over [a, b] with fixed Gauss-Legendre panels.
cd integrate_gl(const std::function<cd(double)>& f, double a, double b, int npoints,
                int npanels);

/// Adaptive Gauss-Kronrod 7/15 bisection until |K15 - G7| <= tol * max(1, |I|)
/// on every panel.  Throws Error when the recursion depth limit is reached.
cd integrate_gk_adaptive(const std::function<cd(double)>& f, double a, double b,
                         double tol = 1e-12);

/// Trapezoid rule over uniformly spaced samples with spacing h.
cd trapezoid(const std::vector<cd>& samples, double h);

/// Cumulative trapezoid: out[i] = integral of the samples from index 0 to i.
std::vector<cd> cumulative_trapezoid(const std::vector<cd>& samples, double h);

} // namespace mgflow
