/// \file ode.hpp
/// \brief Adaptive embedded Runge-Kutta 4(5) integration for complex
///        vector-valued ODEs (Dormand & Prince coefficients).
#pragma once

#include <functional>
#include <vector>

#include "mgflow/matrix.hpp"

namespace mgflow {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.0;  ///< 0 disables the cap
    double init_step = 0.0; ///< 0 selects automatically
    long max_steps = 2000000;
};

/// Right-hand side: rhs(t, y, dydt).
using OdeRhs = std::function<void(double, const std::vector<cd>&, std::vector<cd>&)>;

/// Called after each accepted step with (t, y); may throw to abort.
using OdeObserver = std::function<void(double, const std::vector<cd>&)>;

/// Integrates y' = rhs(t, y) from (t0, y0) to t1 and returns y(t1).
/// Error control: RMS of err_i / (atol + rtol * max(|y0_i|, |y1_i|)) <= 1.
/// Throws StepFailure when the step collapses, OdeFailure on non-finite
/// values or step-count exhaustion.
std::vector<cd> ode_integrate(const OdeRhs& rhs, double t0, std::vector<cd> y0,
                              double t1, const OdeOptions& opts,
                              const OdeObserver& observer = nullptr);

} // namespace mgflow
