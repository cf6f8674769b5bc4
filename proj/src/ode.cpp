/// \file ode.cpp
/// \brief Embedded Runge-Kutta 4(5) pair of Dormand & Prince (J. Comp.
///        Appl. Math. 6, 19-26 (1980)) with standard PI-free step control.

#include "mgflow/ode.hpp"

#include <algorithm>
#include <cmath>

#include "mgflow/errors.hpp"

namespace mgflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Difference between the 5th-order weights and the embedded 4th-order ones.
constexpr double kE[7] = {71.0 / 57600,    0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

bool all_finite(const std::vector<cd>& v) {
    for (const cd& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace

std::vector<cd> ode_integrate(const OdeRhs& rhs, double t0, std::vector<cd> y,
                              double t1, const OdeOptions& opts,
                              const OdeObserver& observer) {
    const size_t dim = y.size();
    const double span = t1 - t0;
    if (span == 0.0) return y;
    const double dir = span > 0.0 ? 1.0 : -1.0;

    double h = opts.init_step > 0.0 ? opts.init_step : std::abs(span) / 100.0;
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
    h = std::min(h, std::abs(span));
    h *= dir;

    std::vector<std::vector<cd>> k(7, std::vector<cd>(dim));
    std::vector<cd> ytmp(dim), ynew(dim);
    rhs(t0, y, k[0]);

    double t = t0;
    long steps = 0;
    const double hmin = std::abs(span) * 1e-14;

    while (dir * (t1 - t) > 0.0) {
        if (++steps > opts.max_steps) throw OdeFailure("ode_integrate: step budget exhausted");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < hmin) throw StepFailure("ode_integrate: step size collapsed");

        for (int s = 1; s < 7; ++s) {
            for (size_t i = 0; i < dim; ++i) {
                cd acc(0.0, 0.0);
                for (int m = 0; m < s; ++m) acc += kA[s][m] * k[static_cast<size_t>(m)][i];
                ytmp[i] = y[i] + h * acc;
            }
            rhs(t + kC[s] * h, ytmp, k[static_cast<size_t>(s)]);
        }
        // The 5th-order solution reuses the last stage's coefficients (FSAL).
        for (size_t i = 0; i < dim; ++i) {
            cd acc(0.0, 0.0);
            for (int m = 0; m < 6; ++m) acc += kA[6][m] * k[static_cast<size_t>(m)][i];
            ynew[i] = y[i] + h * acc;
        }
        if (!all_finite(ynew)) throw OdeFailure("ode_integrate: non-finite state");

        double err2 = 0.0;
        for (size_t i = 0; i < dim; ++i) {
            cd e(0.0, 0.0);
            for (int m = 0; m < 7; ++m) e += kE[m] * k[static_cast<size_t>(m)][i];
            const double scale =
                opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err2 += std::norm(h * e / scale);
        }
        const double err = std::sqrt(err2 / static_cast<double>(std::max<size_t>(dim, 1)));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            std::swap(k[0], k[6]); // FSAL: last stage is the next first stage
            if (observer) observer(t, y);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 10.0);
        h *= factor;
        if (opts.max_step > 0.0 && std::abs(h) > opts.max_step) h = dir * opts.max_step;
    }
    return y;
}

} // namespace mgflow
