/// \file test_numerics.cpp
/// \brief Carlson integrals, Gauss-Legendre/Kronrod quadrature, and the
///        adaptive Runge-Kutta integrator.
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mgflow/carlson.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/ode.hpp"
#include "mgflow/quadrature.hpp"

using namespace mgflow;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Carlson R_F reference values") {
    // Carlson, Numerical Algorithms 10, 13-26 (1995), section 3.
    CHECK(std::abs(carlson_rf(cd(1, 0), cd(2, 0), cd(0, 0)) - cd(1.3110287771461, 0)) <
          1e-12);
    CHECK(std::abs(carlson_rf(cd(0, 1), cd(0, -1), cd(0, 0)) - cd(1.8540746773014, 0)) <
          1e-12);
    CHECK(std::abs(carlson_rf(cd(-1, 1), cd(0, 1), cd(0, 0)) -
                   cd(0.79612586584234, -1.2138566698365)) < 1e-12);
    CHECK(std::abs(carlson_rf(cd(2, 0), cd(3, 0), cd(4, 0)) -
                   cd(0.58408284167715, 0)) < 1e-11);
}

TEST_CASE("Carlson R_C and R_J reference values") {
    CHECK(std::abs(carlson_rc(cd(0, 0), cd(0.25, 0)) - cd(kPi, 0)) < 1e-12);
    CHECK(std::abs(carlson_rj(cd(0, 0), cd(1, 0), cd(2, 0), cd(3, 0)) -
                   cd(0.77688623778582, 0)) < 1e-11);
    CHECK(std::abs(carlson_rj(cd(0, 1), cd(0, -1), cd(0, 0), cd(2, 0)) -
                   cd(1.6490011662711, 0)) < 1e-11);
}

TEST_CASE("Carlson R_F symmetry and homogeneity") {
    const cd x(1.3, 0.4), y(0.7, -0.2), z(2.1, 0.9);
    const cd base = carlson_rf(x, y, z);
    CHECK(std::abs(carlson_rf(y, z, x) - base) < 1e-13);
    const double lam = 2.5;
    CHECK(std::abs(carlson_rf(lam * x, lam * y, lam * z) - base / std::sqrt(lam)) < 1e-13);
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    const GaussLegendre& gl = gauss_legendre(8);
    REQUIRE(gl.nodes.size() == 8);
    double wsum = 0.0;
    for (double w : gl.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-14);
    // degree 15 monomial on [-1, 1]
    double acc = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i)
        acc += gl.weights[i] * std::pow(gl.nodes[i], 14);
    CHECK(std::abs(acc - 2.0 / 15.0) < 1e-14);
}

TEST_CASE("panel quadrature and adaptive quadrature agree") {
    const auto f = [](double x) { return std::exp(cd(0.0, 3.0 * x)) / cd(1.0 + x * x, 0.0); };
    const cd a = integrate_gl(f, -1.0, 2.0, 32, 8);
    const cd b = integrate_gk_adaptive(f, -1.0, 2.0, 1e-13);
    CHECK(std::abs(a - b) < 1e-11);
    // oracle: integral of exp(3ix) over [0, pi/3] = (exp(i pi) - 1)/(3i)
    const cd c = integrate_gk_adaptive([](double x) { return std::exp(cd(0.0, 3.0 * x)); },
                                       0.0, kPi / 3.0, 1e-13);
    CHECK(std::abs(c - (std::exp(cd(0.0, kPi)) - cd(1.0, 0.0)) / cd(0.0, 3.0)) < 1e-12);
}

TEST_CASE("trapezoid rules") {
    // f(x) = x^2 on [0, 1] with 101 samples: trapezoid error = h^2/6 exactly
    const int m = 101;
    const double h = 1.0 / (m - 1);
    std::vector<cd> samples(m);
    for (int i = 0; i < m; ++i) samples[static_cast<size_t>(i)] = cd(h * i * h * i, 0.0);
    const cd integral = trapezoid(samples, h);
    CHECK(std::abs(integral - cd(1.0 / 3.0 + h * h / 6.0, 0.0)) < 1e-14);
    const std::vector<cd> cum = cumulative_trapezoid(samples, h);
    REQUIRE(cum.size() == samples.size());
    CHECK(std::abs(cum.front()) == 0.0);
    CHECK(std::abs(cum.back() - integral) < 1e-14);
}

TEST_CASE("adaptive Runge-Kutta on a rotating phase") {
    // y' = i y, y(0) = 1: y(t) = exp(it)
    const OdeRhs rhs = [](double, const std::vector<cd>& y, std::vector<cd>& dy) {
        dy[0] = cd(0.0, 1.0) * y[0];
    };
    OdeOptions opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-14;
    const std::vector<cd> y = ode_integrate(rhs, 0.0, {cd(1.0, 0.0)}, 5.0, opts);
    CHECK(std::abs(y[0] - std::exp(cd(0.0, 5.0))) < 1e-10);
}

TEST_CASE("integrator reports observer aborts and tolerance collapse") {
    const OdeRhs stiff = [](double t, const std::vector<cd>& y, std::vector<cd>& dy) {
        (void)t;
        dy[0] = y[0] * y[0]; // blows up in finite time from y(0) = 1 at t = 1
    };
    OdeOptions opts;
    opts.rtol = 1e-10;
    opts.atol = 1e-12;
    opts.max_steps = 100000;
    CHECK_THROWS_AS(ode_integrate(stiff, 0.0, {cd(1.0, 0.0)}, 2.0, opts), Error);
}
