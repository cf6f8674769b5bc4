/// \file test_poisson.cpp
/// \brief Quadratic bracket identities, Casimirs, conjugation flows, and the
///        two-point bracket.
#include <doctest.h>

#include <cmath>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/schedule.hpp"

using namespace mgflow;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("reference bracket values at two-by-two") {
    Rng rng(13, "test.values", 0);
    const Mat a = random_glstar(rng, 2);
    const SmoothFunction a11 = coordinate_function(0, 0);
    const SmoothFunction a12 = coordinate_function(0, 1);
    const SmoothFunction a21 = coordinate_function(1, 0);
    const SmoothFunction a22 = coordinate_function(1, 1);
    CHECK(std::abs(bracket(a11, a22, a)) < 1e-14);
    CHECK(std::abs(bracket(a11, a21, a) - 0.25 * a(0, 0) * a(1, 0)) < 1e-14);
    CHECK(std::abs(bracket(a12, a21, a) - 0.5 * a(0, 0) * a(1, 1)) < 1e-14);
    CHECK(std::abs(bracket(a21, a12, a) + 0.5 * a(0, 0) * a(1, 1)) < 1e-14);
}

TEST_CASE("bracket is antisymmetric and satisfies Leibniz") {
    Rng rng(13, "test.leibniz", 0);
    const Mat a = random_glstar(rng, 3);
    const SmoothFunction f = coordinate_function(0, 2);
    const SmoothFunction g = minor_function({1, 2}, {2, 3});
    const SmoothFunction w = coordinate_function(2, 0);
    CHECK(std::abs(bracket(f, g, a) + bracket(g, f, a)) < 1e-12);
    const cd lhs = bracket(product_function(f, g), w, a);
    const cd rhs = f(a) * bracket(g, w, a) + g(a) * bracket(f, w, a);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("Jacobi identity on coordinate functions") {
    Rng rng(13, "test.jacobi", 0);
    for (int n = 2; n <= 3; ++n) {
        const Mat a = random_glstar(rng, n);
        const SmoothFunction f = coordinate_function(0, n - 1);
        const SmoothFunction g = coordinate_function(n - 1, 0);
        const SmoothFunction w = coordinate_function(n - 1, n - 1);
        const auto nest = [](const SmoothFunction& x, const SmoothFunction& y) {
            SmoothFunction out;
            out.evaluator = [x, y](const Mat& m) { return bracket(x, y, m); };
            return out; // gradient left empty: finite-difference fallback
        };
        const cd j = bracket(f, nest(g, w), a) + bracket(g, nest(w, f), a) +
                     bracket(w, nest(f, g), a);
        CHECK(std::abs(j) < 1e-8);
    }
}

TEST_CASE("analytic gradients agree with finite differences") {
    Rng rng(13, "test.grads", 0);
    const Mat a = random_glstar(rng, 3);
    std::vector<SmoothFunction> fns = {
        coordinate_function(1, 2), minor_function({1, 3}, {2, 3}), casimir_function(2, 3),
        chart_p_function(default_schedule(3), 2), chart_q_function(default_schedule(3), 2)};
    for (const SmoothFunction& f : fns) {
        const Mat analytic = f.grad(a);
        const Mat fd = fd_gradient(f.evaluator, a);
        CHECK(norm_max(analytic - fd) < 1e-7);
    }
}

TEST_CASE("chart pairs are canonical under the bracket") {
    Rng rng(13, "test.canonical", 0);
    const int n = 3;
    const PermutationSchedule sched = default_schedule(n);
    const Mat a = random_glstar(rng, n);
    for (int mu = 1; mu <= sched.length(); ++mu)
        for (int nu = 1; nu <= sched.length(); ++nu) {
            const cd pq = bracket(chart_p_function(sched, mu), chart_q_function(sched, nu), a);
            const cd want = (mu == nu) ? cd(1.0, 0.0) : cd(0.0, 0.0);
            CHECK(std::abs(pq - want) < 1e-9);
            CHECK(std::abs(bracket(chart_p_function(sched, mu), chart_p_function(sched, nu),
                                   a)) < 1e-9);
            CHECK(std::abs(bracket(chart_q_function(sched, mu), chart_q_function(sched, nu),
                                   a)) < 1e-9);
        }
}

TEST_CASE("Casimirs commute with every coordinate") {
    Rng rng(13, "test.central", 0);
    const int n = 3;
    const Mat a = random_glstar(rng, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                CHECK(std::abs(bracket(casimir_function(j, n), coordinate_function(k, l),
                                       a)) < 1e-10);
}

TEST_CASE("conjugation flow: p frozen, q linear at the label-pair rate") {
    Rng rng(13, "test.flow", 0);
    const int n = 3;
    const PermutationSchedule sched = default_schedule(n);
    const Mat a = random_glstar(rng, n);
    const DiagonalGenerator mu({cd(0.4, 0.1), cd(-0.1, -0.3), cd(-0.3, 0.2)});
    const double t = 0.6;
    const DarbouxChart c0 = darboux_coordinates(a, sched);
    const DarbouxChart c1 = darboux_coordinates(linear_flow(a, mu, t), sched);
    for (int nu = 1; nu <= sched.length(); ++nu) {
        CHECK(std::abs(c1.p[static_cast<size_t>(nu - 1)] -
                       c0.p[static_cast<size_t>(nu - 1)]) < 1e-12);
        const auto [lj, lk] = label_pair(sched, nu);
        const cd rate = mu.mu()[static_cast<size_t>(lk - 1)] -
                        mu.mu()[static_cast<size_t>(lj - 1)];
        cd diff = c1.q[static_cast<size_t>(nu - 1)] - c0.q[static_cast<size_t>(nu - 1)] -
                  t * rate;
        diff -= cd(0.0, 2.0 * kPi * std::round(diff.imag() / (2.0 * kPi)));
        CHECK(std::abs(diff) < 1e-11);
    }
    // Casimirs ride along unchanged
    const std::vector<cd> before = casimir_values(a);
    const std::vector<cd> after = casimir_values(linear_flow(a, mu, t));
    for (size_t j = 0; j < before.size(); ++j)
        CHECK(std::abs(after[j] - before[j]) < 1e-11);
}

TEST_CASE("the generating Hamiltonian telescopes into chart actions") {
    Rng rng(13, "test.telescope", 0);
    const int n = 4;
    const PermutationSchedule sched = default_schedule(n);
    const Mat a = random_glstar(rng, n);
    const DiagonalGenerator mu(
        {cd(0.5, 0.0), cd(0.1, 0.2), cd(-0.2, -0.1), cd(-0.4, -0.1)});
    const FlowHamiltonian fh = flow_hamiltonian(a, mu);
    const DarbouxChart c = darboux_coordinates(a, sched);
    cd sum(0.0, 0.0);
    for (size_t nu = 0; nu < c.p.size(); ++nu) sum += fh.coefficients[nu] * c.p[nu];
    CHECK(std::abs(fh.value - sum) < 1e-11);
}

TEST_CASE("integrated bracket flow reaches the half-rate conjugation") {
    Rng rng(13, "test.genflow", 0);
    const int n = 2;
    const Mat a = random_glstar(rng, n);
    const DiagonalGenerator mu({cd(0.5, 0.2), cd(-0.5, -0.2)});
    const std::vector<TrajectoryPoint> traj =
        hamiltonian_flow(a, flow_hamiltonian_function(mu), 1.0, 5);
    REQUIRE(traj.size() == 6);
    CHECK(traj.back().t == doctest::Approx(1.0));
    for (const TrajectoryPoint& pt : traj) {
        CHECK(norm_max(pt.a - linear_flow(a, mu, pt.t)) < 1e-8);
        CHECK(pt.casimir_drift < 1e-8);
    }
}

TEST_CASE("two-point bracket of minors carries the intersection weight") {
    Rng rng(13, "test.nonlocal", 0);
    const int n = 3;
    const Mat s1 = random_glstar(rng, n);
    const Mat s2 = random_glstar(rng, n);
    struct Case {
        IndexSet j1, k1, j2, k2;
    };
    const std::vector<Case> cases = {
        {{1}, {2}, {1}, {3}},          // shares a row only: eps = 1
        {{1}, {2}, {3}, {2}},          // shares a column only: eps = -1
        {{1, 2}, {1, 3}, {2, 3}, {1, 2}}, // eps = |{2}| - |{1}| = 0
        {{1, 2}, {2, 3}, {1, 2}, {2, 3}}, // eps = 2 - 2 = 0
    };
    for (const Case& c : cases) {
        const cd lhs =
            nonlocal_bracket(minor_function(c.j1, c.k1), minor_function(c.j2, c.k2), s1, s2);
        const cd rhs = static_cast<double>(intersection_weight(c.j1, c.k1, c.j2, c.k2)) *
                       minor(s1, c.j1, c.k1) * minor(s2, c.j2, c.k2);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("actions and angles are two-point local") {
    Rng rng(13, "test.nllocal", 0);
    const int n = 3;
    const PermutationSchedule sched = default_schedule(n);
    const Mat s1 = random_glstar(rng, n);
    const Mat s2 = random_glstar(rng, n);
    for (int nu = 1; nu <= sched.length(); ++nu) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                CHECK(std::abs(nonlocal_bracket(chart_p_function(sched, nu),
                                                coordinate_function(j, k), s1, s2)) < 1e-11);
        for (int mu = 1; mu <= sched.length(); ++mu)
            CHECK(std::abs(nonlocal_bracket(chart_q_function(sched, mu),
                                            chart_q_function(sched, nu), s1, s2)) < 1e-11);
    }
}

TEST_CASE("pointwise bracket equals (4 pi i) times the bivector") {
    Rng rng(13, "test.norm", 0);
    const int n = 3;
    const Mat s = random_glstar(rng, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    const cd lhs =
                        cd(0.0, kPi) * s(j, m) * s(l, k) * (sgn(l - j) - sgn(m - k));
                    CHECK(std::abs(lhs - cd(0.0, 4.0 * kPi) *
                                             bracket_tensor(s, j, k, l, m)) < 1e-13);
                }
}

TEST_CASE("renormalized chart has unit local coefficients") {
    Rng rng(13, "test.renorm", 0);
    const int n = 2;
    const PermutationSchedule sched = default_schedule(n);
    const Mat s = random_glstar(rng, n);
    const ChartGradients g = chart_gradients(s, sched);
    // 4 pi i (p/2, q/(2 pi i)) = (p, q) = 1 for the matched pair
    cd acc(0.0, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    acc += (0.5 * g.dp[0](j, k)) * (g.dq[0](l, m) / cd(0.0, 2.0 * kPi)) *
                           bracket_tensor(s, j, k, l, m);
    CHECK(std::abs(cd(0.0, 4.0 * kPi) * acc - cd(1.0, 0.0)) < 1e-11);

    const DarbouxChart c = darboux_coordinates(s, sched);
    const DarbouxChart r = renormalized_chart(c);
    CHECK(std::abs(r.p[0] - 0.5 * c.p[0]) < 1e-15);
    CHECK(std::abs(r.q[0] - c.q[0] / cd(0.0, 2.0 * kPi)) < 1e-15);
}

TEST_CASE("diagonal generators must be traceless") {
    CHECK_THROWS_AS(DiagonalGenerator({cd(1.0, 0.0), cd(0.5, 0.0)}), Error);
}
