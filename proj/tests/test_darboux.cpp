/// \file test_darboux.cpp
/// \brief The two-form, its chart decomposition, and the symmetry pullbacks.
#include <doctest.h>

#include <vector>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/schedule.hpp"

using namespace mgflow;

namespace {

cd pair_sum(const std::vector<Mat>& dp, const std::vector<Mat>& dq, const Mat& d1,
            const Mat& d2) {
    cd s(0.0, 0.0);
    for (size_t nu = 0; nu < dp.size(); ++nu)
        s += apply_gradient(dp[nu], d1) * apply_gradient(dq[nu], d2) -
             apply_gradient(dp[nu], d2) * apply_gradient(dq[nu], d1);
    return s;
}

} // namespace

TEST_CASE("omega at the identity on elementary directions") {
    const Mat eye = Mat::identity(2);
    const Mat e12 = matrix_unit(2, 0, 1);
    const Mat e21 = matrix_unit(2, 1, 0);
    const cd val = omega_eval({eye, e12}, {eye, e21});
    CHECK(std::abs(val - cd(2.0, 0.0)) < 1e-14);
    // antisymmetry in its two slots
    CHECK(std::abs(omega_eval({eye, e21}, {eye, e12}) + val) < 1e-14);
}

TEST_CASE("omega is bilinear and antisymmetric") {
    Rng rng(11, "test.omega", 0);
    const Mat a = random_glstar(rng, 3);
    const Mat d1 = random_tangent(rng, 3);
    const Mat d2 = random_tangent(rng, 3);
    const Mat d3 = random_tangent(rng, 3);
    const cd w12 = omega_eval({a, d1}, {a, d2});
    CHECK(std::abs(omega_eval({a, d2}, {a, d1}) + w12) < 1e-12);
    const cd lam(0.7, -0.3);
    const cd lhs = omega_eval({a, lam * d1 + d3}, {a, d2});
    CHECK(std::abs(lhs - (lam * w12 + omega_eval({a, d3}, {a, d2}))) < 1e-11);
}

TEST_CASE("alternative expression agrees") {
    Rng rng(11, "test.alt", 0);
    for (int n = 2; n <= 4; ++n) {
        const Mat a = random_glstar(rng, n);
        const TangentVector t1{a, random_tangent(rng, n)};
        const TangentVector t2{a, random_tangent(rng, n)};
        CHECK(std::abs(omega_eval(t1, t2) - omega_eval_alt(t1, t2)) < 1e-11);
    }
}

TEST_CASE("chart decomposition reproduces omega") {
    Rng rng(11, "test.chartform", 0);
    for (int n = 2; n <= 4; ++n) {
        const PermutationSchedule sched = default_schedule(n);
        const Mat a = random_glstar(rng, n);
        const ChartGradients g = chart_gradients(a, sched);
        REQUIRE(static_cast<int>(g.dp.size()) == n * (n - 1) / 2);
        for (int rep = 0; rep < 3; ++rep) {
            const Mat d1 = random_tangent(rng, n);
            const Mat d2 = random_tangent(rng, n);
            const cd lhs = omega_eval({a, d1}, {a, d2});
            const cd rhs = pair_sum(g.dp, g.dq, d1, d2);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("chart gradients match finite differences of the chart") {
    Rng rng(11, "test.chartfd", 0);
    const int n = 3;
    const PermutationSchedule sched = default_schedule(n);
    const Mat a = random_glstar(rng, n);
    const ChartGradients g = chart_gradients(a, sched);
    const double e = 1e-6;
    for (int nu = 0; nu < sched.length(); ++nu)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Mat ap = a, am = a;
                ap(j, k) += e;
                am(j, k) -= e;
                const DarbouxChart cp = darboux_coordinates(ap, sched);
                const DarbouxChart cm = darboux_coordinates(am, sched);
                const cd fd_p = (cp.p[static_cast<size_t>(nu)] - cm.p[static_cast<size_t>(nu)]) / (2.0 * e);
                const cd fd_q = (cp.q[static_cast<size_t>(nu)] - cm.q[static_cast<size_t>(nu)]) / (2.0 * e);
                CHECK(std::abs(g.dp[static_cast<size_t>(nu)](j, k) - fd_p) < 1e-6);
                CHECK(std::abs(g.dq[static_cast<size_t>(nu)](j, k) - fd_q) < 1e-6);
            }
}

TEST_CASE("n = 2 chart closed forms") {
    Rng rng(11, "test.n2", 0);
    const Mat a = random_glstar(rng, 2);
    const DarbouxChart c = darboux_coordinates(a, default_schedule(2));
    REQUIRE(c.p.size() == 1);
    const cd delta = det(a);
    CHECK(std::abs(c.p[0] - std::log(a(0, 0) * a(1, 1) / delta)) < 1e-12);
    CHECK(std::abs(c.q[0] - std::log(a(1, 0) / a(0, 1))) < 1e-12);
}

TEST_CASE("n = 3 closed-form chart matches the schedule chart") {
    Rng rng(11, "test.n3closed", 0);
    const Mat a = random_glstar(rng, 3);
    const DarbouxChart c = darboux_coordinates(a, default_schedule(3));
    std::vector<cd> p, q;
    chart_n3_closed_form(a, p, q);
    REQUIRE(p.size() == 3);
    for (size_t nu = 0; nu < 3; ++nu) {
        CHECK(std::abs(c.p[nu] - p[nu]) < 1e-11);
        CHECK(std::abs(c.q[nu] - q[nu]) < 1e-11);
    }

    // gradients of the closed forms also decompose omega
    std::vector<Mat> dp, dq;
    chart_n3_closed_form_gradients(a, dp, dq);
    const Mat d1 = random_tangent(rng, 3);
    const Mat d2 = random_tangent(rng, 3);
    const cd lhs = omega_eval({a, d1}, {a, d2});
    CHECK(std::abs(lhs - pair_sum(dp, dq, d1, d2)) < 1e-9 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("degenerate points are rejected with the failing step") {
    Mat a = Mat::identity(3); // diagonal: every off-diagonal 2x2 block degenerates
    CHECK_THROWS_AS(darboux_coordinates(a, default_schedule(3)), DegeneratePoint);
}

TEST_CASE("order-two symmetries pull the form back to its negative") {
    Rng rng(11, "test.pullback", 0);
    const Mat a = random_glstar(rng, 3);
    const TangentVector t1{a, random_tangent(rng, 3)};
    const TangentVector t2{a, random_tangent(rng, 3)};
    const cd base = omega_eval(t1, t2);
    for (Symmetry s : {Symmetry::TransposeInverse, Symmetry::AntidiagonalConjugation})
        CHECK(std::abs(symmetry_pullback(a, s, t1, t2) + base) < 1e-10);
}

TEST_CASE("the form annihilates scaling directions (rank n^2 - n)") {
    Rng rng(11, "test.rank", 0);
    const Mat a = random_glstar(rng, 3);
    // Degenerate directions are spanned by a * E_jj (diagonal right translates);
    // the chart p, q are ratios of minors of matching total degree in each row
    // and column block, so these directions pair to zero with every tangent.
    const PermutationSchedule sched = default_schedule(3);
    const ChartGradients g = chart_gradients(a, sched);
    double worst = 0.0;
    const Mat null_dir = a * Mat::identity(3); // d/dt e^t a: a null direction
    for (int rep = 0; rep < 4; ++rep) {
        const Mat w = random_tangent(rng, 3);
        worst = std::max(worst, std::abs(omega_eval({a, null_dir}, {a, w})));
        worst = std::max(worst, std::abs(pair_sum(g.dp, g.dq, null_dir, w)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("unwrap_towards moves values by whole periods only") {
    const cd v(0.3, 6.0);
    const cd r(0.3, -0.2);
    const cd u = unwrap_towards(v, r);
    CHECK(std::abs((u - v).imag() / (2.0 * 3.14159265358979323846) -
                   std::round((u - v).imag() / (2.0 * 3.14159265358979323846))) < 1e-12);
    CHECK(std::abs(u - r) <= std::abs(v - r));
}
