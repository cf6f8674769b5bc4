/// \file test_scattering.cpp
/// \brief Forward scattering, the commutator hierarchy, linearized flows,
///        and the Hamiltonian functionals, on reduced grids for speed.
#include <doctest.h>

#include <cmath>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/schedule.hpp"

using namespace mgflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralConfig small_config(int n) {
    SpectralConfig cfg;
    if (n == 2)
        cfg.lambda = {0.9, -0.7};
    else
        cfg.lambda = {1.1, 0.3, -1.4};
    cfg.xi_grid = SpectralConfig::uniform_grid(-1.3, 2.2, 5);
    return cfg;
}

Potential small_potential(int n, double scale = 0.35) {
    Rng rng(23, "test.scpot", 0);
    const Mat c = random_skew_coefficient(rng, n, scale);
    return gaussian_potential(c, 6.0, 1.0 / 32.0, 1.0, true);
}

} // namespace

TEST_CASE("potential construction and validation") {
    const Potential q = small_potential(3);
    CHECK(q.n() == 3);
    CHECK(q.nodes() == 385);
    CHECK(q.x_at(0) == doctest::Approx(-6.0));
    CHECK(q.x_at(q.nodes() - 1) == doctest::Approx(6.0));
    q.validate(); // must not throw
    // values are skew-hermitian with zero diagonal
    for (const Mat& v : q.values) {
        CHECK(norm_max(v + dagger(v)) < 1e-14);
        for (int j = 0; j < 3; ++j) CHECK(v(j, j) == cd(0.0, 0.0));
    }
    // interpolation reproduces the Gaussian profile off-grid
    Rng rng(23, "test.scpot", 0);
    const Mat c = random_skew_coefficient(rng, 3, 0.35);
    const double x = 0.7391;
    CHECK(norm_max(q.at(x) - std::exp(-x * x) * c) < 1e-8);

    // invalid inputs
    Potential bad = q;
    bad.values[5](0, 0) = cd(0.1, 0.0);
    CHECK_THROWS_AS(bad.validate(), Error);
    Potential fat = q;
    fat.values.front()(0, 1) = cd(0.5, 0.0); // fat tail
    CHECK_THROWS_AS(fat.validate(), Error);
    Potential notskew = q;
    notskew.values[7](0, 1) += cd(0.2, 0.0); // breaks the skew pairing
    CHECK_THROWS_AS(notskew.validate(), Error);

    Mat cdiag(3);
    cdiag(0, 0) = cd(0.3, 0.0);
    CHECK_THROWS_AS(gaussian_potential(cdiag, 6.0, 1.0 / 32.0, 1.0, false), Error);
}

TEST_CASE("spectral config validation") {
    SpectralConfig cfg = small_config(2);
    cfg.validate();
    CHECK(norm_max(cfg.J() - diag_mat({cd(0.0, 0.9), cd(0.0, -0.7)})) == 0.0);
    SpectralConfig bad = cfg;
    bad.lambda = {0.5, 0.5}; // not strictly decreasing
    CHECK_THROWS_AS(bad.validate(), Error);
    SpectralConfig bad2 = cfg;
    bad2.xi_grid = {0.0, 1.0, 1.5}; // not uniform
    CHECK_THROWS_AS(bad2.validate(), Error);
}

TEST_CASE("zero potential scatters to the identity") {
    const Potential q0 = gaussian_potential(Mat(2), 6.0, 1.0 / 32.0, 1.0, true);
    const ScatteringRecord rec = forward_scatter(q0, small_config(2));
    const Mat eye = Mat::identity(2);
    for (const ScatteringNode& node : rec.nodes) CHECK(norm_max(node.s - eye) < 1e-12);
}

TEST_CASE("weak potentials follow the first Born approximation") {
    const int n = 2;
    const SpectralConfig cfg = small_config(n);
    Potential q = small_potential(n);
    const double eps = 0.05;
    const double scale = eps / q.l1_norm();
    for (Mat& v : q.values) v = scale * v;
    const ScatteringRecord rec = forward_scatter(q, cfg);
    for (const ScatteringNode& node : rec.nodes) {
        Mat born = Mat::identity(n);
        for (int i = 0; i < q.nodes(); ++i) {
            const double w = (i == 0 || i == q.nodes() - 1) ? 0.5 * q.h : q.h;
            const double x = q.x_at(i);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (j == k) continue;
                    born(j, k) += w *
                                  std::exp(cd(0.0, -node.xi * x *
                                                       (cfg.lambda[static_cast<size_t>(j)] -
                                                        cfg.lambda[static_cast<size_t>(k)]))) *
                                  q.values[static_cast<size_t>(i)](j, k);
                }
        }
        CHECK(norm_max(node.s - born) < 5.0 * eps * eps);
    }
}

TEST_CASE("skew potentials give unitary scattering with unit determinant") {
    const ScatteringRecord rec = forward_scatter(small_potential(3), small_config(3));
    CHECK(rec.skew);
    CHECK(rec.flagged_count() == 0);
    const Mat eye = Mat::identity(3);
    for (const ScatteringNode& node : rec.nodes) {
        // the Wronskian is conserved exactly; the residual budget is the
        // accumulated step-control error at rtol = 1e-10
        CHECK(std::abs(det(node.s) - cd(1.0, 0.0)) < 1e-9);
        CHECK(norm_max(node.s * dagger(node.s) - eye) < 1e-9);
        CHECK(norm_max(dagger(node.v_plus) * node.v_minus - eye) < 1e-8);
        // the two one-sided factorizations produce the same v and s ratios
        CHECK(norm_max(solve_upper(node.v_minus, node.v_plus) -
                       solve_lower(node.s_minus, node.s_plus)) < 1e-9);
    }
}

TEST_CASE("norm cap rejects large potentials") {
    Potential q = small_potential(2);
    for (Mat& v : q.values) v = 60.0 * v;
    q.tail_tol = 1e-6;
    CHECK_THROWS_AS(forward_scatter(q, small_config(2)), NormTooLarge);
}

TEST_CASE("hierarchy terms: base term, closed-form first order, residuals") {
    const int n = 2;
    const Potential q = small_potential(n);
    const SpectralConfig cfg = small_config(n);
    const DiagonalGenerator mu({cd(0.6, 0.0), cd(-0.6, 0.0)});
    const std::vector<HierarchyTerm> terms = hierarchy_terms(q, cfg, mu, 2);
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].residual == 0.0);
    CHECK(terms[1].residual < 1e-14); // first commutator is algebraically exact
    CHECK(terms[2].residual < 1e-3);

    // F_0 = mu everywhere
    for (const Mat& f : terms[0].values) CHECK(norm_max(f - mu.matrix()) == 0.0);

    // [J, F_1] = -[q, F_0]: off-diagonal closed form
    // F_1(j,k) = -(mu_k - mu_j) q_jk / (i (lambda_j - lambda_k))
    for (int i = 0; i < q.nodes(); i += 37) {
        const Mat& f1 = terms[1].values[static_cast<size_t>(i)];
        const Mat& qi = q.values[static_cast<size_t>(i)];
        const cd want = -(mu.mu()[1] - mu.mu()[0]) * qi(0, 1) /
                        (cd(0.0, 1.0) * (cfg.lambda[0] - cfg.lambda[1]));
        CHECK(std::abs(f1(0, 1) - want) < 1e-12);
    }
    // diagonal of F_1 vanishes at the left endpoint by construction
    const Mat& f1_left = terms[1].values.front();
    CHECK(std::abs(f1_left(0, 0)) < 1e-14);
    CHECK(std::abs(f1_left(1, 1)) < 1e-14);

    // zero potential: every higher term vanishes identically
    const Potential q0 = gaussian_potential(Mat(n), 6.0, 1.0 / 32.0, 1.0, true);
    const std::vector<HierarchyTerm> zt = hierarchy_terms(q0, cfg, mu, 3);
    for (size_t k = 1; k < zt.size(); ++k)
        for (const Mat& f : zt[k].values) CHECK(norm_max(f) == 0.0);
}

TEST_CASE("scattering linearizes the hierarchy flow (first order in dt)") {
    const int n = 2;
    const Potential q = small_potential(n);
    SpectralConfig cfg = small_config(n);
    cfg.rtol = 1e-12;
    cfg.atol = 1e-14;
    const DiagonalGenerator mu({cd(0.6, 0.0), cd(-0.6, 0.0)});
    // k = 0: residual at dt = 1e-5 is dominated by the quadratic remainder,
    // roughly (dt/2) ||d^2 s|| ~ 1e-5 for this potential
    const double r0 = linearization_check(q, mu, 0, 1e-5, cfg);
    CHECK(r0 < 1e-4);
    // k = 1: halving dt by 10 shrinks the residual by about 10
    const double r_coarse = linearization_check(q, mu, 1, 1e-2, cfg);
    const double r_fine = linearization_check(q, mu, 1, 1e-3, cfg);
    CHECK(r_fine / r_coarse < 0.3);
    CHECK(r_fine / r_coarse > 0.03);
}

TEST_CASE("hierarchy flow on scattering data: actions frozen, angles linear") {
    const int n = 2;
    const Potential q = small_potential(n);
    const SpectralConfig cfg = small_config(n);
    const DiagonalGenerator mu({cd(0.6, 0.0), cd(-0.6, 0.0)});
    const ScatteringRecord rec = forward_scatter(q, cfg);
    const int k = 1;
    const double t = 0.4;

    // t = 0 is the identity map
    const ScatteringRecord same = evolve_scattering(rec, mu, k, 0.0);
    for (size_t i = 0; i < rec.nodes.size(); ++i)
        CHECK(norm_max(same.nodes[i].s - rec.nodes[i].s) == 0.0);

    const ScatteringRecord ev = evolve_scattering(rec, mu, k, t);
    const PermutationSchedule sched = default_schedule(n);
    for (size_t i = 0; i < rec.nodes.size(); ++i) {
        REQUIRE(!rec.nodes[i].flagged);
        const DarbouxChart c0 = darboux_coordinates(rec.nodes[i].s, sched);
        const DarbouxChart c1 = darboux_coordinates(ev.nodes[i].s, sched);
        CHECK(std::abs(c1.p[0] - c0.p[0]) < 1e-10);
        const double xi = rec.nodes[i].xi;
        const auto [lj, lk] = label_pair(sched, 1);
        const cd rate = 2.0 * xi *
                        (mu.mu()[static_cast<size_t>(lk - 1)] -
                         mu.mu()[static_cast<size_t>(lj - 1)]);
        cd diff = c1.q[0] - c0.q[0] - t * rate;
        diff -= cd(0.0, 2.0 * kPi * std::round(diff.imag() / (2.0 * kPi)));
        CHECK(std::abs(diff) < 1e-8);
    }

    // H_k is conserved and telescopes into action integrals
    const HierarchyHamiltonian h0 = hierarchy_hamiltonian(rec, mu, k);
    const HierarchyHamiltonian h1 = hierarchy_hamiltonian(ev, mu, k);
    CHECK(std::abs(h1.value - h0.value) < 1e-9 * std::max(1.0, std::abs(h0.value)));
    CHECK(std::abs(h0.value - h0.decomposition()) <
          1e-10 * std::max(1.0, std::abs(h0.value)));
}

TEST_CASE("pointwise bracket identities hold at every node") {
    const ScatteringRecord rec = forward_scatter(small_potential(2), small_config(2));
    const PointwiseBracketReport pw = pointwise_bracket_check(rec);
    CHECK(pw.nodes_checked == 5);
    CHECK(pw.local_identity < 1e-12);
    CHECK(pw.action_locality < 1e-10);
    CHECK(pw.renormalized < 1e-10);
}

TEST_CASE("scattering self-converges under grid and tolerance refinement") {
    Rng rng(23, "test.conv", 0);
    const Mat c = random_skew_coefficient(rng, 2, 0.35);
    const auto sweep = [&](double h, double rt, double at) {
        const Potential q = gaussian_potential(c, 6.0, h, 1.0, true);
        SpectralConfig cfg = small_config(2);
        cfg.rtol = rt;
        cfg.atol = at;
        return forward_scatter(q, cfg);
    };
    const ScatteringRecord a = sweep(1.0 / 16.0, 1e-8, 1e-10);
    const ScatteringRecord b = sweep(1.0 / 32.0, 1e-9, 1e-11);
    const ScatteringRecord c2 = sweep(1.0 / 64.0, 1e-10, 1e-12);
    double d1 = 0.0, d2 = 0.0;
    for (size_t i = 0; i < a.nodes.size(); ++i) {
        d1 = std::max(d1, norm_max(a.nodes[i].s - b.nodes[i].s));
        d2 = std::max(d2, norm_max(b.nodes[i].s - c2.nodes[i].s));
    }
    CHECK(d2 < 0.3 * d1);
}

TEST_CASE("random skew coefficients are reproducible and skew") {
    Rng r1(99, "coef", 4);
    Rng r2(99, "coef", 4);
    const Mat c1 = random_skew_coefficient(r1, 3, 0.35);
    const Mat c2 = random_skew_coefficient(r2, 3, 0.35);
    CHECK(norm_max(c1 - c2) == 0.0);
    CHECK(norm_max(c1 + dagger(c1)) == 0.0);
    for (int j = 0; j < 3; ++j) CHECK(c1(j, j) == cd(0.0, 0.0));
}
