/// \file suites.cpp
/// \brief Implementation of the verification suites.

#include "mgflow/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/factorization.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/schedule.hpp"
#include "mgflow/su3.hpp"

namespace mgflow {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Clock = std::chrono::steady_clock;

/// Runs one check body, recording residual/tolerance/pass/wall-time; a
/// thrown exception becomes a failed check with the message in the note.
struct Harness {
    SuiteReport& rep;
    const ExperimentConfig& cfg;

    template <typename Body>
    void check(const std::string& name, double tol, const std::string& note, Body&& body) {
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        r.note = note;
        const auto t0 = Clock::now();
        try {
            r.residual = body();
            r.pass = std::isfinite(r.residual) && r.residual <= tol;
        } catch (const std::exception& e) {
            r.residual = std::numeric_limits<double>::infinity();
            r.pass = false;
            r.note = note.empty() ? std::string(e.what()) : note + "; " + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.checks.push_back(std::move(r));
    }

    void row(const std::string& check_name, std::uint64_t trial, double resid) {
        rep.trial_rows.push_back({check_name, trial, resid});
    }
};

Mat random_traceless(Rng& rng, int n) {
    Mat x = random_tangent(rng, n);
    const cd t = trace(x) / static_cast<double>(n);
    for (int j = 0; j < n; ++j) x(j, j) -= t;
    return x;
}

DiagonalGenerator random_generator(Rng& rng, int n, double scale) {
    std::vector<cd> mu(static_cast<size_t>(n));
    cd mean(0.0, 0.0);
    for (cd& z : mu) {
        z = scale * rng.cnormal();
        mean += z;
    }
    mean /= static_cast<double>(n);
    for (cd& z : mu) z -= mean;
    return DiagonalGenerator(mu);
}

/// Haar-ish random unitary: Gaussian columns, Gram-Schmidt orthonormalized.
Mat random_unitary(Rng& rng, int n) {
    Mat g = random_tangent(rng, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            cd proj(0.0, 0.0);
            for (int i = 0; i < n; ++i) proj += std::conj(g(i, j)) * g(i, k);
            for (int i = 0; i < n; ++i) g(i, k) -= proj * g(i, j);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, k));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < n; ++i) g(i, k) /= nrm;
    }
    return g;
}

IndexSet random_index_set(Rng& rng, int n, int size) {
    std::vector<int> pool(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i + 1;
    for (int i = 0; i < size; ++i) {
        const int j = i + static_cast<int>(rng.u01() * (n - i));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(std::min(j, n - 1))]);
    }
    IndexSet s(pool.begin(), pool.begin() + size);
    std::sort(s.begin(), s.end());
    return s;
}

/// Nearest representative modulo 2*pi*i.
cd mod_two_pi_i(cd r) {
    const double k = std::round(r.imag() / (2.0 * kPi));
    return r - cd(0.0, 2.0 * kPi * k);
}

/// Pointwise bracket value from two precomputed gradients.
cd bracket_of_gradients(const Mat& g1, const Mat& g2, const Mat& a) {
    const int n = a.n();
    cd s(0.0, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (g1(j, k) == cd(0.0, 0.0)) continue;
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    if (g2(l, m) == cd(0.0, 0.0)) continue;
                    s += g1(j, k) * g2(l, m) * bracket_tensor(a, j, k, l, m);
                }
        }
    return s;
}

// ---------------------------------------------------------------------------
// form suite
// ---------------------------------------------------------------------------

void suite_form(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};
    const PermutationSchedule sched = default_schedule(cfg.n);

    h.check("form/decomposition", cfg.tol_form, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "form.decomposition", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, cfg.n);
            const ChartGradients g = chart_gradients(a, sched);
            double point = 0.0;
            for (int pair = 0; pair < 4; ++pair) {
                const Mat d1 = random_tangent(rng, cfg.n);
                const Mat d2 = random_tangent(rng, cfg.n);
                const cd lhs = omega_eval({a, d1}, {a, d2});
                cd rhs(0.0, 0.0);
                for (size_t nu = 0; nu < g.dp.size(); ++nu)
                    rhs += apply_gradient(g.dp[nu], d1) * apply_gradient(g.dq[nu], d2) -
                           apply_gradient(g.dp[nu], d2) * apply_gradient(g.dq[nu], d1);
                point = std::max(point, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
            h.row("form/decomposition", static_cast<std::uint64_t>(trial), point);
            worst = std::max(worst, point);
        }
        return worst;
    });

    h.check("form/alternative", cfg.tol_alt, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "form.alternative", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, cfg.n);
            const TangentVector t1{a, random_tangent(rng, cfg.n)};
            const TangentVector t2{a, random_tangent(rng, cfg.n)};
            const double r = std::abs(omega_eval(t1, t2) - omega_eval_alt(t1, t2));
            h.row("form/alternative", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("form/closed-n3", cfg.tol_form, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "form.closed_n3", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, 3);
            std::vector<Mat> dp, dq;
            chart_n3_closed_form_gradients(a, dp, dq);
            double point = 0.0;
            for (int pair = 0; pair < 4; ++pair) {
                const Mat d1 = random_tangent(rng, 3);
                const Mat d2 = random_tangent(rng, 3);
                const cd lhs = omega_eval({a, d1}, {a, d2});
                cd rhs(0.0, 0.0);
                for (size_t nu = 0; nu < dp.size(); ++nu)
                    rhs += apply_gradient(dp[nu], d1) * apply_gradient(dq[nu], d2) -
                           apply_gradient(dp[nu], d2) * apply_gradient(dq[nu], d1);
                point = std::max(point, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
            h.row("form/closed-n3", static_cast<std::uint64_t>(trial), point);
            worst = std::max(worst, point);
        }
        return worst;
    });

    h.check("form/symmetry", cfg.tol_alt, "both order-two pullbacks equal -Omega", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "form.symmetry", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, cfg.n);
            const TangentVector t1{a, random_tangent(rng, cfg.n)};
            const TangentVector t2{a, random_tangent(rng, cfg.n)};
            const cd base = omega_eval(t1, t2);
            for (Symmetry s : {Symmetry::TransposeInverse, Symmetry::AntidiagonalConjugation})
                worst = std::max(worst, std::abs(symmetry_pullback(a, s, t1, t2) + base));
        }
        return worst;
    });
}

// ---------------------------------------------------------------------------
// bracket suite
// ---------------------------------------------------------------------------

void suite_bracket(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};
    const int n = cfg.n;
    const PermutationSchedule sched = default_schedule(n);

    h.check("bracket/values", cfg.tol_exact, "pair order fixed by antisymmetry", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.values", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const SmoothFunction a11 = coordinate_function(0, 0);
            const SmoothFunction a12 = coordinate_function(0, 1);
            const SmoothFunction a21 = coordinate_function(1, 0);
            const SmoothFunction a22 = coordinate_function(1, 1);
            const cd v1 = bracket(a11, a22, a);
            const cd v2 = bracket(a11, a21, a);
            const cd v3 = bracket(a12, a21, a);
            const cd v4 = bracket(a21, a12, a);
            double r = std::abs(v1);
            r = std::max(r, std::abs(v2 - 0.25 * a(0, 0) * a(1, 0)));
            r = std::max(r, std::abs(v3 - 0.5 * a(0, 0) * a(1, 1)));
            r = std::max(r, std::abs(v4 + v3));
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("bracket/antisymmetry", cfg.tol_bracket, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.antisym", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const int sz = 1 + static_cast<int>(rng.u01() * (n - 1));
            const SmoothFunction f = coordinate_function(static_cast<int>(rng.u01() * n),
                                                         static_cast<int>(rng.u01() * n));
            const SmoothFunction g =
                minor_function(random_index_set(rng, n, sz), random_index_set(rng, n, sz));
            const double r = std::abs(bracket(f, g, a) + bracket(g, f, a));
            h.row("bracket/antisymmetry", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("bracket/leibniz", cfg.tol_bracket, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.leibniz", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const SmoothFunction f = coordinate_function(static_cast<int>(rng.u01() * n),
                                                         static_cast<int>(rng.u01() * n));
            const int sz = 1 + static_cast<int>(rng.u01() * (n - 1));
            const SmoothFunction g =
                minor_function(random_index_set(rng, n, sz), random_index_set(rng, n, sz));
            const SmoothFunction w = coordinate_function(static_cast<int>(rng.u01() * n),
                                                         static_cast<int>(rng.u01() * n));
            const cd lhs = bracket(product_function(f, g), w, a);
            const cd rhs = f.evaluator(a) * bracket(g, w, a) + g.evaluator(a) * bracket(f, w, a);
            const double r = std::abs(lhs - rhs);
            h.row("bracket/leibniz", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("bracket/jacobi", cfg.tol_jacobi, "outer gradients by finite differences", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.jacobi", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const auto coord = [&] {
                return coordinate_function(static_cast<int>(rng.u01() * n),
                                           static_cast<int>(rng.u01() * n));
            };
            const SmoothFunction f = coord(), g = coord(), w = coord();
            const auto nest = [](const SmoothFunction& x, const SmoothFunction& y) {
                SmoothFunction out;
                out.evaluator = [x, y](const Mat& m) { return bracket(x, y, m); };
                return out;
            };
            const cd j = bracket(f, nest(g, w), a) + bracket(g, nest(w, f), a) +
                         bracket(w, nest(f, g), a);
            h.row("bracket/jacobi", static_cast<std::uint64_t>(trial), std::abs(j));
            worst = std::max(worst, std::abs(j));
        }
        return worst;
    });

    h.check("bracket/canonical-pairs", cfg.tol_bracket, "", [&] {
        double worst = 0.0;
        const int nsteps = sched.length();
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.pairs", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const ChartGradients g = chart_gradients(a, sched);
            double r = 0.0;
            for (int mu = 0; mu < nsteps; ++mu)
                for (int nu = 0; nu < nsteps; ++nu) {
                    const cd pq = bracket_of_gradients(g.dp[static_cast<size_t>(mu)],
                                                       g.dq[static_cast<size_t>(nu)], a);
                    const cd want = mu == nu ? cd(1.0, 0.0) : cd(0.0, 0.0);
                    r = std::max(r, std::abs(pq - want));
                    r = std::max(r, std::abs(bracket_of_gradients(
                                      g.dp[static_cast<size_t>(mu)],
                                      g.dp[static_cast<size_t>(nu)], a)));
                    r = std::max(r, std::abs(bracket_of_gradients(
                                      g.dq[static_cast<size_t>(mu)],
                                      g.dq[static_cast<size_t>(nu)], a)));
                }
            h.row("bracket/canonical-pairs", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("bracket/local-identity", cfg.tol_exact,
            "coordinate two-point bracket at coinciding points", [&] {
                double worst = 0.0;
                const cd four_pi_i(0.0, 4.0 * kPi);
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    Rng rng(cfg.seed, "bracket.local", static_cast<std::uint64_t>(trial));
                    const Mat s = random_glstar(rng, n);
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k)
                            for (int l = 0; l < n; ++l)
                                for (int m = 0; m < n; ++m) {
                                    const cd lhs = cd(0.0, kPi) * s(j, m) * s(l, k) *
                                                   (sgn(l - j) - sgn(m - k));
                                    const cd rhs =
                                        four_pi_i * bracket_tensor(s, j, k, l, m);
                                    worst = std::max(worst, std::abs(lhs - rhs));
                                }
                }
                return worst;
            });

    h.check("bracket/nonlocal-minors", cfg.tol_nonlocal,
            "two-point bracket of minors = intersection weight times product", [&] {
                double worst = 0.0;
                const int pairs = std::max(200, cfg.trials);
                for (int trial = 0; trial < pairs; ++trial) {
                    Rng rng(cfg.seed, "bracket.nonlocal_minors",
                            static_cast<std::uint64_t>(trial));
                    const Mat s1 = random_glstar(rng, n);
                    const Mat s2 = random_glstar(rng, n);
                    const int z1 = 1 + static_cast<int>(rng.u01() * (n - 1));
                    const int z2 = 1 + static_cast<int>(rng.u01() * (n - 1));
                    const IndexSet j1 = random_index_set(rng, n, z1);
                    const IndexSet k1 = random_index_set(rng, n, z1);
                    const IndexSet j2 = random_index_set(rng, n, z2);
                    const IndexSet k2 = random_index_set(rng, n, z2);
                    const cd lhs = nonlocal_bracket(minor_function(j1, k1),
                                                    minor_function(j2, k2), s1, s2);
                    const cd rhs = static_cast<double>(intersection_weight(j1, k1, j2, k2)) *
                                   minor(s1, j1, k1) * minor(s2, j2, k2);
                    const double r = std::abs(lhs - rhs);
                    h.row("bracket/nonlocal-minors", static_cast<std::uint64_t>(trial), r);
                    worst = std::max(worst, r);
                }
                return worst;
            });

    h.check("bracket/nonlocal-actions", cfg.tol_nonlocal, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.nonlocal_actions", static_cast<std::uint64_t>(trial));
            const Mat s1 = random_glstar(rng, n);
            const Mat s2 = random_glstar(rng, n);
            for (int nu = 1; nu <= sched.length(); ++nu) {
                const SmoothFunction p = chart_p_function(sched, nu);
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        worst = std::max(
                            worst, std::abs(nonlocal_bracket(p, coordinate_function(j, k),
                                                             s1, s2)));
                const int sz = 1 + static_cast<int>(rng.u01() * (n - 1));
                const SmoothFunction m =
                    minor_function(random_index_set(rng, n, sz), random_index_set(rng, n, sz));
                worst = std::max(worst, std::abs(nonlocal_bracket(p, m, s1, s2)));
            }
        }
        return worst;
    });

    h.check("bracket/nonlocal-qq", cfg.tol_nonlocal, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "bracket.nonlocal_qq", static_cast<std::uint64_t>(trial));
            const Mat s1 = random_glstar(rng, n);
            const Mat s2 = random_glstar(rng, n);
            for (int mu = 1; mu <= sched.length(); ++mu)
                for (int nu = 1; nu <= sched.length(); ++nu)
                    worst = std::max(worst,
                                     std::abs(nonlocal_bracket(chart_q_function(sched, mu),
                                                               chart_q_function(sched, nu),
                                                               s1, s2)));
        }
        return worst;
    });
}

// ---------------------------------------------------------------------------
// casimir suite
// ---------------------------------------------------------------------------

void suite_casimir(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};
    const int n = cfg.n;

    h.check("casimir/centrality", cfg.tol_casimir, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "casimir.centrality", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            double r = 0.0;
            for (int j = 1; j <= n; ++j) {
                const SmoothFunction phi = casimir_function(j, n);
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        r = std::max(r,
                                     std::abs(bracket(phi, coordinate_function(k, l), a)));
            }
            h.row("casimir/centrality", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("casimir/unit-modulus", cfg.tol_casimir, "on the unitary slice", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "casimir.unitary", static_cast<std::uint64_t>(trial));
            const Mat u = random_unitary(rng, n);
            for (const cd& phi : casimir_values(u))
                worst = std::max(worst, std::abs(std::abs(phi) - 1.0));
        }
        return worst;
    });

    h.check("casimir/flow-invariance", cfg.tol_casimir, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "casimir.flow", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const DiagonalGenerator mu = random_generator(rng, n, 0.5);
            const std::vector<cd> before = casimir_values(a);
            const std::vector<cd> after = casimir_values(linear_flow(a, mu, 0.8));
            for (size_t j = 0; j < before.size(); ++j)
                worst = std::max(worst, std::abs(after[j] - before[j]));
        }
        return worst;
    });
}

// ---------------------------------------------------------------------------
// flows suite
// ---------------------------------------------------------------------------

void suite_flows(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};
    const int n = cfg.n;
    const PermutationSchedule sched = default_schedule(n);
    const int nsteps = sched.length();

    h.check("flows/action-invariance", cfg.tol_exact, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "flows.actions", static_cast<std::uint64_t>(trial));
            const Mat a = random_glstar(rng, n);
            const DiagonalGenerator mu = random_generator(rng, n, 0.5);
            const DarbouxChart c0 = darboux_coordinates(a, sched);
            const DarbouxChart c1 = darboux_coordinates(linear_flow(a, mu, 0.7), sched);
            double r = 0.0;
            for (int nu = 0; nu < nsteps; ++nu)
                r = std::max(r, std::abs(c1.p[static_cast<size_t>(nu)] -
                                         c0.p[static_cast<size_t>(nu)]));
            h.row("flows/action-invariance", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("flows/angle-rate", 1e-10,
            "rate mu_k - mu_j under the half-rate conjugation, matching the "
            "generated Hamiltonian flow; the scattering-side conjugation is "
            "full-rate and doubles it",
            [&] {
                double worst = 0.0;
                const int samples = 9;
                const double dt = 0.1;
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    Rng rng(cfg.seed, "flows.rate", static_cast<std::uint64_t>(trial));
                    const Mat a = random_glstar(rng, n);
                    const DiagonalGenerator mu = random_generator(rng, n, 0.5);
                    std::vector<std::vector<cd>> qs(static_cast<size_t>(samples));
                    for (int i = 0; i < samples; ++i) {
                        DarbouxChart c = darboux_coordinates(linear_flow(a, mu, dt * i), sched);
                        qs[static_cast<size_t>(i)] = c.q;
                        if (i > 0)
                            for (int nu = 0; nu < nsteps; ++nu)
                                qs[static_cast<size_t>(i)][static_cast<size_t>(nu)] =
                                    unwrap_towards(
                                        qs[static_cast<size_t>(i)][static_cast<size_t>(nu)],
                                        qs[static_cast<size_t>(i - 1)][static_cast<size_t>(nu)]);
                    }
                    // least-squares slope of q_nu(t) against t
                    double r = 0.0;
                    const double tbar = dt * (samples - 1) / 2.0;
                    double denom = 0.0;
                    for (int i = 0; i < samples; ++i)
                        denom += (dt * i - tbar) * (dt * i - tbar);
                    for (int nu = 0; nu < nsteps; ++nu) {
                        cd qbar(0.0, 0.0);
                        for (int i = 0; i < samples; ++i)
                            qbar += qs[static_cast<size_t>(i)][static_cast<size_t>(nu)];
                        qbar /= static_cast<double>(samples);
                        cd num(0.0, 0.0);
                        for (int i = 0; i < samples; ++i)
                            num += (dt * i - tbar) *
                                   (qs[static_cast<size_t>(i)][static_cast<size_t>(nu)] - qbar);
                        const cd slope = num / denom;
                        const auto [lj, lk] = label_pair(sched, nu + 1);
                        const cd want = mu.mu()[static_cast<size_t>(lk - 1)] -
                                        mu.mu()[static_cast<size_t>(lj - 1)];
                        r = std::max(r, std::abs(slope - want));
                    }
                    h.row("flows/angle-rate", static_cast<std::uint64_t>(trial), r);
                    worst = std::max(worst, r);
                }
                return worst;
            });

    h.check("flows/hamiltonian-telescoping", cfg.tol_casimir,
            "tr(mu log delta) = sum c_nu p_nu", [&] {
                double worst = 0.0;
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    Rng rng(cfg.seed, "flows.telescoping", static_cast<std::uint64_t>(trial));
                    const Mat a = random_glstar(rng, n);
                    const DiagonalGenerator mu = random_generator(rng, n, 0.5);
                    const FlowHamiltonian fh = flow_hamiltonian(a, mu);
                    const DarbouxChart c = darboux_coordinates(a, sched);
                    cd sum(0.0, 0.0);
                    for (int nu = 0; nu < nsteps; ++nu)
                        sum += fh.coefficients[static_cast<size_t>(nu)] *
                               c.p[static_cast<size_t>(nu)];
                    const double r = std::abs(fh.value - sum);
                    h.row("flows/hamiltonian-telescoping", static_cast<std::uint64_t>(trial), r);
                    worst = std::max(worst, r);
                }
                return worst;
            });

    h.check("flows/hamiltonian-minor-weights", cfg.tol_casimir,
            "tr(mu log delta) as a principal-minor weight sum", [&] {
                double worst = 0.0;
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    Rng rng(cfg.seed, "flows.weights", static_cast<std::uint64_t>(trial));
                    const Mat a = random_glstar(rng, n);
                    const DiagonalGenerator mu = random_generator(rng, n, 0.5);
                    const FlowHamiltonian fh = flow_hamiltonian(a, mu);
                    const PrincipalMinors pm = principal_minors(a);
                    cd sum(0.0, 0.0);
                    for (int j = 1; j <= n; ++j)
                        sum += mu.mu()[static_cast<size_t>(j - 1)] *
                               std::log(pm.dminus(j) * pm.dplus(j - 1) /
                                        (pm.dminus(j + 1) * pm.dplus(j)));
                    worst = std::max(worst, std::abs(fh.value - sum));
                }
                return worst;
            });

    h.check("flows/generated-endpoint", cfg.tol_flow,
            "integrated Hamiltonian flow vs the half-rate conjugation", [&] {
                double worst = 0.0;
                const int points = std::min(cfg.trials, 5);
                for (int trial = 0; trial < points; ++trial) {
                    Rng rng(cfg.seed, "flows.endpoint", static_cast<std::uint64_t>(trial));
                    const Mat a = random_glstar(rng, n);
                    const DiagonalGenerator mu = random_generator(rng, n, 0.5);
                    const std::vector<TrajectoryPoint> traj =
                        hamiltonian_flow(a, flow_hamiltonian_function(mu), 1.0, 4);
                    const double r =
                        norm_max(traj.back().a - linear_flow(a, mu, 1.0));
                    h.row("flows/generated-endpoint", static_cast<std::uint64_t>(trial), r);
                    worst = std::max(worst, r);
                }
                return worst;
            });
}

// ---------------------------------------------------------------------------
// su3 suite
// ---------------------------------------------------------------------------

std::vector<Mat> su3_skew_basis() {
    std::vector<Mat> bs;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& p : pairs) {
        Mat e(3);
        e(p[0], p[1]) = cd(1.0, 0.0);
        e(p[1], p[0]) = cd(-1.0, 0.0);
        bs.push_back(e);
        Mat f(3);
        f(p[0], p[1]) = cd(0.0, 1.0);
        f(p[1], p[0]) = cd(0.0, 1.0);
        bs.push_back(f);
    }
    for (int d = 0; d < 2; ++d) {
        Mat g(3);
        g(d, d) = cd(0.0, 1.0);
        g(2, 2) = cd(0.0, -1.0);
        bs.push_back(g);
    }
    return bs;
}

/// True when the point sits well inside the angle chart: log arguments away
/// from the cut, |zeta| and |I0| bounded below, spectral roots separated.
double segment_distance(cd p0, cd p1, cd z) {
    const cd d = p1 - p0;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - p0);
    const double t = std::clamp(((z - p0) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (p0 + t * d));
}

bool well_inside_chart(const ActionAngleState& st) {
    if (!st.chart_valid || st.branch_ambiguous) return false;
    const double margin = kPi - 0.2;
    for (int j = 0; j < 3; ++j) {
        if (std::abs(st.p[j].imag()) > margin) return false;
        if (std::abs(st.q[j].real()) > margin) return false;
    }
    if (std::abs(st.zeta) < 0.05) return false;
    if (std::abs(st.I0) < 1e-2) return false;
    cd alpha, beta;
    spectral_roots(st.I1, st.I3, st.I0, alpha, beta);
    const double rscale = std::max({1e-30, std::abs(alpha), std::abs(beta)});
    if (std::abs(alpha - beta) < 1e-3 * rscale) return false;
    if (std::min(std::abs(alpha), std::abs(beta)) < 1e-3) return false;
    // The angle integrals run along the straight path from zeta to
    // -2 I1 I3 / I0; both the panelled quadrature and the Carlson form lose
    // digits when that path grazes the integrand singularities at 0, alpha,
    // beta.  Require clearance so the chart point is well conditioned for
    // every downstream evaluation, not merely inside the coordinate ranges.
    const cd zeta_end = -2.0 * st.I1 * st.I3 / st.I0;
    double clearance = segment_distance(st.zeta, zeta_end, cd(0.0, 0.0));
    clearance = std::min(clearance, segment_distance(st.zeta, zeta_end, alpha));
    clearance = std::min(clearance, segment_distance(st.zeta, zeta_end, beta));
    if (clearance < 0.01) return false;
    return true;
}

struct AngleProbe {
    double action[3];
    cd theta[3];
};

AngleProbe angle_probe(const Mat& m, int panels) {
    const ActionAngleState st = actions(m);
    if (!st.chart_valid) throw DegeneratePoint(1);
    if (st.branch_ambiguous) throw BranchPathFailure("diagonal product too small");
    const AngleVariables av = angle_variables(st, panels);
    AngleProbe p;
    p.action[0] = st.I1;
    p.action[1] = st.I2;
    p.action[2] = st.I3;
    for (int j = 0; j < 3; ++j) p.theta[j] = av.theta[j];
    return p;
}

void suite_su3(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};

    h.check("su3/spectral-identity", cfg.tol_su3, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "su3.identity", static_cast<std::uint64_t>(trial));
            const Mat s = random_sl(rng, 3);
            const Mat u = random_su3(rng);
            const double r = std::max(std::abs(spectral_identity_residual(s)),
                                      std::abs(spectral_identity_residual(u)));
            h.row("su3/spectral-identity", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("su3/root-product", cfg.tol_su3, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "su3.roots", static_cast<std::uint64_t>(trial));
            const ActionAngleState st = actions(random_su3(rng));
            cd alpha, beta;
            spectral_roots(st.I1, st.I3, st.I0, alpha, beta);
            worst = std::max(worst, std::abs(alpha * beta - st.I1 * st.I2 * st.I3));
        }
        return worst;
    });

    h.check("su3/quadratic-pairs", cfg.tol_su3_pairs, "", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(cfg.seed, "su3.pairs", static_cast<std::uint64_t>(trial));
            const Mat a = random_su3(rng);
            const ActionAngleState st = actions(a);
            const Mat cof = cofactor_matrix(a);
            const double act[3] = {st.I1, st.I2, st.I3};
            const int combos[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
            double r = 0.0;
            for (const auto& c : combos) {
                const int j = c[0], k = c[1], l = c[2];
                const cd x1 = a(j, k) * cof(j, k);
                const cd x2 = a(k, j) * cof(k, j);
                const cd want_sum = cd(1.0 - act[j] - act[k] + act[l], 0.0);
                const cd want_prod =
                    cd(act[j] * act[k] + act[l] - 2.0 * st.rho * std::cos(st.omega), 0.0);
                r = std::max(r, std::abs(x1 + x2 - want_sum));
                r = std::max(r, std::abs(x1 * x2 - want_prod));
            }
            h.row("su3/quadratic-pairs", static_cast<std::uint64_t>(trial), r);
            worst = std::max(worst, r);
        }
        return worst;
    });

    h.check("su3/theta2-carlson", cfg.tol_theta,
            "per-leg elliptic evaluation vs panelled quadrature", [&] {
                double worst = 0.0;
                Rng rng(cfg.seed, "su3.theta2", 0);
                int done = 0, attempts = 0;
                const int limit = 64 * cfg.trials;
                while (done < cfg.trials && attempts < limit) {
                    ++attempts;
                    const Mat a = random_su3(rng);
                    ActionAngleState st;
                    try {
                        st = actions(a);
                    } catch (const Error&) {
                        continue;
                    }
                    if (!well_inside_chart(st)) continue;
                    try {
                        const AngleVariables av = angle_variables(st);
                        const cd carlson = angle_theta2_carlson(st);
                        const double r = std::abs(av.theta[1] - carlson);
                        h.row("su3/theta2-carlson", static_cast<std::uint64_t>(done), r);
                        worst = std::max(worst, r);
                        ++done;
                    } catch (const Error&) {
                        continue;
                    }
                }
                if (done < cfg.trials)
                    throw Error("too few well-conditioned points (" + std::to_string(done) +
                                " of " + std::to_string(cfg.trials) + ")");
                return worst;
            });

    h.check("su3/canonical-angles", cfg.tol_angles,
            "i Omega = sum dI ^ dTheta, central differences at 1e-5", [&] {
                double worst = 0.0;
                Rng rng(cfg.seed, "su3.angles", 0);
                const std::vector<Mat> basis = su3_skew_basis();
                const Mat eye = Mat::identity(3);
                const double eps = 1e-5;
                const int basepoints = std::min(cfg.trials, 3);
                int done = 0, attempts = 0;
                while (done < basepoints && attempts < 64 * basepoints) {
                    ++attempts;
                    const Mat a = random_su3(rng);
                    ActionAngleState st;
                    try {
                        st = actions(a);
                    } catch (const Error&) {
                        continue;
                    }
                    if (!well_inside_chart(st)) continue;
                    try {
                        std::array<std::array<double, 3>, 8> di{};
                        std::array<std::array<cd, 3>, 8> dth{};
                        for (size_t b = 0; b < basis.size(); ++b) {
                            const Mat& x = basis[b];
                            const Mat curv = (0.5 * eps * eps) * (x * x);
                            const AngleProbe pp = angle_probe(a * (eye + eps * x + curv), 16);
                            const AngleProbe pm = angle_probe(a * (eye - eps * x + curv), 16);
                            for (int j = 0; j < 3; ++j) {
                                di[b][static_cast<size_t>(j)] =
                                    (pp.action[j] - pm.action[j]) / (2.0 * eps);
                                dth[b][static_cast<size_t>(j)] =
                                    (pp.theta[j] - pm.theta[j]) / (2.0 * eps);
                            }
                        }
                        double point = 0.0;
                        for (size_t ix = 0; ix < basis.size(); ++ix)
                            for (size_t iy = ix + 1; iy < basis.size(); ++iy) {
                                const cd lhs = cd(0.0, 1.0) *
                                               omega_eval({a, a * basis[ix]},
                                                          {a, a * basis[iy]});
                                cd rhs(0.0, 0.0);
                                for (int j = 0; j < 3; ++j)
                                    rhs += di[ix][static_cast<size_t>(j)] *
                                               dth[iy][static_cast<size_t>(j)] -
                                           di[iy][static_cast<size_t>(j)] *
                                               dth[ix][static_cast<size_t>(j)];
                                point = std::max(point, std::abs(lhs - rhs));
                            }
                        h.row("su3/canonical-angles", static_cast<std::uint64_t>(done), point);
                        worst = std::max(worst, point);
                        ++done;
                    } catch (const Error&) {
                        continue;
                    }
                }
                if (done < basepoints)
                    throw Error("too few well-conditioned points (" + std::to_string(done) +
                                " of " + std::to_string(basepoints) + ")");
                return worst;
            });

    h.check("su3/chart-canonicality", cfg.tol_form,
            "i Omega = sum dp ^ dq on trace-free directions", [&] {
                double worst = 0.0;
                Rng rng(cfg.seed, "su3.chart", 0);
                int done = 0, attempts = 0;
                while (done < cfg.trials && attempts < 64 * cfg.trials) {
                    ++attempts;
                    const Mat a = random_sl(rng, 3);
                    SU3ChartGradients g;
                    try {
                        su3_chart(a);
                        g = su3_chart_gradients(a);
                    } catch (const Error&) {
                        continue;
                    }
                    double point = 0.0;
                    for (int pair = 0; pair < 3; ++pair) {
                        const Mat d1 = a * random_traceless(rng, 3);
                        const Mat d2 = a * random_traceless(rng, 3);
                        const cd lhs = cd(0.0, 1.0) * omega_eval({a, d1}, {a, d2});
                        cd rhs(0.0, 0.0);
                        for (int j = 0; j < 3; ++j)
                            rhs += apply_gradient(g.dp[j], d1) * apply_gradient(g.dq[j], d2) -
                                   apply_gradient(g.dp[j], d2) * apply_gradient(g.dq[j], d1);
                        point = std::max(point,
                                         std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                    }
                    h.row("su3/chart-canonicality", static_cast<std::uint64_t>(done), point);
                    worst = std::max(worst, point);
                    ++done;
                }
                if (done < cfg.trials) throw Error("too few factorizable points");
                return worst;
            });

    // One pendulum trajectory shared by the five trajectory checks.
    std::vector<PendulumSample> traj;

    h.check("su3/pendulum-actions", cfg.tol_pendulum_actions,
            "stratum |a22|^2 = 2^(-1/2)", [&] {
                Rng rng(cfg.seed, "su3.pendulum", 0);
                const Mat a0 = unitary_stratum_point(rng);
                traj = pendulum_flow(SU3Point(a0), 10.0, 10000);
                double worst = 0.0;
                for (const PendulumSample& s : traj)
                    for (int j = 0; j < 3; ++j)
                        worst = std::max(worst,
                                         std::abs(s.action[j] - traj.front().action[j]));
                return worst;
            });

    h.check("su3/pendulum-frequency", cfg.tol_pendulum_freq,
            "omega'' = -2 rho sin omega on the stratum (1/I2^2 = 2)", [&] {
                if (traj.size() < 3) throw Error("trajectory unavailable");
                const double step = traj[1].t - traj[0].t;
                double worst = 0.0;
                for (size_t i = 1; i + 1 < traj.size(); ++i) {
                    const double omdd = (traj[i + 1].omega - 2.0 * traj[i].omega +
                                         traj[i - 1].omega) /
                                        (step * step);
                    const double rho = std::sqrt(std::max(
                        0.0, traj[i].action[0] * traj[i].action[1] * traj[i].action[2]));
                    worst = std::max(worst,
                                     std::abs(omdd + 2.0 * rho * std::sin(traj[i].omega)));
                }
                return worst;
            });

    h.check("su3/pendulum-energy", cfg.tol_pendulum_energy,
            "E = omega_dot^2/2 - 2 rho cos omega", [&] {
                if (traj.empty()) throw Error("trajectory unavailable");
                const auto energy = [](const PendulumSample& s) {
                    const double rho = std::sqrt(std::max(
                        0.0, s.action[0] * s.action[1] * s.action[2]));
                    return 0.5 * s.omega_dot * s.omega_dot - 2.0 * rho * std::cos(s.omega);
                };
                const double e0 = energy(traj.front());
                double worst = 0.0;
                for (const PendulumSample& s : traj)
                    worst = std::max(worst, std::abs(energy(s) - e0));
                return worst;
            });

    h.check("su3/pendulum-identity", cfg.tol_su3, "", [&] {
        if (traj.empty()) throw Error("trajectory unavailable");
        double worst = 0.0;
        for (const PendulumSample& s : traj) worst = std::max(worst, std::abs(s.residual));
        return worst;
    });

    h.check("su3/pendulum-moduli", cfg.tol_exact,
            "|a_jk|^2 = a_jk A_jk on the unitary stratum", [&] {
                if (traj.empty()) throw Error("trajectory unavailable");
                double worst = 0.0;
                for (const PendulumSample& s : traj) {
                    const Mat cof = cofactor_matrix(s.a);
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k)
                            worst = std::max(worst,
                                             std::abs(cd(s.mod2[3 * j + k], 0.0) -
                                                      s.a(j, k) * cof(j, k)));
                }
                return worst;
            });
}

// ---------------------------------------------------------------------------
// scatter suite
// ---------------------------------------------------------------------------

std::vector<double> lambda_table(int n) {
    switch (n) {
        case 2: return {0.9, -0.7};
        case 3: return {1.1, 0.3, -1.4};
        case 4: return {1.6, 0.5, -0.6, -1.7};
        default: throw ConfigError("scatter suite supports n in [2, 4]");
    }
}

std::vector<cd> mu_table(int n) {
    switch (n) {
        case 2: return {cd(0.6, 0.0), cd(-0.6, 0.0)};
        case 3: return {cd(0.7, 0.0), cd(-0.2, 0.0), cd(-0.5, 0.0)};
        case 4: return {cd(0.8, 0.0), cd(0.1, 0.0), cd(-0.3, 0.0), cd(-0.6, 0.0)};
        default: throw ConfigError("scatter suite supports n in [2, 4]");
    }
}

void suite_scatter(const ExperimentConfig& cfg, SuiteReport& rep) {
    Harness h{rep, cfg};
    const int n = cfg.n;
    const std::vector<double> lambda = lambda_table(n); // throws ConfigError for bad n
    const DiagonalGenerator mu(mu_table(n));
    const int kflow = 1;
    const double tflow = 0.5;

    SpectralConfig spec;
    spec.lambda = lambda;
    spec.xi_grid =
        SpectralConfig::uniform_grid(-cfg.grid_xi_max, cfg.grid_xi_max, cfg.grid_xi_count);

    Rng prng(cfg.seed, "scatter.potential", 0);
    const Mat coeff = random_skew_coefficient(prng, n, 0.35);
    const Potential q =
        gaussian_potential(coeff, cfg.grid_half_width, cfg.grid_h, 1.0, true);
    const PermutationSchedule sched = default_schedule(n);
    const int nsteps = sched.length();

    // Shared state filled by earlier checks and reused by later ones.
    ScatteringRecord rec, evolved;
    double lin_dt4 = std::numeric_limits<double>::quiet_NaN();
    PointwiseBracketReport pw;
    bool have_pw = false;

    h.check("scatter/zero-potential", cfg.tol_scatter_exact, "", [&] {
        const Potential q0 =
            gaussian_potential(Mat(n), cfg.grid_half_width, cfg.grid_h, 1.0, true);
        SpectralConfig sc = spec;
        sc.xi_grid = SpectralConfig::uniform_grid(-cfg.grid_xi_max, cfg.grid_xi_max, 33);
        const ScatteringRecord r0 = forward_scatter(q0, sc);
        const Mat eye = Mat::identity(n);
        double worst = 0.0;
        for (const ScatteringNode& node : r0.nodes)
            worst = std::max(worst, norm_max(node.s - eye));
        return worst;
    });

    h.check("scatter/born", 1.0, "residual scaled by the 5 eps^2 bound", [&] {
        double worst = 0.0;
        const double l1 = q.l1_norm();
        SpectralConfig sc = spec;
        sc.xi_grid = SpectralConfig::uniform_grid(-cfg.grid_xi_max, cfg.grid_xi_max, 17);
        for (const double eps : {0.05, 0.02}) {
            Potential qe = q;
            const double scale = eps / l1;
            for (Mat& v : qe.values) v = scale * v;
            const ScatteringRecord re = forward_scatter(qe, sc);
            for (const ScatteringNode& node : re.nodes) {
                Mat born = Mat::identity(n);
                for (int i = 0; i < qe.nodes(); ++i) {
                    const double w =
                        (i == 0 || i == qe.nodes() - 1) ? 0.5 * qe.h : qe.h;
                    const double x = qe.x_at(i);
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k) {
                            if (j == k) continue;
                            born(j, k) +=
                                w *
                                std::exp(cd(0.0, -node.xi * x *
                                                     (lambda[static_cast<size_t>(j)] -
                                                      lambda[static_cast<size_t>(k)]))) *
                                qe.values[static_cast<size_t>(i)](j, k);
                        }
                }
                worst = std::max(worst, norm_max(node.s - born) / (5.0 * eps * eps));
            }
        }
        return worst;
    });

    h.check("scatter/determinant", cfg.tol_det, "", [&] {
        rec = forward_scatter(q, spec);
        double worst = 0.0;
        for (const ScatteringNode& node : rec.nodes)
            worst = std::max(worst, std::abs(det(node.s) - cd(1.0, 0.0)));
        return worst;
    });

    h.check("scatter/unitarity", cfg.tol_unitarity, "skew-hermitian potential", [&] {
        if (rec.nodes.empty()) throw Error("record unavailable");
        const Mat eye = Mat::identity(n);
        double worst = 0.0;
        for (const ScatteringNode& node : rec.nodes)
            worst = std::max(worst, norm_max(node.s * dagger(node.s) - eye));
        return worst;
    });

    h.check("scatter/skew-factors", cfg.tol_unitarity, "v_plus* v_minus = 1", [&] {
        if (rec.nodes.empty()) throw Error("record unavailable");
        const Mat eye = Mat::identity(n);
        double worst = 0.0;
        for (const ScatteringNode& node : rec.nodes) {
            if (node.flagged) continue;
            worst = std::max(worst, norm_max(dagger(node.v_plus) * node.v_minus - eye));
        }
        return worst;
    });

    h.check("scatter/factor-consistency", cfg.tol_det,
            "v_minus^{-1} v_plus = s_minus^{-1} s_plus", [&] {
                if (rec.nodes.empty()) throw Error("record unavailable");
                double worst = 0.0;
                for (const ScatteringNode& node : rec.nodes) {
                    if (node.flagged) continue;
                    const Mat lhs = solve_upper(node.v_minus, node.v_plus);
                    const Mat rhs = solve_lower(node.s_minus, node.s_plus);
                    worst = std::max(worst, norm_max(lhs - rhs));
                }
                return worst;
            });

    h.check("scatter/recursion", cfg.tol_recursion,
            "gridwise residual of the commutator recursion", [&] {
                const std::vector<HierarchyTerm> terms = hierarchy_terms(q, spec, mu, 3);
                double worst = 0.0;
                for (const HierarchyTerm& t : terms) worst = std::max(worst, t.residual);
                return worst;
            });

    h.check("scatter/linearization", cfg.tol_linearization, "k = 1, dt = 1e-4", [&] {
        lin_dt4 = linearization_check(q, mu, kflow, 1e-4, spec);
        return lin_dt4;
    });

    h.check("scatter/linearization-order", 0.25,
            "residual ratio dt=1e-4 over dt=1e-3 (first-order decay)", [&] {
                if (!std::isfinite(lin_dt4)) throw Error("dt=1e-4 residual unavailable");
                const double lin_dt3 = linearization_check(q, mu, kflow, 1e-3, spec);
                return lin_dt4 / lin_dt3;
            });

    h.check("scatter/action-invariance", cfg.tol_invariance, "", [&] {
        if (rec.nodes.empty()) throw Error("record unavailable");
        evolved = evolve_scattering(rec, mu, kflow, tflow);
        double worst = 0.0;
        for (size_t i = 0; i < rec.nodes.size(); ++i) {
            if (rec.nodes[i].flagged || evolved.nodes[i].flagged) continue;
            const DarbouxChart c0 = darboux_coordinates(rec.nodes[i].s, sched);
            const DarbouxChart c1 = darboux_coordinates(evolved.nodes[i].s, sched);
            for (int nu = 0; nu < nsteps; ++nu)
                worst = std::max(worst, std::abs(c1.p[static_cast<size_t>(nu)] -
                                                 c0.p[static_cast<size_t>(nu)]));
        }
        return worst;
    });

    h.check("scatter/angle-slope", cfg.tol_qslope,
            "slope 2 xi^k (mu_k - mu_j) modulo 2 pi i", [&] {
                if (evolved.nodes.empty()) throw Error("evolved record unavailable");
                double worst = 0.0;
                for (size_t i = 0; i < rec.nodes.size(); ++i) {
                    if (rec.nodes[i].flagged || evolved.nodes[i].flagged) continue;
                    const DarbouxChart c0 = darboux_coordinates(rec.nodes[i].s, sched);
                    const DarbouxChart c1 = darboux_coordinates(evolved.nodes[i].s, sched);
                    const double xik = std::pow(rec.nodes[i].xi, kflow);
                    for (int nu = 0; nu < nsteps; ++nu) {
                        const auto [lj, lk] = label_pair(sched, nu + 1);
                        const cd rate = 2.0 * xik *
                                        (mu.mu()[static_cast<size_t>(lk - 1)] -
                                         mu.mu()[static_cast<size_t>(lj - 1)]);
                        const cd diff = c1.q[static_cast<size_t>(nu)] -
                                        c0.q[static_cast<size_t>(nu)] - tflow * rate;
                        worst = std::max(worst, std::abs(mod_two_pi_i(diff)) / tflow);
                    }
                }
                return worst;
            });

    h.check("scatter/hamiltonian-drift", cfg.tol_invariance, "relative", [&] {
        if (evolved.nodes.empty()) throw Error("evolved record unavailable");
        const HierarchyHamiltonian h0 = hierarchy_hamiltonian(rec, mu, kflow);
        const HierarchyHamiltonian h1 = hierarchy_hamiltonian(evolved, mu, kflow);
        return std::abs(h1.value - h0.value) / std::max(1.0, std::abs(h0.value));
    });

    h.check("scatter/hamiltonian-decomposition", cfg.tol_invariance,
            "H_k = sum c_nu action integrals (relative)", [&] {
                if (rec.nodes.empty()) throw Error("record unavailable");
                const HierarchyHamiltonian h0 = hierarchy_hamiltonian(rec, mu, kflow);
                return std::abs(h0.value - h0.decomposition()) /
                       std::max(1.0, std::abs(h0.value));
            });

    h.check("scatter/pointwise-local", cfg.tol_scatter_exact, "", [&] {
        if (rec.nodes.empty()) throw Error("record unavailable");
        pw = pointwise_bracket_check(rec);
        have_pw = true;
        return pw.local_identity;
    });

    h.check("scatter/pointwise-actions", cfg.tol_nonlocal, "", [&] {
        if (!have_pw) throw Error("pointwise report unavailable");
        return pw.action_locality;
    });

    h.check("scatter/pointwise-renormalized", cfg.tol_nonlocal, "", [&] {
        if (!have_pw) throw Error("pointwise report unavailable");
        return pw.renormalized;
    });

    h.check("scatter/self-convergence", 0.25,
            "successive grid/tolerance refinements shrink by 4x or more", [&] {
                const auto sweep = [&](double hh, double rt, double at) {
                    const Potential qq = gaussian_potential(coeff, 6.0, hh, 1.0, true);
                    SpectralConfig sc;
                    sc.lambda = lambda;
                    sc.xi_grid = SpectralConfig::uniform_grid(-2.4, 2.4, 5);
                    sc.rtol = rt;
                    sc.atol = at;
                    return forward_scatter(qq, sc);
                };
                const auto maxdiff = [](const ScatteringRecord& x,
                                        const ScatteringRecord& y) {
                    double d = 0.0;
                    for (size_t i = 0; i < x.nodes.size(); ++i)
                        d = std::max(d, norm_max(x.nodes[i].s - y.nodes[i].s));
                    return d;
                };
                const ScatteringRecord ra = sweep(1.0 / 32.0, 1e-9, 1e-11);
                const ScatteringRecord rb = sweep(1.0 / 64.0, 1e-10, 1e-12);
                const ScatteringRecord rc = sweep(1.0 / 128.0, 1e-11, 1e-13);
                const double d1 = maxdiff(ra, rb);
                const double d2 = maxdiff(rb, rc);
                return d2 / std::max(d1, 1e-300);
            });
}

} // namespace

// ---------------------------------------------------------------------------
// public interface
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (n < 2)
        throw ConfigError("n must be at least 2 (no coordinates exist at n = 1)");
    if (n > 6) throw ConfigError("n larger than 6 is not supported");
    if (trials < 1) throw ConfigError("trials must be positive");
    if (!(grid_h > 0.0) || !(grid_half_width > 0.0) || !(grid_xi_max > 0.0))
        throw ConfigError("grid parameters must be positive");
    if (grid_xi_count < 2) throw ConfigError("xi grid needs at least 2 nodes");
    const double tols[] = {tol_form,     tol_alt,         tol_bracket,   tol_jacobi,
                           tol_exact,    tol_casimir,     tol_flow,      tol_nonlocal,
                           tol_su3,      tol_su3_pairs,   tol_theta,     tol_angles,
                           tol_pendulum_actions, tol_pendulum_freq, tol_pendulum_energy,
                           tol_scatter_exact, tol_unitarity, tol_det,    tol_recursion,
                           tol_linearization, tol_invariance, tol_qslope};
    for (double t : tols)
        if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
}

bool SuiteReport::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

double SuiteReport::seconds() const {
    double s = 0.0;
    for (const CheckResult& c : checks) s += c.seconds;
    return s;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"form",  "bracket", "casimir",
                                                   "flows", "su3",     "scatter"};
    return names;
}

SuiteReport run_suite(const std::string& suite, const ExperimentConfig& cfg) {
    cfg.validate();
    SuiteReport rep;
    rep.suite = suite;
    if (suite == "form") {
        suite_form(cfg, rep);
    } else if (suite == "bracket") {
        suite_bracket(cfg, rep);
    } else if (suite == "casimir") {
        suite_casimir(cfg, rep);
    } else if (suite == "flows") {
        suite_flows(cfg, rep);
    } else if (suite == "su3") {
        suite_su3(cfg, rep);
    } else if (suite == "scatter") {
        suite_scatter(cfg, rep);
    } else if (suite == "all") {
        suite_form(cfg, rep);
        suite_bracket(cfg, rep);
        suite_casimir(cfg, rep);
        suite_flows(cfg, rep);
        suite_su3(cfg, rep);
        suite_scatter(cfg, rep);
    } else {
        throw ConfigError("unknown suite '" + suite +
                          "' (known: form, bracket, casimir, flows, su3, scatter, all)");
    }
    return rep;
}

} // namespace mgflow
