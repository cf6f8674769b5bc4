/// \file poisson.cpp
/// \brief Quadratic bracket, Casimirs, conjugation flows, two-point bracket.

#include "mgflow/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace mgflow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Mat fd_gradient(const std::function<cd(const Mat&)>& f, const Mat& a, double step_scale) {
    const int n = a.n();
    const double h = step_scale * std::max(1.0, norm_max(a));
    Mat g(n);
    Mat w = a;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cd saved = w(j, k);
            w(j, k) = saved - 2.0 * h;
            const cd fm2 = f(w);
            w(j, k) = saved - h;
            const cd fm1 = f(w);
            w(j, k) = saved + h;
            const cd fp1 = f(w);
            w(j, k) = saved + 2.0 * h;
            const cd fp2 = f(w);
            w(j, k) = saved;
            g(j, k) = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        }
    return g;
}

Mat SmoothFunction::grad(const Mat& a) const {
    if (gradient) return gradient(a);
    return fd_gradient(evaluator, a);
}

DiagonalGenerator::DiagonalGenerator(std::vector<cd> entries) : mu_(std::move(entries)) {
    cd tr(0.0, 0.0);
    double scale = 0.0;
    for (const cd& z : mu_) {
        tr += z;
        scale += std::abs(z);
    }
    if (std::abs(tr) > 1e-14 * std::max(1.0, scale))
        throw Error("DiagonalGenerator: entries must sum to zero");
}

cd bracket_tensor(const Mat& a, int j, int k, int l, int m) {
    return 0.25 * (sgn(l - j) - sgn(m - k)) * a(j, m) * a(l, k);
}

cd bracket(const SmoothFunction& f, const SmoothFunction& g, const Mat& a) {
    const int n = a.n();
    const Mat fg = f.grad(a);
    const Mat gg = g.grad(a);
    cd s(0.0, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cd fjk = fg(j, k);
            if (fjk == cd(0.0, 0.0)) continue;
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    const cd glm = gg(l, m);
                    if (glm == cd(0.0, 0.0)) continue;
                    s += fjk * glm * bracket_tensor(a, j, k, l, m);
                }
        }
    return s;
}

Mat hamiltonian_vector_field(const Mat& grad_h, const Mat& a) {
    const int n = a.n();
    Mat v(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            cd s(0.0, 0.0);
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    const cd g = grad_h(l, m);
                    if (g == cd(0.0, 0.0)) continue;
                    s += g * bracket_tensor(a, l, m, j, k);
                }
            v(j, k) = s;
        }
    return v;
}

Mat linear_flow(const Mat& a0, const DiagonalGenerator& mu, double t) {
    const Mat e_plus = exp_diag(mu.mu(), cd(0.5 * t, 0.0));
    const Mat e_minus = exp_diag(mu.mu(), cd(-0.5 * t, 0.0));
    return e_plus * a0 * e_minus;
}

namespace {

IndexSet leading_set(int j) {
    IndexSet s;
    for (int i = 1; i <= j; ++i) s.push_back(i);
    return s;
}

IndexSet trailing_set(int j, int n) {
    IndexSet s;
    for (int i = j; i <= n; ++i) s.push_back(i);
    return s;
}

/// Gradient of tr(mu log delta) via Jacobi's formula on the principal-minor
/// ladder: H = sum_j mu_j log[d-_j d+_{j-1} / (d-_{j+1} d+_j)].
Mat flow_hamiltonian_gradient(const Mat& a, const DiagonalGenerator& mu) {
    const int n = a.n();
    const PrincipalMinors pm = principal_minors(a);
    Mat g(n);
    for (int j = 1; j <= n; ++j) {
        const cd w = mu.mu()[static_cast<size_t>(j - 1)];
        if (w == cd(0.0, 0.0)) continue;
        g = g + w * ((cd(1.0, 0.0) / pm.dminus(j)) *
                         minor_gradient(a, trailing_set(j, n), trailing_set(j, n)) -
                     (cd(1.0, 0.0) / pm.dplus(j)) *
                         minor_gradient(a, leading_set(j), leading_set(j)));
        if (j - 1 >= 1)
            g = g + w * (cd(1.0, 0.0) / pm.dplus(j - 1)) *
                        minor_gradient(a, leading_set(j - 1), leading_set(j - 1));
        if (j + 1 <= n)
            g = g - w * (cd(1.0, 0.0) / pm.dminus(j + 1)) *
                        minor_gradient(a, trailing_set(j + 1, n), trailing_set(j + 1, n));
    }
    return g;
}

} // namespace

FlowHamiltonian flow_hamiltonian(const Mat& a, const DiagonalGenerator& mu) {
    const TriangularFactorization f = factorize(a);
    FlowHamiltonian out;
    out.value = cd(0.0, 0.0);
    for (int j = 0; j < a.n(); ++j)
        out.value += mu.mu()[static_cast<size_t>(j)] * std::log(f.delta(j, j));
    const PermutationSchedule sched = default_schedule(a.n());
    out.coefficients.resize(static_cast<size_t>(sched.length()));
    for (int nu = 1; nu <= sched.length(); ++nu) {
        const auto [j, k] = label_pair(sched, nu);
        out.coefficients[static_cast<size_t>(nu - 1)] =
            mu.mu()[static_cast<size_t>(k - 1)] - mu.mu()[static_cast<size_t>(j - 1)];
    }
    return out;
}

SmoothFunction coordinate_function(int j, int k) {
    SmoothFunction f;
    f.evaluator = [j, k](const Mat& a) { return a(j, k); };
    f.gradient = [j, k](const Mat& a) { return matrix_unit(a.n(), j, k); };
    return f;
}

SmoothFunction minor_function(IndexSet rows, IndexSet cols) {
    SmoothFunction f;
    f.evaluator = [rows, cols](const Mat& a) { return minor(a, rows, cols); };
    f.gradient = [rows, cols](const Mat& a) { return minor_gradient(a, rows, cols); };
    return f;
}

SmoothFunction casimir_function(int j, int n) {
    SmoothFunction f;
    f.evaluator = [j, n](const Mat& a) {
        const PrincipalMinors pm = principal_minors(a);
        return pm.dplus(j) / pm.dminus(j + 1);
    };
    f.gradient = [j, n](const Mat& a) {
        const PrincipalMinors pm = principal_minors(a);
        const cd lead = pm.dplus(j);
        const cd trail = pm.dminus(j + 1);
        Mat g = (cd(1.0, 0.0) / trail) * minor_gradient(a, leading_set(j), leading_set(j));
        if (j + 1 <= n)
            g = g - (lead / (trail * trail)) *
                        minor_gradient(a, trailing_set(j + 1, n), trailing_set(j + 1, n));
        return g;
    };
    return f;
}

SmoothFunction chart_p_function(const PermutationSchedule& s, int nu) {
    SmoothFunction f;
    f.evaluator = [s, nu](const Mat& a) {
        return darboux_coordinates(a, s).p[static_cast<size_t>(nu - 1)];
    };
    f.gradient = [s, nu](const Mat& a) {
        return chart_gradients(a, s).dp[static_cast<size_t>(nu - 1)];
    };
    return f;
}

SmoothFunction chart_q_function(const PermutationSchedule& s, int nu) {
    SmoothFunction f;
    f.evaluator = [s, nu](const Mat& a) {
        return darboux_coordinates(a, s).q[static_cast<size_t>(nu - 1)];
    };
    f.gradient = [s, nu](const Mat& a) {
        return chart_gradients(a, s).dq[static_cast<size_t>(nu - 1)];
    };
    return f;
}

SmoothFunction flow_hamiltonian_function(const DiagonalGenerator& mu) {
    SmoothFunction f;
    f.evaluator = [mu](const Mat& a) { return flow_hamiltonian(a, mu).value; };
    f.gradient = [mu](const Mat& a) { return flow_hamiltonian_gradient(a, mu); };
    return f;
}

SmoothFunction product_function(const SmoothFunction& f, const SmoothFunction& g) {
    SmoothFunction h;
    h.evaluator = [f, g](const Mat& a) { return f.evaluator(a) * g.evaluator(a); };
    h.gradient = [f, g](const Mat& a) {
        return g.evaluator(a) * f.grad(a) + f.evaluator(a) * g.grad(a);
    };
    return h;
}

SmoothFunction scaled_function(const SmoothFunction& f, cd c) {
    SmoothFunction h;
    h.evaluator = [f, c](const Mat& a) { return c * f.evaluator(a); };
    h.gradient = [f, c](const Mat& a) { return c * f.grad(a); };
    return h;
}

OdeOptions flow_ode_options() {
    OdeOptions o;
    o.rtol = 1e-9;
    o.atol = 1e-12;
    o.max_step = 1e-2;
    return o;
}

std::vector<TrajectoryPoint> hamiltonian_flow(const Mat& a0, const SmoothFunction& h,
                                              double t, int steps, const OdeOptions& opts) {
    if (steps < 1) throw Error("hamiltonian_flow: steps must be positive");
    const int n = a0.n();
    const std::vector<cd> phi0 = casimir_values(a0);

    const OdeRhs rhs = [&](double, const std::vector<cd>& y, std::vector<cd>& dy) {
        Mat a(n, y);
        const Mat v = hamiltonian_vector_field(h.grad(a), a);
        dy = v.data();
    };
    const OdeObserver guard = [&](double, const std::vector<cd>& y) {
        Mat a(n, y);
        try {
            factorize(a);
        } catch (const NotInGLStar& e) {
            throw StratumExit("hamiltonian_flow: trajectory left GL_* (" +
                              std::string(e.what()) + ")");
        }
    };

    std::vector<TrajectoryPoint> traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    const auto drift_of = [&](const Mat& a) {
        const std::vector<cd> phi = casimir_values(a);
        double d = 0.0;
        for (size_t j = 0; j < phi.size(); ++j)
            d = std::max(d, std::abs(phi[j] - phi0[j]) / std::max(1.0, std::abs(phi0[j])));
        return d;
    };
    traj.push_back({0.0, a0, 0.0});

    std::vector<cd> y = a0.data();
    for (int i = 1; i <= steps; ++i) {
        const double t_prev = t * static_cast<double>(i - 1) / static_cast<double>(steps);
        const double t_next = t * static_cast<double>(i) / static_cast<double>(steps);
        y = ode_integrate(rhs, t_prev, std::move(y), t_next, opts, guard);
        Mat a(n, y);
        traj.push_back({t_next, a, drift_of(a)});
    }
    return traj;
}

cd nonlocal_bracket(const SmoothFunction& f, const SmoothFunction& g, const Mat& s1,
                    const Mat& s2) {
    if (s1.n() != s2.n()) throw Error("nonlocal_bracket: dimension mismatch");
    const int n = s1.n();
    const Mat fg = f.grad(s1);
    const Mat gg = g.grad(s2);
    // sum_{jklm} F_jk G_lm s1_jk s2_lm (delta_jl - delta_km) reduces to
    // row-sum and column-sum pairings of P = F .* s1 and Q = G .* s2.
    std::vector<cd> prow(static_cast<size_t>(n)), pcol(static_cast<size_t>(n));
    std::vector<cd> qrow(static_cast<size_t>(n)), qcol(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cd p = fg(i, j) * s1(i, j);
            const cd q = gg(i, j) * s2(i, j);
            prow[static_cast<size_t>(i)] += p;
            pcol[static_cast<size_t>(j)] += p;
            qrow[static_cast<size_t>(i)] += q;
            qcol[static_cast<size_t>(j)] += q;
        }
    cd s(0.0, 0.0);
    for (int i = 0; i < n; ++i)
        s += prow[static_cast<size_t>(i)] * qrow[static_cast<size_t>(i)] -
             pcol[static_cast<size_t>(i)] * qcol[static_cast<size_t>(i)];
    return s;
}

int intersection_weight(const IndexSet& j1, const IndexSet& k1, const IndexSet& j2,
                        const IndexSet& k2) {
    const auto count = [](const IndexSet& a, const IndexSet& b) {
        int c = 0;
        for (int x : a)
            for (int y : b)
                if (x == y) ++c;
        return c;
    };
    return count(j1, j2) - count(k1, k2);
}

DarbouxChart renormalized_chart(const DarbouxChart& chart) {
    DarbouxChart out = chart;
    const cd qscale = cd(1.0, 0.0) / cd(0.0, kTwoPi);
    for (cd& v : out.p) v *= 0.5;
    for (cd& v : out.q) v *= qscale;
    return out;
}

} // namespace mgflow
