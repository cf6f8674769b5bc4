/// \file su3.cpp
/// \brief SU(3) action-angle machinery: spectral actions, the cubic spectral
///        identity, elliptic angle variables, and the pendulum flow.

#include "mgflow/su3.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mgflow/carlson.hpp"
#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/quadrature.hpp"

namespace mgflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

double entry_scale(const Mat& a) { return std::max(1.0, norm_max(a)); }

/// Complex spectral invariants together with the middle chart angle q2.
struct Invariants {
    Mat A;
    cd I1, I2, I3, I0, zeta, q2;
};

Invariants su3_invariants(const Mat& a) {
    if (a.n() != 3) throw Error("su3: expected a 3x3 matrix");
    Invariants inv;
    inv.A = cofactor_matrix(a);
    const Mat& A = inv.A;
    inv.I1 = a(0, 0) * A(0, 0);
    inv.I2 = a(1, 1) * A(1, 1);
    inv.I3 = a(2, 2) * A(2, 2);
    inv.zeta = a(0, 0) * a(1, 1) * a(2, 2);
    inv.I0 = inv.I2 - inv.I1 - inv.I3 - 1.0;
    const double s = entry_scale(a);
    const double tol1 = 1e-13 * s;
    const double tol2 = 1e-13 * s * s;
    auto need = [](cd v, double tol, int nu) {
        if (std::abs(v) < tol) throw DegeneratePoint(nu);
        return v;
    };
    const cd num = need(a(1, 0), tol1, 2) * need(A(2, 0), tol2, 2) * need(a(2, 1), tol1, 2);
    const cd den = need(a(0, 1), tol1, 2) * need(A(0, 2), tol2, 2) * need(a(1, 2), tol1, 2);
    inv.q2 = cd(0.0, 1.0) * std::log(num / den);
    return inv;
}

/// Straight path in the zeta plane from zeta(a) to -2 I1 I3 / I0 with the
/// unit branch-calibration factor sigma and the calibrated endpoint value of
/// sqrt(F+G).
struct ThetaPath {
    cd alpha, beta;
    cd z0;
    cd sigma;
    cd r_end;
};

cd cubic_fpg(cd z, double i1, double i3, double i0) {
    const cd sq = z * i0 + 2.0 * i1 * i3;
    return sq * sq + 4.0 * (z - i1) * (z - i3) * (z - i1 * i3);
}

double segment_distance(cd a, cd b, cd c) {
    const cd ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(c - a);
    double t = ((c - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * ab - c);
}

ThetaPath theta_path(const ActionAngleState& st) {
    if (!st.chart_valid)
        throw DegeneratePoint(2);
    if (std::abs(st.I0) < 1e-12)
        throw BranchPathFailure("angle_variables: I0 vanishes, path endpoint undefined");
    ThetaPath tp;
    spectral_roots(st.I1, st.I3, st.I0, tp.alpha, tp.beta);
    const double rscale = std::max({1.0, std::abs(tp.alpha), std::abs(tp.beta)});
    if (std::abs(tp.alpha - tp.beta) < 1e-8 * rscale)
        throw CoincidentRoots("angle_variables: spectral cubic roots coincide");
    if (std::min(std::abs(tp.alpha), std::abs(tp.beta)) < 1e-10 * rscale)
        throw CoincidentRoots("angle_variables: nonzero root collides with the deflated zero");
    tp.z0 = cd(-2.0 * st.I1 * st.I3 / st.I0, 0.0);

    const cd zeta = st.zeta;
    const cd sq_f = zeta * st.I0 + 2.0 * st.I1 * st.I3;
    const cd g = 4.0 * (zeta - st.I1) * (zeta - st.I3) * (zeta - st.I1 * st.I3);
    tp.r_end = std::sqrt(sq_f * sq_f + g);
    if (std::abs(sq_f) < 1e-12 || std::abs(tp.r_end) < 1e-12)
        throw BranchPathFailure("angle_variables: branch calibration degenerate at endpoint");
    const cd phase_u = -std::sin(st.q[1] / 2.0) * std::cos(st.q[1] / 2.0) * g;
    cd sigma = phase_u / (cd(0.0, -1.0) * sq_f * tp.r_end);
    if (std::abs(std::abs(sigma) - 1.0) > 1e-6)
        throw BranchPathFailure("angle_variables: calibration factor is not unimodular");
    tp.sigma = sigma / std::abs(sigma);

    // The integrands have branch points at {0, alpha, beta} and poles at
    // {I1, I3, I1 I3}; refuse paths passing through any of them.
    const cd critical[6] = {cd(0.0, 0.0),       tp.alpha,
                            tp.beta,            cd(st.I1, 0.0),
                            cd(st.I3, 0.0),     cd(st.I1 * st.I3, 0.0)};
    for (const cd& c : critical)
        if (segment_distance(zeta, tp.z0, c) < 1e-7 * std::max(1.0, std::abs(c)))
            throw BranchPathFailure("angle_variables: zeta path meets a critical point");
    return tp;
}

Mat pendulum_vector(const Mat& x) {
    return cd(0.0, -1.0) * hamiltonian_vector_field(log_i2_gradient(x), x);
}

/// Unitary polar factor by the (inverse-free in spirit) Newton iteration
/// u <- (u + u^{-*})/2, normalized to unit determinant.
Mat polar_project(const Mat& x) {
    Mat u = x;
    for (int it = 0; it < 64; ++it) {
        const Mat next = 0.5 * (u + inverse(dagger(u)));
        const double delta = norm_max(next - u);
        u = next;
        if (delta < 1e-15) break;
    }
    const cd d = det(u);
    return std::pow(d, -1.0 / 3.0) * u;
}

} // namespace

SU3Point::SU3Point(const Mat& m) : a(m) {
    if (m.n() != 3) throw Error("SU3Point: matrix must be 3x3");
    require_finite(m, "SU3Point");
    if (norm_max(m * dagger(m) - Mat::identity(3)) > 1e-10)
        throw Error("SU3Point: matrix is not unitary to 1e-10");
    if (std::abs(det(m) - cd(1.0, 0.0)) > 1e-10)
        throw Error("SU3Point: determinant is not 1 to 1e-10");
}

SU3Chart su3_chart(const Mat& a) {
    if (a.n() != 3) throw Error("su3_chart: expected a 3x3 matrix");
    const Mat A = cofactor_matrix(a);
    const double s = entry_scale(a);
    const double tol1 = 1e-13 * s;
    const double tol2 = 1e-13 * s * s;
    auto need = [](cd v, double tol, int nu) {
        if (std::abs(v) < tol) throw DegeneratePoint(nu);
        return v;
    };
    SU3Chart ch;
    ch.p[0] = std::log(need(a(0, 0), tol1, 1) * need(A(0, 0), tol2, 1));
    ch.p[1] = std::log(need(a(0, 0) * a(1, 1) * a(2, 2), 1e-13 * s * s * s, 2));
    ch.p[2] = std::log(need(a(2, 2), tol1, 3) * need(A(2, 2), tol2, 3));
    const cd i(0.0, 1.0);
    ch.q[0] = i * std::log(need(a(1, 2), tol1, 1) * need(A(0, 2), tol2, 1) /
                           (need(a(2, 1), tol1, 1) * need(A(2, 0), tol2, 1)));
    ch.q[1] = i * std::log(need(a(1, 0), tol1, 2) * need(A(2, 0), tol2, 2) *
                           need(a(2, 1), tol1, 2) /
                           (need(a(0, 1), tol1, 2) * need(A(0, 2), tol2, 2) *
                            need(a(1, 2), tol1, 2)));
    ch.q[2] = i * std::log(need(A(0, 2), tol2, 3) * need(a(0, 1), tol1, 3) /
                           (need(A(2, 0), tol2, 3) * need(a(1, 0), tol1, 3)));
    return ch;
}

SU3ChartGradients su3_chart_gradients(const Mat& a) {
    (void)su3_chart(a); // validates non-degeneracy
    const Mat A = cofactor_matrix(a);
    auto unit_over = [&](int j, int k) {
        return (cd(1.0, 0.0) / a(j, k)) * matrix_unit(3, j, k);
    };
    auto cof_over = [&](int j, int k) {
        return (cd(1.0, 0.0) / A(j, k)) * cofactor_entry_gradient(a, j, k);
    };
    SU3ChartGradients g;
    g.dp[0] = unit_over(0, 0) + cof_over(0, 0);
    g.dp[1] = unit_over(0, 0) + unit_over(1, 1) + unit_over(2, 2);
    g.dp[2] = unit_over(2, 2) + cof_over(2, 2);
    const cd i(0.0, 1.0);
    g.dq[0] = i * (unit_over(1, 2) + cof_over(0, 2) - unit_over(2, 1) - cof_over(2, 0));
    g.dq[1] = i * (unit_over(1, 0) + cof_over(2, 0) + unit_over(2, 1) - unit_over(0, 1) -
                   cof_over(0, 2) - unit_over(1, 2));
    g.dq[2] = i * (cof_over(0, 2) + unit_over(0, 1) - cof_over(2, 0) - unit_over(1, 0));
    return g;
}

ActionAngleState actions(const Mat& a, const double* previous_omega) {
    if (a.n() != 3) throw Error("actions: expected a 3x3 matrix");
    ActionAngleState st;
    const Mat A = cofactor_matrix(a);
    st.I1 = (a(0, 0) * A(0, 0)).real();
    st.I2 = (a(1, 1) * A(1, 1)).real();
    st.I3 = (a(2, 2) * A(2, 2)).real();
    st.I0 = st.I2 - st.I1 - st.I3 - 1.0;
    const double prod = st.I1 * st.I2 * st.I3;
    st.rho = prod > 0.0 ? std::sqrt(prod) : 0.0;
    st.zeta = a(0, 0) * a(1, 1) * a(2, 2);
    const cd zeta_star = A(0, 0) * A(1, 1) * A(2, 2);
    st.branch_ambiguous =
        std::abs(st.zeta) < 1e-12 || std::abs(zeta_star) < 1e-12;
    double omega = 0.0;
    if (!st.branch_ambiguous) {
        omega = (std::log(st.zeta / zeta_star) / cd(0.0, 2.0)).real();
        // The ratio zeta/zeta* fixes omega only mod pi (on the unitary slice
        // it equals exp(2i arg zeta)); align the representative with the
        // direction of zeta so that rho e^{i omega} tracks zeta itself and
        // the cos/sin identities hold.
        if ((std::exp(cd(0.0, -omega)) * st.zeta).real() < 0.0) omega += kPi;
        if (omega > kPi) omega -= 2.0 * kPi;
    }
    if (previous_omega != nullptr) {
        while (omega - *previous_omega > kPi) omega -= 2.0 * kPi;
        while (omega - *previous_omega < -kPi) omega += 2.0 * kPi;
    }
    st.omega = omega;
    try {
        const SU3Chart ch = su3_chart(a);
        for (int j = 0; j < 3; ++j) {
            st.p[j] = ch.p[j];
            st.q[j] = ch.q[j];
        }
        st.chart_valid = true;
    } catch (const DegeneratePoint&) {
        st.chart_valid = false;
    }
    return st;
}

cd spectral_identity_residual(const Mat& a) {
    const Invariants inv = su3_invariants(a);
    const cd sq_f = inv.zeta * inv.I0 + 2.0 * inv.I1 * inv.I3;
    const cd g =
        4.0 * (inv.zeta - inv.I1) * (inv.zeta - inv.I3) * (inv.zeta - inv.I1 * inv.I3);
    const cd c = std::cos(inv.q2 / 2.0);
    return sq_f * sq_f + c * c * g;
}

void spectral_roots(double i1, double i3, double i0, cd& alpha, cd& beta) {
    const double c2 = i0 * i0 - 4.0 * (i1 + i3 + i1 * i3);
    const double c1 = 4.0 * i1 * i3 * (i0 + 1.0 + i1 + i3);
    const cd disc = std::sqrt(cd(c2 * c2 - 16.0 * c1, 0.0));
    alpha = (disc - c2) / 8.0;
    beta = (-disc - c2) / 8.0;
}

AngleVariables angle_variables(const ActionAngleState& state, int panels) {
    const ThetaPath tp = theta_path(state);
    const GaussLegendre& gl = gauss_legendre(64);
    const int m = static_cast<int>(gl.nodes.size());

    // Ascending quadrature nodes on [0,1] so the branch of sqrt(F+G) can be
    // continued monotonically away from the calibrated endpoint.
    std::vector<double> s, w;
    s.reserve(static_cast<size_t>(panels) * m);
    w.reserve(static_cast<size_t>(panels) * m);
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = static_cast<double>(pnl) / panels;
        const double hi = static_cast<double>(pnl + 1) / panels;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (int i = m - 1; i >= 0; --i) { // stored descending; reverse to ascend
            s.push_back(mid + half * gl.nodes[static_cast<size_t>(i)]);
            w.push_back(half * gl.weights[static_cast<size_t>(i)]);
        }
    }

    const cd dz = tp.z0 - state.zeta;
    const size_t npts = s.size();
    std::vector<cd> zs(npts), r(npts);
    cd prev = tp.r_end;
    for (size_t i = 0; i < npts; ++i) {
        zs[i] = state.zeta + s[i] * dz;
        cd ri = std::sqrt(cubic_fpg(zs[i], state.I1, state.I3, state.I0));
        if (std::abs(ri - prev) > std::abs(ri + prev)) ri = -ri;
        r[i] = ri;
        prev = ri;
    }

    const double i1 = state.I1, i3 = state.I3, i0 = state.I0;
    const cd isig = cd(0.0, 1.0) * tp.sigma;
    cd acc1(0.0, 0.0), acc2(0.0, 0.0), acc3(0.0, 0.0);
    for (size_t i = 0; i < npts; ++i) {
        const cd z = zs[i];
        const cd inv_r = cd(1.0, 0.0) / r[i];
        const cd n1 =
            isig * (-2.0 + (i0 + 2.0 * i3) / (z - i1) + i3 * (i0 + 2.0) / (z - i1 * i3)) *
            inv_r;
        const cd n2 = 2.0 * isig * inv_r;
        const cd n3 =
            isig * (-2.0 + (i0 + 2.0 * i1) / (z - i3) + i1 * (i0 + 2.0) / (z - i1 * i3)) *
            inv_r;
        acc1 += w[i] * n1;
        acc2 += w[i] * n2;
        acc3 += w[i] * n3;
    }
    // The nodes run from zeta(a) towards z0; the angle formulas integrate the
    // opposite way, so the accumulated value enters with a minus sign.
    AngleVariables out;
    out.alpha = tp.alpha;
    out.beta = tp.beta;
    out.sigma = tp.sigma;
    out.theta[0] = state.q[0] / state.I1 - acc1 * dz;
    out.theta[1] = -acc2 * dz;
    out.theta[2] = state.q[2] / state.I3 - acc3 * dz;
    return out;
}

cd angle_theta2_carlson(const ActionAngleState& state, int nlegs) {
    const ThetaPath tp = theta_path(state);
    const std::array<cd, 3> e = {cd(0.0, 0.0), tp.alpha, tp.beta};
    const size_t npts = static_cast<size_t>(nlegs) + 1;
    std::vector<cd> zs(npts);
    for (size_t i = 0; i < npts; ++i)
        zs[i] = state.zeta +
                (static_cast<double>(i) / nlegs) * (tp.z0 - state.zeta);

    // Column-continued square roots sqrt(zeta - e_j) along the path.
    std::vector<std::array<cd, 3>> x(npts);
    for (int j = 0; j < 3; ++j) {
        for (size_t i = 0; i < npts; ++i) {
            cd v = std::sqrt(zs[i] - e[static_cast<size_t>(j)]);
            if (i > 0 && std::abs(v - x[i - 1][static_cast<size_t>(j)]) >
                             std::abs(v + x[i - 1][static_cast<size_t>(j)]))
                v = -v;
            x[i][static_cast<size_t>(j)] = v;
        }
    }
    // Fix the overall sheet so the starting product matches the calibrated
    // branch of sqrt(F+G) = 2 sqrt(z) sqrt(z-alpha) sqrt(z-beta).
    const cd prod0 = 2.0 * x[0][0] * x[0][1] * x[0][2];
    if (std::abs(prod0 - tp.r_end) > std::abs(prod0 + tp.r_end))
        for (size_t i = 0; i < npts; ++i) x[i][0] = -x[i][0];

    cd total(0.0, 0.0);
    for (int mleg = 0; mleg < nlegs; ++mleg) {
        const size_t m0 = static_cast<size_t>(mleg);
        const cd x1 = zs[m0], x2 = zs[m0 + 1];
        const std::array<cd, 3>& ys = x[m0];
        const std::array<cd, 3>& xs = x[m0 + 1];
        const cd d = x2 - x1;
        const cd u23 = (xs[1] * xs[2] * ys[0] + ys[1] * ys[2] * xs[0]) / d;
        const cd u13 = (xs[0] * xs[2] * ys[1] + ys[0] * ys[2] * xs[1]) / d;
        const cd u12 = (xs[0] * xs[1] * ys[2] + ys[0] * ys[1] * xs[2]) / d;
        cd leg = 2.0 * carlson_rf(u23 * u23, u13 * u13, u12 * u12);
        // Resolve the RF sheet against a midpoint estimate of the integrand.
        const cd zm = 0.5 * (x1 + x2);
        cd den(1.0, 0.0);
        for (int j = 0; j < 3; ++j) {
            cd xm = std::sqrt(zm - e[static_cast<size_t>(j)]);
            if (std::abs(xm - xs[static_cast<size_t>(j)]) >
                std::abs(xm + xs[static_cast<size_t>(j)]))
                xm = -xm;
            den *= xm;
        }
        const cd est = d / den;
        if (std::abs(leg - est) > std::abs(leg + est)) leg = -leg;
        total += leg;
    }
    return cd(0.0, -1.0) * tp.sigma * total;
}

Mat log_i2_gradient(const Mat& a) {
    if (a.n() != 3) throw Error("log_i2_gradient: expected a 3x3 matrix");
    const cd a22_cof = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    const cd i2 = a(1, 1) * a22_cof;
    const double s = entry_scale(a);
    if (std::abs(i2) < 1e-10 * s * s * s)
        throw StratumExit("log_i2_gradient: middle action vanishes");
    Mat g(3);
    g(1, 1) = a22_cof;
    g(0, 0) = a(1, 1) * a(2, 2);
    g(2, 2) = a(1, 1) * a(0, 0);
    g(0, 2) = -a(1, 1) * a(2, 0);
    g(2, 0) = -a(1, 1) * a(0, 2);
    return (cd(1.0, 0.0) / i2) * g;
}

std::vector<PendulumSample> pendulum_flow(const SU3Point& start, double t_final,
                                          int steps) {
    if (steps < 1) throw Error("pendulum_flow: steps must be positive");
    const double h = t_final / steps;
    Mat x = start.a;
    std::vector<PendulumSample> out;
    out.reserve(static_cast<size_t>(steps) + 1);
    double prev_omega = 0.0;
    for (int i = 0; i <= steps; ++i) {
        PendulumSample smp;
        smp.t = h * i;
        smp.a = x;
        const Mat cof = cofactor_matrix(x);
        smp.action[0] = (x(0, 0) * cof(0, 0)).real();
        smp.action[1] = (x(1, 1) * cof(1, 1)).real();
        smp.action[2] = (x(2, 2) * cof(2, 2)).real();
        const cd zeta = x(0, 0) * x(1, 1) * x(2, 2);
        if (std::abs(zeta) < 1e-12)
            throw StratumExit("pendulum_flow: diagonal product vanished");
        double omega = std::arg(zeta);
        if (i > 0) {
            while (omega - prev_omega > kPi) omega -= 2.0 * kPi;
            while (omega - prev_omega < -kPi) omega += 2.0 * kPi;
        }
        smp.omega = omega;
        prev_omega = omega;
        const Mat k1 = pendulum_vector(x);
        const cd zeta_dot = k1(0, 0) * x(1, 1) * x(2, 2) + x(0, 0) * k1(1, 1) * x(2, 2) +
                            x(0, 0) * x(1, 1) * k1(2, 2);
        smp.omega_dot = (zeta_dot / zeta).imag();
        try {
            smp.residual = spectral_identity_residual(x);
        } catch (const DegeneratePoint&) {
            throw StratumExit("pendulum_flow: chart degenerated along the trajectory");
        }
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                smp.mod2[3 * j + k] = std::norm(x(j, k));
        out.push_back(smp);
        if (i == steps) break;
        const Mat k2 = pendulum_vector(x + (0.5 * h) * k1);
        const Mat k3 = pendulum_vector(x + (0.5 * h) * k2);
        const Mat k4 = pendulum_vector(x + h * k3);
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.finite()) throw StepFailure("pendulum_flow: non-finite state");
        x = polar_project(x);
    }
    return out;
}

Mat unitary_stratum_point(Rng& rng) {
    const double target = std::sqrt(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat u = random_su3(rng);
        auto val = [&](double th) {
            const cd mixed = std::sin(th) * u(0, 1) + std::cos(th) * u(1, 1);
            return std::norm(mixed) - target;
        };
        const int nscan = 200;
        double lo = 0.0, hi = -1.0;
        double prev_th = 0.0;
        double prev_v = val(0.0);
        for (int i = 1; i <= nscan; ++i) {
            const double th = 2.0 * kPi * i / nscan;
            const double v = val(th);
            if ((prev_v < 0.0) != (v < 0.0)) {
                lo = prev_th;
                hi = th;
                break;
            }
            prev_th = th;
            prev_v = v;
        }
        if (hi < 0.0) continue;
        double flo = val(lo);
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = val(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double th = 0.5 * (lo + hi);
        Mat rot = Mat::identity(3);
        rot(0, 0) = std::cos(th);
        rot(0, 1) = -std::sin(th);
        rot(1, 0) = std::sin(th);
        rot(1, 1) = std::cos(th);
        return rot * u;
    }
    throw Error("unitary_stratum_point: no sign change found");
}

} // namespace mgflow
