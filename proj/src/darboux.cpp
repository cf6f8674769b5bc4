/// \file darboux.cpp
/// \brief Two-form evaluation, minor-ratio charts, analytic differentials.

#include "mgflow/darboux.hpp"

#include <cmath>

#include "mgflow/rng.hpp"

namespace mgflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Splits {
    Mat xp, yp, xm, ym;
};

/// M_+ = a_+^{-1} adot v_+ splits as Y_+ (upper, diagonal included) minus
/// the strict lower part; the strict lower part equals -v_+^{-1} dv_+, so
/// X_+ = v_+^{-1} dv_+ = -strict_lower(M_+).  Mirror image on the minus side.
Splits factor_splits(const TriangularFactorization& f, const Mat& adot) {
    const int n = adot.n();
    const Mat mp = solve_upper(f.a_plus, adot * f.v_plus);
    const Mat mm = solve_lower(f.a_minus, adot * f.v_minus);
    Splits s{Mat(n), Mat(n), Mat(n), Mat(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i <= j) {
                s.yp(i, j) = mp(i, j);
                if (i < j) s.xm(i, j) = -mm(i, j);
            }
            if (i >= j) {
                s.ym(i, j) = mm(i, j);
                if (i > j) s.xp(i, j) = -mp(i, j);
            }
        }
    return s;
}

void check_pair(const TangentVector& t1, const TangentVector& t2) {
    if (t1.base.n() != t2.base.n() || norm_max(t1.base - t2.base) != 0.0)
        throw Error("omega_eval: tangent vectors must share the base point");
}

/// Hadamard-type bound for minors of the given size: product over selected
/// rows of the 2-norm of the row restricted to the selected columns.
double minor_scale(const Mat& a, const IndexSet& rows, const IndexSet& cols) {
    double h = 1.0;
    for (int r : rows) {
        double s = 0.0;
        for (int c : cols) s += std::norm(a(r - 1, c - 1));
        h *= std::sqrt(s);
    }
    return h;
}

cd guarded_minor(const Mat& b, const IndexSet& rows, const IndexSet& cols, int nu,
                 double singular_tol) {
    const cd m = minor(b, rows, cols);
    if (std::abs(m) < singular_tol * std::max(1.0, minor_scale(b, rows, cols)))
        throw DegeneratePoint(nu);
    return m;
}

} // namespace

cd omega_eval(const TangentVector& t1, const TangentVector& t2, double singular_tol) {
    check_pair(t1, t2);
    const TriangularFactorization f = factorize(t1.base, singular_tol);
    const Splits s1 = factor_splits(f, t1.direction);
    const Splits s2 = factor_splits(f, t2.direction);
    const cd plus = trace(s1.xp * s2.yp) - trace(s2.xp * s1.yp);
    const cd minus = trace(s1.xm * s2.ym) - trace(s2.xm * s1.ym);
    return plus - minus;
}

cd omega_eval_alt(const TangentVector& t1, const TangentVector& t2, double singular_tol) {
    check_pair(t1, t2);
    const Mat& a = t1.base;
    const TriangularFactorization f = factorize(a, singular_tol);
    const Splits s1 = factor_splits(f, t1.direction);
    const Splits s2 = factor_splits(f, t2.direction);
    // W = (dv_+) v_+^{-1} - (dv_-) v_-^{-1} with dv_pm = v_pm X_pm.
    const Mat vpi = invert_unit_lower(f.v_plus);
    const Mat vmi = invert_unit_upper(f.v_minus);
    const Mat w1 = f.v_plus * s1.xp * vpi - f.v_minus * s1.xm * vmi;
    const Mat w2 = f.v_plus * s2.xp * vpi - f.v_minus * s2.xm * vmi;
    const Mat ai = inverse(a);
    const Mat z1 = ai * t1.direction;
    const Mat z2 = ai * t2.direction;
    return trace(w1 * z2) - trace(w2 * z1);
}

DarbouxChart darboux_coordinates(const Mat& a, const PermutationSchedule& schedule,
                                 double singular_tol) {
    DarbouxChart chart;
    chart.schedule = schedule;
    const int nsteps = schedule.length();
    for (int nu = 1; nu <= nsteps; ++nu) {
        const Mat b = conj_by_perm(a, schedule.partial[static_cast<size_t>(nu - 1)]);
        const int k = schedule.positions[static_cast<size_t>(nu - 1)];
        IndexSet j_set, k_set, k1_set, k2_set;
        for (int j = 1; j <= k - 1; ++j) j_set.push_back(j);
        k_set = j_set;
        k_set.push_back(k);
        k1_set = j_set;
        k1_set.push_back(k + 1);
        k2_set = j_set;
        k2_set.push_back(k);
        k2_set.push_back(k + 1);

        const cd m_k = guarded_minor(b, k_set, k_set, nu, singular_tol);
        const cd m_k1 = guarded_minor(b, k1_set, k1_set, nu, singular_tol);
        const cd m_j = guarded_minor(b, j_set, j_set, nu, singular_tol);
        const cd m_k2 = guarded_minor(b, k2_set, k2_set, nu, singular_tol);
        const cd m_num = guarded_minor(b, k1_set, k_set, nu, singular_tol);
        const cd m_den = guarded_minor(b, k_set, k1_set, nu, singular_tol);

        chart.p.push_back(std::log(m_k * m_k1 / (m_j * m_k2)));
        chart.q.push_back(std::log(m_num / m_den));
    }
    chart.casimirs = casimir_values(a);
    return chart;
}

Mat minor_gradient(const Mat& a, const IndexSet& rows, const IndexSet& cols) {
    if (rows.size() != cols.size())
        throw InvalidIndexSets("minor_gradient: cardinality mismatch");
    validate_index_set(rows, a.n());
    validate_index_set(cols, a.n());
    const int k = static_cast<int>(rows.size());
    Mat g(a.n());
    if (k == 0) return g;
    Mat sub(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sub(i, j) = a(rows[static_cast<size_t>(i)] - 1, cols[static_cast<size_t>(j)] - 1);
    const Mat cof = cofactor_matrix(sub);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            g(rows[static_cast<size_t>(i)] - 1, cols[static_cast<size_t>(j)] - 1) = cof(i, j);
    return g;
}

Mat cofactor_entry_gradient(const Mat& a, int j, int k) {
    const int n = a.n();
    IndexSet rows, cols;
    for (int r = 1; r <= n; ++r)
        if (r != j + 1) rows.push_back(r);
    for (int c = 1; c <= n; ++c)
        if (c != k + 1) cols.push_back(c);
    const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
    return sign * minor_gradient(a, rows, cols);
}

ChartGradients chart_gradients(const Mat& a, const PermutationSchedule& schedule,
                               double singular_tol) {
    ChartGradients g;
    const int nsteps = schedule.length();
    for (int nu = 1; nu <= nsteps; ++nu) {
        const Perm& sigma = schedule.partial[static_cast<size_t>(nu - 1)];
        const Mat b = conj_by_perm(a, sigma);
        const int k = schedule.positions[static_cast<size_t>(nu - 1)];
        IndexSet j_set, k_set, k1_set, k2_set;
        for (int j = 1; j <= k - 1; ++j) j_set.push_back(j);
        k_set = j_set;
        k_set.push_back(k);
        k1_set = j_set;
        k1_set.push_back(k + 1);
        k2_set = j_set;
        k2_set.push_back(k);
        k2_set.push_back(k + 1);

        const cd m_k = guarded_minor(b, k_set, k_set, nu, singular_tol);
        const cd m_k1 = guarded_minor(b, k1_set, k1_set, nu, singular_tol);
        const cd m_j = guarded_minor(b, j_set, j_set, nu, singular_tol);
        const cd m_k2 = guarded_minor(b, k2_set, k2_set, nu, singular_tol);
        const cd m_num = guarded_minor(b, k1_set, k_set, nu, singular_tol);
        const cd m_den = guarded_minor(b, k_set, k1_set, nu, singular_tol);

        Mat dp_b = (cd(1.0, 0.0) / m_k) * minor_gradient(b, k_set, k_set) +
                   (cd(1.0, 0.0) / m_k1) * minor_gradient(b, k1_set, k1_set) -
                   ((cd(1.0, 0.0) / m_j) * minor_gradient(b, j_set, j_set) +
                    (cd(1.0, 0.0) / m_k2) * minor_gradient(b, k2_set, k2_set));
        Mat dq_b = (cd(1.0, 0.0) / m_num) * minor_gradient(b, k1_set, k_set) -
                   (cd(1.0, 0.0) / m_den) * minor_gradient(b, k_set, k1_set);

        const Perm inv = perm_inverse(sigma);
        g.dp.push_back(conj_by_perm(dp_b, inv));
        g.dq.push_back(conj_by_perm(dq_b, inv));
    }
    return g;
}

cd apply_gradient(const Mat& grad, const Mat& direction) {
    cd s(0.0, 0.0);
    for (size_t i = 0; i < grad.data().size(); ++i) s += grad.data()[i] * direction.data()[i];
    return s;
}

double verify_decomposition(const Mat& a, const PermutationSchedule& schedule,
                            int trials, std::uint64_t seed) {
    const ChartGradients g = chart_gradients(a, schedule);
    const int nsteps = schedule.length();
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, "verify-decomposition", static_cast<std::uint64_t>(t));
        TangentVector t1{a, random_tangent(rng, a.n())};
        TangentVector t2{a, random_tangent(rng, a.n())};
        const cd om = omega_eval(t1, t2);
        cd sum(0.0, 0.0);
        for (int nu = 0; nu < nsteps; ++nu) {
            const size_t u = static_cast<size_t>(nu);
            sum += apply_gradient(g.dp[u], t1.direction) * apply_gradient(g.dq[u], t2.direction) -
                   apply_gradient(g.dp[u], t2.direction) * apply_gradient(g.dq[u], t1.direction);
        }
        worst = std::max(worst, std::abs(om - sum));
    }
    return worst;
}

cd symmetry_pullback(const Mat& a, Symmetry which, const TangentVector& t1,
                     const TangentVector& t2) {
    Mat base(0);
    Mat d1(0), d2(0);
    if (which == Symmetry::TransposeInverse) {
        const Mat ai = inverse(a);
        base = transp(ai);
        d1 = cd(-1.0, 0.0) * transp(ai * t1.direction * ai);
        d2 = cd(-1.0, 0.0) * transp(ai * t2.direction * ai);
    } else {
        const Mat r = antidiagonal(a.n());
        base = r * a * r;
        d1 = r * t1.direction * r;
        d2 = r * t2.direction * r;
    }
    return omega_eval({base, d1}, {base, d2});
}

void chart_n3_closed_form(const Mat& a, std::vector<cd>& p, std::vector<cd>& q) {
    if (a.n() != 3) throw Error("chart_n3_closed_form: dimension must be 3");
    const Mat cof = cofactor_matrix(a);
    const cd delta = det(a);
    p.assign(3, cd(0.0, 0.0));
    q.assign(3, cd(0.0, 0.0));
    p[0] = std::log(a(0, 0) * a(1, 1) / cof(2, 2));
    p[1] = std::log(cof(0, 0) * cof(2, 2) / (delta * a(1, 1)));
    p[2] = std::log(a(1, 1) * a(2, 2) / cof(0, 0));
    q[0] = std::log(a(1, 0) / a(0, 1));
    q[1] = std::log(cof(0, 2) / cof(2, 0));
    q[2] = std::log(a(2, 1) / a(1, 2));
}

void chart_n3_closed_form_gradients(const Mat& a, std::vector<Mat>& dp,
                                    std::vector<Mat>& dq) {
    if (a.n() != 3) throw Error("chart_n3_closed_form_gradients: dimension must be 3");
    const Mat cof = cofactor_matrix(a);
    const cd delta = det(a);
    const auto unit_over = [&](int j, int k) {
        return (cd(1.0, 0.0) / a(j, k)) * matrix_unit(3, j, k);
    };
    const auto cof_over = [&](int j, int k) {
        return (cd(1.0, 0.0) / cof(j, k)) * cofactor_entry_gradient(a, j, k);
    };
    dp.clear();
    dq.clear();
    dp.push_back(unit_over(0, 0) + unit_over(1, 1) - cof_over(2, 2));
    dp.push_back(cof_over(0, 0) + cof_over(2, 2) -
                 ((cd(1.0, 0.0) / delta) * cof + unit_over(1, 1)));
    dp.push_back(unit_over(1, 1) + unit_over(2, 2) - cof_over(0, 0));
    dq.push_back(unit_over(1, 0) - unit_over(0, 1));
    dq.push_back(cof_over(0, 2) - cof_over(2, 0));
    dq.push_back(unit_over(2, 1) - unit_over(1, 2));
}

cd unwrap_towards(cd value, cd reference) {
    const double k = std::round((reference.imag() - value.imag()) / kTwoPi);
    return value + cd(0.0, kTwoPi * k);
}

} // namespace mgflow
