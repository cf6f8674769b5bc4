/// \file factorization.cpp
/// \brief Crout-style eliminations for the one-sided triangular
///        factorizations and the Gauss (LDU) factorization.
///
/// No pivoting is used on purpose: the pivots of the unpivoted elimination
/// are exactly the ratios of consecutive principal minors, so a collapsing
/// pivot is the membership test for GL_*.  Pivot magnitudes are compared
/// against a Hadamard-type bound of the rows feeding them, which bounds the
/// largest possible minor at that size.

#include "mgflow/factorization.hpp"

#include <cmath>

#include "mgflow/minors.hpp"

namespace mgflow {

namespace {

/// Unpivoted A = L * U0 with L lower-triangular (diagonal included) and U0
/// unit upper-triangular.  `side` and `minor_index` shape the NotInGLStar
/// report: step k corresponds to minor_index(k), 1-based.
struct CroutResult {
    Mat l;
    Mat u0;
};

template <typename IndexMap>
CroutResult crout_lower(const Mat& a, double singular_tol, const char* side,
                        IndexMap minor_index) {
    const int n = a.n();
    Mat l(n);
    Mat u0 = Mat::identity(n);
    double hadamard = 1.0;
    for (int k = 0; k < n; ++k) {
        // Hadamard bound of the leading (k+1)x(k+1) block: product of its
        // row 2-norms; an upper bound for any minor of that size.
        double row2 = 0.0;
        for (int j = 0; j <= k; ++j) row2 += std::norm(a(k, j));
        hadamard *= std::sqrt(row2);
        const double threshold = singular_tol * std::max(1.0, hadamard);

        for (int i = k; i < n; ++i) {
            cd s = a(i, k);
            for (int m = 0; m < k; ++m) s -= l(i, m) * u0(m, k);
            l(i, k) = s;
        }
        const cd piv = l(k, k);
        if (std::abs(piv) < threshold)
            throw NotInGLStar(minor_index(k), side, std::abs(piv));
        for (int j = k + 1; j < n; ++j) {
            cd s = a(k, j);
            for (int m = 0; m < k; ++m) s -= l(k, m) * u0(m, j);
            u0(k, j) = s / piv;
        }
    }
    return {l, u0};
}

Mat reverse_both(const Mat& a) {
    const int n = a.n();
    Mat b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = a(n - 1 - i, n - 1 - j);
    return b;
}

} // namespace

Mat invert_unit_upper(const Mat& u) {
    const int n = u.n();
    Mat x = Mat::identity(n);
    for (int j = 0; j < n; ++j)
        for (int i = j - 1; i >= 0; --i) {
            cd s(0.0, 0.0);
            for (int k = i + 1; k <= j; ++k) s += u(i, k) * x(k, j);
            x(i, j) = -s;
        }
    return x;
}

Mat invert_unit_lower(const Mat& l) {
    const int n = l.n();
    Mat x = Mat::identity(n);
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            cd s(0.0, 0.0);
            for (int k = j; k < i; ++k) s += l(i, k) * x(k, j);
            x(i, j) = -s;
        }
    return x;
}

TriangularFactorization factorize(const Mat& a, double singular_tol) {
    const int n = a.n();
    TriangularFactorization f;

    // Minus side: a = a_minus * v_minus^{-1} needs the leading minors.
    const CroutResult mn =
        crout_lower(a, singular_tol, "minus", [](int k) { return k + 1; });
    f.a_minus = mn.l;
    f.v_minus = invert_unit_upper(mn.u0);

    // Plus side: reverse both index orders, factor, reverse back; needs the
    // trailing minors (leading minors of the reversed matrix).
    const Mat b = reverse_both(a);
    const CroutResult pl =
        crout_lower(b, singular_tol, "plus", [n](int k) { return n - k; });
    f.a_plus = reverse_both(pl.l);
    f.v_plus = reverse_both(invert_unit_upper(pl.u0));

    f.delta_plus = diag_mat(diag_of(f.a_plus));
    f.delta_minus = diag_mat(diag_of(f.a_minus));
    Mat d(n);
    for (int j = 0; j < n; ++j) d(j, j) = f.delta_plus(j, j) / f.delta_minus(j, j);
    f.delta = d;
    return f;
}

GaussFactorization gauss_factorize(const Mat& v, double singular_tol) {
    const int n = v.n();
    // Doolittle LDU: v = L * delta * b_plus with L unit lower.
    Mat l = Mat::identity(n);
    Mat u(n); // upper, diagonal included
    double hadamard = 1.0;
    for (int k = 0; k < n; ++k) {
        double row2 = 0.0;
        for (int j = 0; j <= k; ++j) row2 += std::norm(v(k, j));
        hadamard *= std::sqrt(row2);
        const double threshold = singular_tol * std::max(1.0, hadamard);

        for (int j = k; j < n; ++j) {
            cd s = v(k, j);
            for (int m = 0; m < k; ++m) s -= l(k, m) * u(m, j);
            u(k, j) = s;
        }
        const cd piv = u(k, k);
        if (std::abs(piv) < threshold) throw SingularLeadingMinor(k + 1);
        for (int i = k + 1; i < n; ++i) {
            cd s = v(i, k);
            for (int m = 0; m < k; ++m) s -= l(i, m) * u(m, k);
            l(i, k) = s / piv;
        }
    }
    GaussFactorization g;
    g.delta = diag_mat(diag_of(u));
    Mat bp = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) bp(i, j) = u(i, j) / u(i, i);
    g.b_plus = bp;
    g.b_minus = invert_unit_lower(l);
    return g;
}

std::vector<cd> casimir_values(const Mat& a) {
    const PrincipalMinors pm = principal_minors(a);
    const int n = a.n();
    std::vector<cd> phi(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j)
        phi[static_cast<size_t>(j - 1)] = pm.dplus(j) / pm.dminus(j + 1);
    return phi;
}

} // namespace mgflow
