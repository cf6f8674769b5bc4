/// \file matrix.cpp
/// \brief Dense kernels for the Mat class.

#include "mgflow/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace mgflow {

namespace {
void check_same(const Mat& a, const Mat& b) {
    if (a.n() != b.n()) throw Error("matrix dimension mismatch");
}
} // namespace

Mat operator+(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat c(a.n());
    for (size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

Mat operator-(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat c(a.n());
    for (size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

Mat operator*(const Mat& a, const Mat& b) {
    check_same(a, b);
    const int n = a.n();
    Mat c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cd aik = a(i, k);
            if (aik == cd(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Mat operator*(cd s, const Mat& a) {
    Mat c(a.n());
    for (size_t i = 0; i < a.data().size(); ++i) c.data()[i] = s * a.data()[i];
    return c;
}

Mat operator*(double s, const Mat& a) { return cd(s, 0.0) * a; }

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat dagger(const Mat& a) {
    const int n = a.n();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

Mat transp(const Mat& a) {
    const int n = a.n();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = a(j, i);
    return c;
}

Mat conj_entries(const Mat& a) {
    Mat c(a.n());
    for (size_t i = 0; i < a.data().size(); ++i) c.data()[i] = std::conj(a.data()[i]);
    return c;
}

cd trace(const Mat& a) {
    cd t(0.0, 0.0);
    for (int i = 0; i < a.n(); ++i) t += a(i, i);
    return t;
}

cd det(const Mat& a) {
    const int n = a.n();
    if (n == 0) return cd(1.0, 0.0);
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (n == 3)
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    // Partially pivoted LU for n >= 4.
    Mat u = a;
    cd d(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(u(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(u(i, k)) > best) { best = std::abs(u(i, k)); piv = i; }
        if (best == 0.0) return cd(0.0, 0.0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(u(k, j), u(piv, j));
            d = -d;
        }
        d *= u(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cd f = u(i, k) / u(k, k);
            for (int j = k + 1; j < n; ++j) u(i, j) -= f * u(k, j);
        }
    }
    return d;
}

Mat inverse(const Mat& a) {
    const int n = a.n();
    Mat w = a;
    Mat inv = Mat::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(w(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(w(i, k)) > best) { best = std::abs(w(i, k)); piv = i; }
        if (best == 0.0) throw SingularMatrix("inverse: zero pivot at column " + std::to_string(k));
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w(k, j), w(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        const cd p = w(k, k);
        for (int j = 0; j < n; ++j) { w(k, j) /= p; inv(k, j) /= p; }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const cd f = w(i, k);
            if (f == cd(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

double norm_fro(const Mat& a) {
    double s = 0.0;
    for (const cd& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double norm_max(const Mat& a) {
    double s = 0.0;
    for (const cd& z : a.data()) s = std::max(s, std::abs(z));
    return s;
}

std::vector<cd> diag_of(const Mat& a) {
    std::vector<cd> v(a.n());
    for (int i = 0; i < a.n(); ++i) v[i] = a(i, i);
    return v;
}

Mat diag_mat(const std::vector<cd>& v) {
    Mat m(static_cast<int>(v.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = v[i];
    return m;
}

Mat exp_diag(const std::vector<cd>& v, cd t) {
    Mat m(static_cast<int>(v.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = std::exp(t * v[i]);
    return m;
}

Mat solve_upper(const Mat& u, const Mat& b) {
    const int n = u.n();
    Mat x(n);
    for (int j = 0; j < n; ++j)
        for (int i = n - 1; i >= 0; --i) {
            cd s = b(i, j);
            for (int k = i + 1; k < n; ++k) s -= u(i, k) * x(k, j);
            if (u(i, i) == cd(0.0, 0.0)) throw SingularMatrix("solve_upper: zero diagonal");
            x(i, j) = s / u(i, i);
        }
    return x;
}

Mat solve_lower(const Mat& l, const Mat& b) {
    const int n = l.n();
    Mat x(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cd s = b(i, j);
            for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
            if (l(i, i) == cd(0.0, 0.0)) throw SingularMatrix("solve_lower: zero diagonal");
            x(i, j) = s / l(i, i);
        }
    return x;
}

Mat matrix_unit(int n, int j, int k) {
    Mat m(n);
    m(j, k) = 1.0;
    return m;
}

Mat antidiagonal(int n) {
    Mat m(n);
    for (int j = 0; j < n; ++j) m(j, n - 1 - j) = 1.0;
    return m;
}

void require_finite(const Mat& a, const std::string& what) {
    if (!a.finite()) throw Error(what + ": non-finite matrix entries");
}

} // namespace mgflow
