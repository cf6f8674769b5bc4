/// \file matrix.hpp
/// \brief Dense square complex matrices with the small kernel of operations
///        the library needs.
///
/// Dimensions are tiny (2 <= n <= 8 in all supported workloads), so every
/// algorithm is a straightforward dense kernel; LU-style eliminations use
/// partial pivoting.  No external linear-algebra dependency is warranted at
/// this scale.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "mgflow/errors.hpp"

namespace mgflow {

using cd = std::complex<double>;

/// Square complex matrix, row-major storage.
class Mat {
public:
    Mat() : n_(0) {}
    explicit Mat(int n) : n_(n), d_(static_cast<size_t>(n) * n, cd(0.0, 0.0)) {}
    Mat(int n, std::vector<cd> data) : n_(n), d_(std::move(data)) {
        if (static_cast<int>(d_.size()) != n * n)
            throw Error("Mat: data size does not match dimension");
    }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }
    cd& operator()(int i, int j) { return d_[static_cast<size_t>(i) * n_ + j]; }
    const cd& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<cd>& data() const { return d_; }
    std::vector<cd>& data() { return d_; }

    bool finite() const {
        for (const cd& z : d_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    int n_;
    std::vector<cd> d_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cd s, const Mat& a);
Mat operator*(double s, const Mat& a);

/// Commutator a*b - b*a.
Mat comm(const Mat& a, const Mat& b);

/// Conjugate transpose, plain transpose, entrywise conjugate.
Mat dagger(const Mat& a);
Mat transp(const Mat& a);
Mat conj_entries(const Mat& a);

cd trace(const Mat& a);

/// Determinant via partially pivoted LU.
cd det(const Mat& a);

/// Inverse via Gauss-Jordan elimination with partial pivoting.
/// Throws SingularMatrix when a pivot degenerates.
Mat inverse(const Mat& a);

/// Frobenius norm and entrywise max norm.
double norm_fro(const Mat& a);
double norm_max(const Mat& a);

/// Diagonal helpers.
std::vector<cd> diag_of(const Mat& a);
Mat diag_mat(const std::vector<cd>& v);

/// exp(t * diag(v)) as a diagonal matrix.
Mat exp_diag(const std::vector<cd>& v, cd t = cd(1.0, 0.0));

/// Solve U*X = B (U upper-triangular) / L*X = B (L lower-triangular) by
/// substitution.  Throws SingularMatrix on a zero diagonal.
Mat solve_upper(const Mat& u, const Mat& b);
Mat solve_lower(const Mat& l, const Mat& b);

/// Matrix unit e_{jk} (0-based indices).
Mat matrix_unit(int n, int j, int k);

/// Antidiagonal permutation matrix r = sum_j e_{j, n-1-j}.
Mat antidiagonal(int n);

/// Throws Error when any entry is NaN/Inf; used at construction boundaries.
void require_finite(const Mat& a, const std::string& what);

} // namespace mgflow
