/// \file schedule.cpp
/// \brief Schedule construction and permutation bookkeeping.

#include "mgflow/schedule.hpp"

#include <cmath>

#include "mgflow/factorization.hpp"
#include "mgflow/minors.hpp"

namespace mgflow {

Perm perm_inverse(const Perm& sigma) {
    Perm inv(sigma.size());
    for (size_t j = 0; j < sigma.size(); ++j) inv[static_cast<size_t>(sigma[j])] = static_cast<int>(j);
    return inv;
}

Mat perm_matrix(const Perm& sigma, int n) {
    Mat r(n);
    for (int j = 0; j < n; ++j) r(j, sigma[static_cast<size_t>(j)]) = 1.0;
    return r;
}

Mat conj_by_perm(const Mat& a, const Perm& sigma) {
    // r(sigma)^{-1} a r(sigma) has entries a[inv(i), inv(j)].
    const int n = a.n();
    const Perm inv = perm_inverse(sigma);
    Mat b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b(i, j) = a(inv[static_cast<size_t>(i)], inv[static_cast<size_t>(j)]);
    return b;
}

PermutationSchedule default_schedule(int n) {
    if (n < 2) throw Error("default_schedule: n must be at least 2");
    PermutationSchedule s;
    s.n = n;
    for (int sweep = n - 1; sweep >= 1; --sweep)
        for (int k = 1; k <= sweep; ++k) s.positions.push_back(k);
    Perm id(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) id[static_cast<size_t>(j)] = j;
    s.partial.push_back(id);
    for (int pos : s.positions) {
        // Apply the adjacent transposition t = (pos-1, pos) (0-based) so the
        // matrices satisfy r_nu = r_{nu-1} * pi_nu, i.e. sigma -> t o sigma.
        Perm t = id;
        t[static_cast<size_t>(pos - 1)] = pos;
        t[static_cast<size_t>(pos)] = pos - 1;
        const Perm& prev = s.partial.back();
        Perm next(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            next[static_cast<size_t>(j)] = t[static_cast<size_t>(prev[static_cast<size_t>(j)])];
        s.partial.push_back(next);
    }
    return s;
}

std::pair<int, int> label_pair(const PermutationSchedule& sched, int nu) {
    if (nu < 1 || nu > sched.length()) throw Error("label_pair: step out of range");
    // tau inverts the permutation in force *before* step nu, matching the
    // conjugated submatrix the chart reads its labels from.
    const Perm tau = perm_inverse(sched.partial[static_cast<size_t>(nu - 1)]);
    const int k = sched.positions[static_cast<size_t>(nu - 1)];
    return {tau[static_cast<size_t>(k - 1)] + 1, tau[static_cast<size_t>(k)] + 1};
}

Mat block_reduce(const Mat& a, const PermutationSchedule& sched, int nu) {
    if (nu < 1 || nu > sched.length()) throw Error("block_reduce: step out of range");
    const Mat b = conj_by_perm(a, sched.partial[static_cast<size_t>(nu - 1)]);
    const int k = sched.positions[static_cast<size_t>(nu - 1)];

    IndexSet J;
    for (int j = 1; j <= k - 1; ++j) J.push_back(j);
    const cd mJ = minor(b, J, J);
    // Hadamard-type scale for the (k-1)-sized leading minor of b.
    double hadamard = 1.0;
    for (int i = 0; i < k - 1; ++i) {
        double row2 = 0.0;
        for (int j = 0; j < k - 1; ++j) row2 += std::norm(b(i, j));
        hadamard *= std::sqrt(row2);
    }
    if (std::abs(mJ) < kSingularTol * std::max(1.0, hadamard))
        throw SingularLeadingMinor(k - 1);

    Mat block(2);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            IndexSet rows = J;
            IndexSet cols = J;
            rows.push_back(k + u);
            cols.push_back(k + v);
            block(u, v) = minor(b, rows, cols) / mJ;
        }
    return block;
}

} // namespace mgflow
