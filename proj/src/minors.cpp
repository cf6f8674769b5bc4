/// \file minors.cpp
/// \brief Minor evaluation via dense determinants of extracted submatrices.

#include "mgflow/minors.hpp"

namespace mgflow {

void validate_index_set(const IndexSet& s, int n) {
    int prev = 0;
    for (int v : s) {
        if (v < 1 || v > n)
            throw InvalidIndexSets("index " + std::to_string(v) + " out of range 1.." +
                                   std::to_string(n));
        if (v <= prev)
            throw InvalidIndexSets("index set not strictly increasing at " + std::to_string(v));
        prev = v;
    }
    if (static_cast<int>(s.size()) > n) throw InvalidIndexSets("index set larger than dimension");
}

cd minor(const Mat& a, const IndexSet& rows, const IndexSet& cols) {
    if (rows.size() != cols.size())
        throw InvalidIndexSets("row and column sets have different cardinality");
    validate_index_set(rows, a.n());
    validate_index_set(cols, a.n());
    const int k = static_cast<int>(rows.size());
    if (k == 0) return cd(1.0, 0.0);
    Mat sub(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = a(rows[static_cast<size_t>(i)] - 1,
                                                  cols[static_cast<size_t>(j)] - 1);
    return det(sub);
}

PrincipalMinors principal_minors(const Mat& a) {
    const int n = a.n();
    PrincipalMinors pm;
    pm.lead.resize(static_cast<size_t>(n) + 1);
    pm.trail.resize(static_cast<size_t>(n) + 1);
    pm.lead[0] = cd(1.0, 0.0);
    pm.trail[static_cast<size_t>(n)] = cd(1.0, 0.0); // dminus(n+1) = 1
    for (int j = 1; j <= n; ++j) {
        Mat sub(j);
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c) sub(r, c) = a(r, c);
        pm.lead[static_cast<size_t>(j)] = det(sub);
        const int m = n - j + 1;
        Mat tail(m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) tail(r, c) = a(j - 1 + r, j - 1 + c);
        pm.trail[static_cast<size_t>(j - 1)] = det(tail);
    }
    return pm;
}

Mat cofactor_matrix(const Mat& a) {
    const int n = a.n();
    Mat cof(n);
    if (n == 1) {
        cof(0, 0) = 1.0;
        return cof;
    }
    Mat sub(n - 1);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            int ri = 0;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                int ci = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == k) continue;
                    sub(ri, ci) = a(r, c);
                    ++ci;
                }
                ++ri;
            }
            const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            cof(j, k) = sign * det(sub);
        }
    }
    return cof;
}

} // namespace mgflow
