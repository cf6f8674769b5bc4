/// \file minors.hpp
/// \brief Minors m(rows; cols), principal-minor ladders, cofactor matrices.
///
/// Index sets are 1-based and strictly increasing, matching the labelling
/// used throughout the chart formulas.  The empty minor is 1 by convention.
#pragma once

#include <vector>

#include "mgflow/matrix.hpp"

namespace mgflow {

/// Strictly increasing subset of {1, ..., n} (1-based).
using IndexSet = std::vector<int>;

/// Validates an index set against dimension n; throws InvalidIndexSets.
void validate_index_set(const IndexSet& s, int n);

/// Determinant of the submatrix a[rows; cols]; m(null, null) = 1.
/// Throws InvalidIndexSets on cardinality mismatch or malformed sets.
cd minor(const Mat& a, const IndexSet& rows, const IndexSet& cols);

/// Leading (d+) and trailing (d-) principal minor ladders.
/// dplus(j) = m(1..j; 1..j) for j = 0..n with dplus(0) = 1;
/// dminus(j) = m(j..n; j..n) for j = 1..n+1 with dminus(n+1) = 1.
struct PrincipalMinors {
    std::vector<cd> lead;  // lead[j] = dplus(j), j = 0..n
    std::vector<cd> trail; // trail[j] = dminus(j), j = 1..n+1 stored at [j-1]

    cd dplus(int j) const { return lead[static_cast<size_t>(j)]; }
    cd dminus(int j) const { return trail[static_cast<size_t>(j - 1)]; }
    int n() const { return static_cast<int>(lead.size()) - 1; }
};

PrincipalMinors principal_minors(const Mat& a);

/// Cofactor matrix A with A_jk = (det a) * (a^{-1})^t_jk, computed entrywise
/// from signed complementary minors (no inverse needed).
Mat cofactor_matrix(const Mat& a);

} // namespace mgflow
