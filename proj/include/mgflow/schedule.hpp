/// \file schedule.hpp
/// \brief Adjacent-transposition schedules factoring the antidiagonal
///        permutation, with the partial products and label bookkeeping the
///        chart construction needs.
///
/// Permutations are stored as 0-based index arrays sigma with the convention
/// that the associated matrix is r(sigma) = sum_j e_{j, sigma(j)}, so that
/// r(sigma) r(tau) = r(tau o sigma).
#pragma once

#include <vector>

#include "mgflow/matrix.hpp"

namespace mgflow {

using Perm = std::vector<int>; // sigma[j] 0-based

struct PermutationSchedule {
    int n = 0;
    /// Transposition positions k_1..k_N, each in {1, ..., n-1} (1-based):
    /// step nu applies the adjacent transposition (k_nu, k_nu + 1).
    std::vector<int> positions;
    /// Partial products r_0 = id, r_nu = pi_1 ... pi_nu as index arrays;
    /// size N + 1.
    std::vector<Perm> partial;

    int length() const { return static_cast<int>(positions.size()); }
};

/// Inverse permutation (argsort).
Perm perm_inverse(const Perm& sigma);

/// Permutation matrix r(sigma) = sum_j e_{j, sigma(j)}.
Mat perm_matrix(const Perm& sigma, int n);

/// Conjugation r(sigma)^{-1} a r(sigma) as an index remap (no products).
Mat conj_by_perm(const Mat& a, const Perm& sigma);

/// Canonical schedule: positions (1, 2, ..., n-1, 1, ..., n-2, ..., 1),
/// whose partial products end at the antidiagonal permutation.
/// Throws Error for n < 2.
PermutationSchedule default_schedule(int n);

/// The 1-based label pair (j, k) interchanged at step nu (1-based):
/// the two symbols that the transposition at that step swaps.
std::pair<int, int> label_pair(const PermutationSchedule& sched, int nu);

/// The active 2x2 block of the reduced matrix at step nu (1-based):
/// entries are ratios m(J + {u}; J + {v}) / m(J; J) of minors of
/// b = r_{nu-1}^{-1} a r_{nu-1}, where J = (1, ..., k_nu - 1) and
/// u, v run over {k_nu, k_nu + 1}.  Agrees with the Schur complement
/// D - C A^{-1} B of the leading block.  Throws SingularLeadingMinor.
Mat block_reduce(const Mat& a, const PermutationSchedule& sched, int nu);

} // namespace mgflow
