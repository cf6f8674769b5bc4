/// \file test_matgroup.cpp
/// \brief Matrix helpers, minors, triangular/Gauss factorizations, schedules.
#include <doctest.h>

#include "mgflow/errors.hpp"
#include "mgflow/factorization.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/schedule.hpp"

using namespace mgflow;

namespace {

/// Laplace expansion along the first row; independent determinant oracle.
cd det_laplace(const Mat& a) {
    const int n = a.n();
    if (n == 1) return a(0, 0);
    cd sum(0.0, 0.0);
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        Mat sub(n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == k) continue;
                sub(r - 1, cc++) = a(r, c);
            }
        }
        sum += sign * a(0, k) * det_laplace(sub);
        sign = -sign;
    }
    return sum;
}

} // namespace

TEST_CASE("determinant matches Laplace expansion") {
    Rng rng(7, "test.det", 0);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + trial % 4;
        Mat a = random_tangent(rng, n);
        CHECK(std::abs(det(a) - det_laplace(a)) < 1e-10 * std::max(1.0, std::abs(det(a))));
    }
}

TEST_CASE("inverse and triangular solves") {
    Rng rng(7, "test.inv", 0);
    const Mat a = random_glstar(rng, 4);
    const Mat eye = Mat::identity(4);
    CHECK(norm_max(a * inverse(a) - eye) < 1e-12);
    CHECK(norm_max(inverse(a) * a - eye) < 1e-12);

    // u x = b and l x = b against the dense inverse
    Mat u(3), l(3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const cd z(0.3 * (j + 1) + 0.1 * k, 0.2 * (k - j));
            if (k >= j) u(j, k) = z + (j == k ? cd(1.0, 0.0) : cd(0.0, 0.0));
            if (k <= j) l(j, k) = z + (j == k ? cd(1.0, 0.0) : cd(0.0, 0.0));
        }
    const Mat b = random_tangent(rng, 3);
    CHECK(norm_max(solve_upper(u, b) - inverse(u) * b) < 1e-12);
    CHECK(norm_max(solve_lower(l, b) - inverse(l) * b) < 1e-12);
}

TEST_CASE("principal minor ladders on a diagonal example") {
    Mat a(2);
    a(0, 0) = cd(2.0, 0.0);
    a(1, 1) = cd(3.0, 0.0);
    const PrincipalMinors pm = principal_minors(a);
    CHECK(pm.dplus(0) == cd(1.0, 0.0));
    CHECK(pm.dplus(1) == cd(2.0, 0.0));
    CHECK(pm.dplus(2) == cd(6.0, 0.0));
    CHECK(pm.dminus(1) == cd(6.0, 0.0));
    CHECK(pm.dminus(2) == cd(3.0, 0.0));
    CHECK(pm.dminus(3) == cd(1.0, 0.0));
}

TEST_CASE("minor conventions") {
    Rng rng(7, "test.minor", 0);
    const Mat a = random_tangent(rng, 4);
    CHECK(minor(a, {}, {}) == cd(1.0, 0.0));
    CHECK(minor(a, {2}, {3}) == a(1, 2));
    const cd m = minor(a, {1, 3}, {2, 4});
    CHECK(std::abs(m - (a(0, 1) * a(2, 3) - a(0, 3) * a(2, 1))) < 1e-14);
    CHECK_THROWS_AS(minor(a, {1, 2}, {1}), InvalidIndexSets);
    CHECK_THROWS_AS(minor(a, {1, 5}, {1, 2}), InvalidIndexSets);
}

TEST_CASE("cofactor matrix reproduces det(a) a^{-t}") {
    Rng rng(7, "test.cof", 0);
    const Mat a = random_glstar(rng, 3);
    const Mat cof = cofactor_matrix(a);
    const Mat want = det(a) * transp(inverse(a));
    CHECK(norm_max(cof - want) < 1e-11);
}

TEST_CASE("two-sided triangular factorization invariants") {
    Rng rng(7, "test.fact", 0);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = 2 + trial;
        const Mat a = random_glstar(rng, n);
        const TriangularFactorization f = factorize(a);
        // reconstructions
        CHECK(norm_max(a * f.v_plus - f.a_plus) < 1e-11);
        CHECK(norm_max(a * f.v_minus - f.a_minus) < 1e-11);
        // shapes
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k < j) CHECK(std::abs(f.a_plus(j, k)) == 0.0);
                if (k > j) CHECK(std::abs(f.a_minus(j, k)) == 0.0);
                if (k > j) CHECK(std::abs(f.v_plus(j, k)) == 0.0);
                if (k < j) CHECK(std::abs(f.v_minus(j, k)) == 0.0);
                if (k == j) {
                    CHECK(f.v_plus(j, j) == cd(1.0, 0.0));
                    CHECK(f.v_minus(j, j) == cd(1.0, 0.0));
                }
            }
        // diagonal ladders
        const PrincipalMinors pm = principal_minors(a);
        for (int j = 1; j <= n; ++j) {
            CHECK(std::abs(f.delta_plus(j - 1, j - 1) - pm.dminus(j) / pm.dminus(j + 1)) <
                  1e-10);
            CHECK(std::abs(f.delta_minus(j - 1, j - 1) - pm.dplus(j) / pm.dplus(j - 1)) <
                  1e-10);
            CHECK(std::abs(f.delta(j - 1, j - 1) -
                           f.delta_plus(j - 1, j - 1) / f.delta_minus(j - 1, j - 1)) < 1e-12);
        }
    }
}

TEST_CASE("two-by-two factorization closed forms") {
    Mat a(2);
    a(0, 0) = cd(1.3, 0.2);
    a(0, 1) = cd(-0.4, 0.7);
    a(1, 0) = cd(0.5, -0.3);
    a(1, 1) = cd(0.9, -0.1);
    const cd delta = det(a);
    const TriangularFactorization f = factorize(a);
    CHECK(std::abs(f.v_plus(1, 0) - (-a(1, 0) / a(1, 1))) < 1e-14);
    CHECK(std::abs(f.a_plus(0, 0) - delta / a(1, 1)) < 1e-14);
    CHECK(std::abs(f.a_plus(0, 1) - a(0, 1)) < 1e-14);
    CHECK(std::abs(f.a_plus(1, 1) - a(1, 1)) < 1e-14);
    CHECK(std::abs(f.v_minus(0, 1) - (-a(0, 1) / a(0, 0))) < 1e-14);
    CHECK(std::abs(f.a_minus(0, 0) - a(0, 0)) < 1e-14);
    CHECK(std::abs(f.a_minus(1, 0) - a(1, 0)) < 1e-14);
    CHECK(std::abs(f.a_minus(1, 1) - delta / a(0, 0)) < 1e-14);
}

TEST_CASE("factorize rejects vanished principal minors") {
    Mat a(2);
    a(0, 1) = cd(1.0, 0.0);
    a(1, 0) = cd(-1.0, 0.0); // leading 1x1 minor vanishes, det = 1
    CHECK_THROWS_AS(factorize(a), NotInGLStar);
}

TEST_CASE("gauss factorization is the unit LDU decomposition") {
    Rng rng(7, "test.gauss", 0);
    const Mat v = random_glstar(rng, 4);
    const GaussFactorization g = gauss_factorize(v);
    const Mat recon = invert_unit_lower(g.b_minus) * g.delta * g.b_plus;
    CHECK(norm_max(recon - v) < 1e-11);
    for (int j = 0; j < 4; ++j) {
        CHECK(g.b_minus(j, j) == cd(1.0, 0.0));
        CHECK(g.b_plus(j, j) == cd(1.0, 0.0));
        for (int k = j + 1; k < 4; ++k) {
            CHECK(std::abs(g.b_minus(j, k)) == 0.0);
            CHECK(std::abs(g.b_plus(k, j)) == 0.0);
            CHECK(std::abs(g.delta(j, k)) == 0.0);
            CHECK(std::abs(g.delta(k, j)) == 0.0);
        }
    }

    Mat sing(2);
    sing(0, 1) = cd(1.0, 0.0);
    sing(1, 0) = cd(1.0, 0.0);
    CHECK_THROWS_AS(gauss_factorize(sing), SingularLeadingMinor);
}

TEST_CASE("casimir ladder matches minor ratios and the determinant") {
    Rng rng(7, "test.casimir", 0);
    const Mat a = random_glstar(rng, 3);
    const PrincipalMinors pm = principal_minors(a);
    const std::vector<cd> phi = casimir_values(a);
    REQUIRE(phi.size() == 3);
    CHECK(std::abs(phi[0] - pm.dplus(1) / pm.dminus(2)) < 1e-12);
    CHECK(std::abs(phi[1] - pm.dplus(2) / pm.dminus(3)) < 1e-12);
    CHECK(std::abs(phi[2] - det(a)) < 1e-12);
}

TEST_CASE("default schedule composes to the antidiagonal permutation") {
    for (int n = 2; n <= 8; ++n) {
        const PermutationSchedule sched = default_schedule(n);
        CHECK(sched.length() == n * (n - 1) / 2);
        const Perm& last = sched.partial.back();
        for (int j = 0; j < n; ++j) CHECK(last[static_cast<size_t>(j)] == n - 1 - j);
    }
}

TEST_CASE("label pairs for the default 3-schedule") {
    const PermutationSchedule sched = default_schedule(3);
    // positions (1,2),(1): transpositions at 1,2 then 1
    const std::pair<int, int> l1 = label_pair(sched, 1);
    const std::pair<int, int> l2 = label_pair(sched, 2);
    const std::pair<int, int> l3 = label_pair(sched, 3);
    CHECK(l1 == std::pair<int, int>(1, 2));
    CHECK(l2 == std::pair<int, int>(1, 3));
    CHECK(l3 == std::pair<int, int>(2, 3));
}

TEST_CASE("permutation conjugation relabels entries") {
    Rng rng(7, "test.perm", 0);
    const Mat a = random_tangent(rng, 3);
    const Perm sigma = {2, 0, 1}; // sigma(0)=2 etc.
    const Mat b = conj_by_perm(a, sigma);
    // entry (j,k) of a lands at position (sigma(j), sigma(k)) of b
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            CHECK(b(sigma[static_cast<size_t>(j)], sigma[static_cast<size_t>(k)]) == a(j, k));
}
