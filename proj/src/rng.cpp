/// \file rng.cpp
/// \brief Counter-based RNG and random point constructors.

#include "mgflow/rng.hpp"

#include <cmath>

#include "mgflow/minors.hpp"

namespace mgflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

Rng::Rng(std::uint64_t seed, std::string_view stream, std::uint64_t trial) {
    key_ = splitmix64(splitmix64(seed) ^ fnv1a(stream) ^ splitmix64(0x9E3779B97F4A7C15ULL ^ trial));
}

std::uint64_t Rng::next_u64() { return splitmix64(key_ ^ splitmix64(ctr_++)); }

double Rng::u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Box-Muller; u1 is kept away from zero so the log is finite.
    const double u1 = std::max(u01(), 0x1.0p-53);
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    have_cached_ = true;
    return r * std::cos(kTwoPi * u2);
}

cd Rng::disc(double radius) {
    const double r = radius * std::sqrt(u01());
    const double th = kTwoPi * u01();
    return cd(r * std::cos(th), r * std::sin(th));
}

cd Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return cd(re, im);
}

Mat random_glstar(Rng& rng, int n, double scale) {
    const double radius = scale / std::sqrt(static_cast<double>(n));
    for (int attempt = 0; attempt < 256; ++attempt) {
        Mat a = Mat::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) += rng.disc(radius);
        const PrincipalMinors pm = principal_minors(a);
        bool ok = true;
        for (int j = 1; j <= n && ok; ++j)
            if (std::abs(pm.dplus(j)) < 1e-3 || std::abs(pm.dminus(j)) < 1e-3) ok = false;
        if (ok) return a;
    }
    throw Error("random_glstar: resampling failed to find a well-conditioned point");
}

Mat random_tangent(Rng& rng, int n) {
    Mat t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(i, j) = rng.cnormal();
    return t;
}

Mat random_sl(Rng& rng, int n, double scale) {
    Mat a = random_glstar(rng, n, scale);
    const cd d = det(a);
    const cd root = std::pow(d, cd(1.0 / static_cast<double>(n), 0.0));
    return (cd(1.0, 0.0) / root) * a;
}

Mat random_su3(Rng& rng) {
    const int n = 3;
    Mat g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.cnormal();
    // Modified Gram-Schmidt on columns.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cd proj(0.0, 0.0);
            for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) return random_su3(rng); // astronomically unlikely; resample
        for (int i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    const cd d = det(g);
    const cd root = std::pow(d, cd(1.0 / 3.0, 0.0));
    return (cd(1.0, 0.0) / root) * g;
}

} // namespace mgflow
