/// \file rng.hpp
/// \brief Counter-based deterministic random number generation.
///
/// Streams are keyed by (seed, stream label, trial) and advance a 64-bit
/// counter through a SplitMix64-style mixer, so any draw is a pure function
/// of (key, counter).  Identical configurations therefore produce identical
/// samples regardless of evaluation order, which is what the reproducibility
/// contract of the CLI requires.
#pragma once

#include <cstdint>
#include <string_view>

#include "mgflow/matrix.hpp"

namespace mgflow {

/// One independent random stream.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t trial);

    /// Uniform in [0, 1) with 53 random bits.
    double u01();

    /// Standard normal (Box-Muller, deterministic draw order).
    double normal();

    /// Uniform on the closed complex disc of the given radius.
    cd disc(double radius);

    /// Standard complex Gaussian (unit variance per real component).
    cd cnormal();

    std::uint64_t next_u64();

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Identity plus an entrywise uniform complex-disc perturbation of radius
/// scale/sqrt(n), resampled until every leading and trailing principal minor
/// has magnitude >= 1e-3.  Keeps random points comfortably inside GL_*.
Mat random_glstar(Rng& rng, int n, double scale = 0.4);

/// Random tangent direction: independent standard complex Gaussian entries.
Mat random_tangent(Rng& rng, int n);

/// random_glstar projected to determinant one (principal n-th root).
Mat random_sl(Rng& rng, int n, double scale = 0.4);

/// Haar-ish random SU(3): Gaussian columns orthonormalized, then the
/// determinant phase removed by the principal cube root.
Mat random_su3(Rng& rng);

} // namespace mgflow
