/// \file carlson.cpp
/// \brief Duplication-theorem evaluation of the Carlson symmetric forms.

#include "mgflow/carlson.hpp"

#include <cmath>

#include "mgflow/errors.hpp"

namespace mgflow {

namespace {
constexpr int kMaxIter = 128;
}

cd carlson_rf(cd x, cd y, cd z, double tol) {
    const cd a0 = (x + y + z) / 3.0;
    const double q = std::pow(3.0 * tol, -1.0 / 6.0) *
                     std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    cd a = a0;
    double f = 1.0;
    for (int it = 0; it < kMaxIter; ++it) {
        if (!(q * f >= std::abs(a) || f >= 1.0)) break;
        const cd sx = std::sqrt(x);
        const cd sy = std::sqrt(y);
        const cd sz = std::sqrt(z);
        const cd lam = sy * (sx + sz) + sz * sx;
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        f *= 0.25;
    }
    const cd xr = (a - x) / a;
    const cd yr = (a - y) / a;
    const cd zr = -xr - yr;
    const cd e2 = xr * yr - zr * zr;
    const cd e3 = xr * yr * zr;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
           std::sqrt(a);
}

cd carlson_rc(cd x, cd y, double tol) {
    const cd a0 = (x + 2.0 * y) / 3.0;
    const cd y0 = y;
    const double q = std::pow(3.0 * tol, -1.0 / 8.0) * std::abs(a0 - x);
    cd a = a0;
    double f = 1.0;
    for (int it = 0; it < kMaxIter; ++it) {
        if (!(q * f >= std::abs(a) || f >= 1.0)) break;
        const cd lam = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        f *= 0.25;
    }
    const cd s = (y0 - a0) * f / a;
    const cd series =
        1.0 + s * s * (3.0 / 10.0 +
                       s * (1.0 / 7.0 +
                            s * (3.0 / 8.0 +
                                 s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))));
    return series / std::sqrt(a);
}

cd carlson_rj(cd x, cd y, cd z, cd p, double tol) {
    const cd a0 = (x + y + z + 2.0 * p) / 5.0;
    const cd delta = (p - x) * (p - y) * (p - z);
    const double q = std::pow(0.25 * tol, -1.0 / 6.0) *
                     std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z),
                               std::abs(a0 - p)});
    cd a = a0;
    double f = 1.0;
    cd rcsum(0.0, 0.0);
    for (int it = 0; it < kMaxIter; ++it) {
        if (!(q * f >= std::abs(a) || f >= 1.0)) break;
        const cd sx = std::sqrt(x);
        const cd sy = std::sqrt(y);
        const cd sz = std::sqrt(z);
        const cd sp = std::sqrt(p);
        const cd lam = sy * (sx + sz) + sz * sx;
        const cd d = (sp + sx) * (sp + sy) * (sp + sz);
        const cd e = f * f * f * delta / (d * d);
        rcsum += (f / d) * carlson_rc(cd(1.0, 0.0), cd(1.0, 0.0) + e, tol);
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        f *= 0.25;
    }
    const cd xr = (a - x) / a;
    const cd yr = (a - y) / a;
    const cd zr = (a - z) / a;
    const cd pr = -0.5 * (xr + yr + zr);
    const cd e2 = xr * yr + xr * zr + yr * zr - 3.0 * pr * pr;
    const cd e3 = xr * yr * zr + 2.0 * e2 * pr + 4.0 * pr * pr * pr;
    const cd e4 = (2.0 * xr * yr * zr + e2 * pr + 3.0 * pr * pr * pr) * pr;
    const cd e5 = xr * yr * zr * pr * pr;
    const cd series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                      3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return f * series / (a * std::sqrt(a)) + 6.0 * rcsum;
}

} // namespace mgflow
