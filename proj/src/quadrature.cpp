/// \file quadrature.cpp
/// \brief Gauss-Legendre node generation and Gauss-Kronrod adaptivity.

#include "mgflow/quadrature.hpp"

#include <cmath>
#include <map>

#include "mgflow/errors.hpp"

namespace mgflow {

namespace {

GaussLegendre build_gl(int n) {
    GaussLegendre gl;
    gl.nodes.resize(static_cast<size_t>(n));
    gl.weights.resize(static_cast<size_t>(n));
    // Newton iteration from the Chebyshev-like initial guess; the polynomial
    // and derivative come from the three-term recurrence.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        gl.nodes[static_cast<size_t>(i)] = x;
        gl.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct GkResult {
    cd kronrod;
    double err;
};

GkResult gk15(const std::function<cd(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cd resg(0.0, 0.0), resk(0.0, 0.0);
    const cd fc = f(c);
    resg += kWg[3] * fc;
    resk += kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const cd f1 = f(c - h * kXgk[j]);
        const cd f2 = f(c + h * kXgk[j]);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    resk *= h;
    resg *= h;
    return {resk, std::abs(resk - resg)};
}

cd gk_recurse(const std::function<cd(double)>& f, double a, double b, double tol,
              double global_scale, int depth) {
    if (depth > 40) throw Error("integrate_gk_adaptive: recursion depth exceeded");
    const GkResult r = gk15(f, a, b);
    if (r.err <= tol * global_scale) return r.kronrod;
    const double c = 0.5 * (a + b);
    return gk_recurse(f, a, c, tol, global_scale, depth + 1) +
           gk_recurse(f, c, b, tol, global_scale, depth + 1);
}

} // namespace

const GaussLegendre& gauss_legendre(int npoints) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(npoints);
    if (it == cache.end()) it = cache.emplace(npoints, build_gl(npoints)).first;
    return it->second;
}

cd integrate_gl(const std::function<cd(double)>& f, double a, double b, int npoints,
                int npanels) {
    const GaussLegendre& gl = gauss_legendre(npoints);
    cd total(0.0, 0.0);
    for (int p = 0; p < npanels; ++p) {
        const double pa = a + (b - a) * static_cast<double>(p) / npanels;
        const double pb = a + (b - a) * static_cast<double>(p + 1) / npanels;
        const double c = 0.5 * (pa + pb);
        const double h = 0.5 * (pb - pa);
        for (int i = 0; i < npoints; ++i)
            total += h * gl.weights[static_cast<size_t>(i)] *
                     f(c + h * gl.nodes[static_cast<size_t>(i)]);
    }
    return total;
}

cd integrate_gk_adaptive(const std::function<cd(double)>& f, double a, double b,
                         double tol) {
    const GkResult first = gk15(f, a, b);
    const double scale = std::max(1.0, std::abs(first.kronrod));
    if (first.err <= tol * scale) return first.kronrod;
    const double c = 0.5 * (a + b);
    return gk_recurse(f, a, c, tol, scale, 1) + gk_recurse(f, c, b, tol, scale, 1);
}

cd trapezoid(const std::vector<cd>& samples, double h) {
    if (samples.size() < 2) return cd(0.0, 0.0);
    cd s = 0.5 * (samples.front() + samples.back());
    for (size_t i = 1; i + 1 < samples.size(); ++i) s += samples[i];
    return h * s;
}

std::vector<cd> cumulative_trapezoid(const std::vector<cd>& samples, double h) {
    std::vector<cd> out(samples.size(), cd(0.0, 0.0));
    for (size_t i = 1; i < samples.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (samples[i - 1] + samples[i]);
    return out;
}

} // namespace mgflow
