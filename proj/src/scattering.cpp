/// \file scattering.cpp
/// \brief Forward scattering transform, hierarchy recursion, flows on
///        scattering data, and the Hamiltonian functionals.

#include "mgflow/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/factorization.hpp"
#include "mgflow/ode.hpp"
#include "mgflow/quadrature.hpp"
#include "mgflow/schedule.hpp"

namespace mgflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// 4th-order finite differences on a uniform grid (one-sided at the edges).
std::vector<Mat> ddx4(const std::vector<Mat>& f, double h) {
    const int nn = static_cast<int>(f.size());
    const int n = f.front().n();
    std::vector<Mat> d(static_cast<size_t>(nn), Mat(n));
    const double w = 1.0 / (12.0 * h);
    for (int i = 2; i <= nn - 3; ++i)
        d[static_cast<size_t>(i)] =
            w * (f[static_cast<size_t>(i - 2)] - 8.0 * f[static_cast<size_t>(i - 1)] +
                 8.0 * f[static_cast<size_t>(i + 1)] - f[static_cast<size_t>(i + 2)]);
    for (int i : {0, 1})
        d[static_cast<size_t>(i)] =
            w * (-25.0 * f[static_cast<size_t>(i)] + 48.0 * f[static_cast<size_t>(i + 1)] -
                 36.0 * f[static_cast<size_t>(i + 2)] + 16.0 * f[static_cast<size_t>(i + 3)] -
                 3.0 * f[static_cast<size_t>(i + 4)]);
    for (int i : {nn - 2, nn - 1})
        d[static_cast<size_t>(i)] =
            w * (25.0 * f[static_cast<size_t>(i)] - 48.0 * f[static_cast<size_t>(i - 1)] +
                 36.0 * f[static_cast<size_t>(i - 2)] - 16.0 * f[static_cast<size_t>(i - 3)] +
                 3.0 * f[static_cast<size_t>(i - 4)]);
    return d;
}

/// Integrate the "bounded frame" equation m' = xi(Jm - mJ) + q m across the
/// support and undo the frame at the right endpoint.
Mat scatter_once(const Potential& q, const SpectralConfig& cfg, double xi) {
    const int n = cfg.n();
    std::vector<cd> y0(static_cast<size_t>(n) * n, cd(0.0, 0.0));
    for (int j = 0; j < n; ++j) y0[static_cast<size_t>(j) * n + j] = cd(1.0, 0.0);

    const std::vector<double>& lam = cfg.lambda;
    OdeRhs rhs = [&](double x, const std::vector<cd>& y, std::vector<cd>& dy) {
        const Mat qx = q.at(x);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                cd acc = cd(0.0, xi * (lam[static_cast<size_t>(j)] -
                                       lam[static_cast<size_t>(k)])) *
                         y[static_cast<size_t>(j) * n + k];
                for (int l = 0; l < n; ++l)
                    acc += qx(j, l) * y[static_cast<size_t>(l) * n + k];
                dy[static_cast<size_t>(j) * n + k] = acc;
            }
        }
    };

    OdeOptions opts;
    opts.rtol = cfg.rtol;
    opts.atol = cfg.atol;
    std::vector<cd> y_end;
    try {
        y_end = ode_integrate(rhs, q.x0, y0, -q.x0, opts);
    } catch (const StepFailure& e) {
        throw OdeFailure(std::string("forward_scatter: ") + e.what());
    }

    Mat m(n, std::move(y_end));
    const double big_l = q.half_width();
    Mat s(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            s(j, k) = m(j, k) * std::exp(cd(0.0, big_l * xi *
                                                     (lam[static_cast<size_t>(k)] -
                                                      lam[static_cast<size_t>(j)])));
    return s;
}

void fill_factors(ScatteringNode& node) {
    try {
        const TriangularFactorization f = factorize(node.s);
        node.s_plus = f.a_plus;
        node.s_minus = f.a_minus;
        node.v_plus = f.v_plus;
        node.v_minus = f.v_minus;
        node.delta_plus = f.delta_plus;
        node.delta_minus = f.delta_minus;
        node.flagged = false;
        node.flag_reason.clear();
    } catch (const NotInGLStar& e) {
        node.flagged = true;
        node.flag_reason = e.what();
    }
}

} // namespace

void Potential::validate() const {
    if (values.size() < 6) throw Error("Potential: need at least 6 grid nodes");
    if (!(h > 0.0)) throw Error("Potential: grid spacing must be positive");
    const int dim = n();
    if (dim < 2) throw Error("Potential: matrices must be at least 2x2");
    for (const Mat& v : values) {
        if (v.n() != dim) throw Error("Potential: inconsistent matrix dimensions");
        require_finite(v, "Potential");
        for (int j = 0; j < dim; ++j)
            if (v(j, j) != cd(0.0, 0.0))
                throw Error("Potential: diagonal entries must vanish");
    }
    const double x_end = x_at(nodes() - 1);
    if (std::abs(x_end + x0) > 1e-9 * std::max(1.0, std::abs(x0)))
        throw Error("Potential: grid must be symmetric about the origin");
    if (norm_fro(values.front()) > tail_tol || norm_fro(values.back()) > tail_tol)
        throw Error("Potential: endpoint tails exceed the decay bound");
    if (skew) {
        for (const Mat& v : values) {
            const double scale = std::max(1.0, norm_max(v));
            if (norm_max(v + dagger(v)) > 1e-14 * scale)
                throw Error("Potential: skew flag set but q + q* != 0");
        }
    }
}

Mat Potential::at(double x) const {
    const int nn = nodes();
    const double t = (x - x0) / h;
    int i0 = static_cast<int>(std::floor(t)) - 2;
    i0 = std::clamp(i0, 0, nn - 6);
    Mat out(n());
    for (int m = 0; m < 6; ++m) {
        double w = 1.0;
        for (int mm = 0; mm < 6; ++mm)
            if (mm != m) w *= (t - (i0 + mm)) / static_cast<double>(m - mm);
        out = out + w * values[static_cast<size_t>(i0 + m)];
    }
    return out;
}

double Potential::l1_norm() const {
    std::vector<cd> samples;
    samples.reserve(values.size());
    for (const Mat& v : values) samples.push_back(cd(norm_fro(v), 0.0));
    return trapezoid(samples, h).real();
}

Mat SpectralConfig::J() const {
    Mat j(n());
    for (int i = 0; i < n(); ++i) j(i, i) = cd(0.0, lambda[static_cast<size_t>(i)]);
    return j;
}

void SpectralConfig::validate() const {
    if (n() < 2) throw Error("SpectralConfig: need at least two spectral constants");
    for (size_t i = 1; i < lambda.size(); ++i)
        if (!(lambda[i - 1] > lambda[i]))
            throw Error("SpectralConfig: lambda must be strictly decreasing");
    if (xi_grid.empty()) throw Error("SpectralConfig: xi grid is empty");
    if (xi_grid.size() >= 2) {
        const double step = xi_grid[1] - xi_grid[0];
        if (!(step > 0.0)) throw Error("SpectralConfig: xi grid must increase");
        for (size_t i = 1; i < xi_grid.size(); ++i)
            if (std::abs(xi_grid[i] - xi_grid[i - 1] - step) > 1e-9 * std::max(1.0, step))
                throw Error("SpectralConfig: xi grid must be uniform");
    }
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw Error("SpectralConfig: ODE tolerances must be positive");
}

std::vector<double> SpectralConfig::uniform_grid(double lo, double hi, int count) {
    if (count < 1) throw Error("uniform_grid: count must be positive");
    std::vector<double> g(static_cast<size_t>(count));
    if (count == 1) {
        g[0] = 0.5 * (lo + hi);
        return g;
    }
    for (int i = 0; i < count; ++i)
        g[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return g;
}

int ScatteringRecord::flagged_count() const {
    int c = 0;
    for (const ScatteringNode& node : nodes)
        if (node.flagged) ++c;
    return c;
}

ScatteringRecord forward_scatter(const Potential& q, const SpectralConfig& cfg) {
    q.validate();
    cfg.validate();
    if (q.n() != cfg.n())
        throw Error("forward_scatter: potential and config dimensions differ");
    const double l1 = q.l1_norm();
    if (l1 >= cfg.norm_cap) {
        std::ostringstream os;
        os << "forward_scatter: potential L1 norm " << l1 << " exceeds the cap "
           << cfg.norm_cap;
        throw NormTooLarge(os.str());
    }
    ScatteringRecord rec;
    rec.lambda = cfg.lambda;
    rec.rtol = cfg.rtol;
    rec.atol = cfg.atol;
    rec.skew = q.skew;
    rec.q_l1 = l1;
    rec.small_norm_warning = l1 >= 1.0; // unique-solution hypothesis violated
    rec.nodes.reserve(cfg.xi_grid.size());
    for (double xi : cfg.xi_grid) {
        ScatteringNode node;
        node.xi = xi;
        node.s = scatter_once(q, cfg, xi);
        fill_factors(node);
        rec.nodes.push_back(std::move(node));
    }
    return rec;
}

std::vector<HierarchyTerm> hierarchy_terms(const Potential& q, const SpectralConfig& cfg,
                                           const DiagonalGenerator& mu, int k_max,
                                           double recursion_tol) {
    q.validate();
    cfg.validate();
    const int n = q.n();
    if (n != cfg.n() || n != mu.n())
        throw Error("hierarchy_terms: dimension mismatch");
    if (k_max < 0 || k_max > 3)
        throw Error("hierarchy_terms: k_max must lie in [0, 3]");

    const int nn = q.nodes();
    Mat adj_inv(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k)
                adj_inv(j, k) = cd(1.0, 0.0) /
                                cd(0.0, cfg.lambda[static_cast<size_t>(j)] -
                                            cfg.lambda[static_cast<size_t>(k)]);

    std::vector<HierarchyTerm> out;
    out.reserve(static_cast<size_t>(k_max) + 1);
    HierarchyTerm f0;
    f0.k = 0;
    f0.values.assign(static_cast<size_t>(nn), mu.matrix());
    out.push_back(std::move(f0));

    for (int k = 0; k < k_max; ++k) {
        const std::vector<Mat>& fk = out.back().values;
        const std::vector<Mat> dfk = ddx4(fk, q.h);
        std::vector<Mat> rhs(static_cast<size_t>(nn));
        for (int i = 0; i < nn; ++i)
            rhs[static_cast<size_t>(i)] =
                dfk[static_cast<size_t>(i)] -
                comm(q.values[static_cast<size_t>(i)], fk[static_cast<size_t>(i)]);

        std::vector<Mat> fnext(static_cast<size_t>(nn), Mat(n));
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    if (j != l)
                        fnext[static_cast<size_t>(i)](j, l) =
                            rhs[static_cast<size_t>(i)](j, l) * adj_inv(j, l);

        // Diagonal by cumulative integration of diag([q, F^off]) from -L.
        std::vector<std::vector<cd>> g(static_cast<size_t>(n),
                                       std::vector<cd>(static_cast<size_t>(nn)));
        for (int i = 0; i < nn; ++i) {
            const Mat c = comm(q.values[static_cast<size_t>(i)], fnext[static_cast<size_t>(i)]);
            for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)][static_cast<size_t>(i)] = c(j, j);
        }
        for (int j = 0; j < n; ++j) {
            const std::vector<cd> cum = cumulative_trapezoid(g[static_cast<size_t>(j)], q.h);
            for (int i = 0; i < nn; ++i)
                fnext[static_cast<size_t>(i)](j, j) = cum[static_cast<size_t>(i)];
        }

        // Gridwise residual of [J, F_{k+1}] against the recursion right side.
        double res = 0.0;
        for (int i = 0; i < nn; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) {
                    const cd lhs = j == l
                                       ? cd(0.0, 0.0)
                                       : cd(0.0, cfg.lambda[static_cast<size_t>(j)] -
                                                     cfg.lambda[static_cast<size_t>(l)]) *
                                             fnext[static_cast<size_t>(i)](j, l);
                    res = std::max(res, std::abs(lhs - rhs[static_cast<size_t>(i)](j, l)));
                }
            }
        }
        if (res > recursion_tol) {
            std::ostringstream os;
            os << "hierarchy_terms: recursion residual " << res << " at order " << (k + 1)
               << " exceeds tolerance " << recursion_tol;
            throw RecursionInconsistency(os.str());
        }
        HierarchyTerm term;
        term.k = k + 1;
        term.values = std::move(fnext);
        term.residual = res;
        out.push_back(std::move(term));
    }
    return out;
}

ScatteringRecord evolve_scattering(const ScatteringRecord& rec, const DiagonalGenerator& mu,
                                   int k, double t) {
    if (mu.n() != rec.n()) throw Error("evolve_scattering: dimension mismatch");
    if (k < 0) throw Error("evolve_scattering: k must be nonnegative");
    ScatteringRecord out = rec;
    const std::vector<cd>& m = mu.mu();
    for (ScatteringNode& node : out.nodes) {
        const double factor = t * std::pow(node.xi, k);
        Mat st(node.s.n());
        for (int j = 0; j < node.s.n(); ++j)
            for (int l = 0; l < node.s.n(); ++l)
                st(j, l) = std::exp(factor * (m[static_cast<size_t>(j)] -
                                              m[static_cast<size_t>(l)])) *
                           node.s(j, l);
        node.s = st;
        fill_factors(node);
    }
    return out;
}

double linearization_check(const Potential& q, const DiagonalGenerator& mu, int k,
                           double dt, const SpectralConfig& cfg) {
    if (k < 0 || k > 2) throw Error("linearization_check: k must lie in [0, 2]");
    if (!(dt > 0.0)) throw Error("linearization_check: dt must be positive");
    const std::vector<HierarchyTerm> terms = hierarchy_terms(q, cfg, mu, k + 1);
    const std::vector<Mat>& fk1 = terms[static_cast<size_t>(k) + 1].values;
    const Mat j_mat = cfg.J();

    Potential q_dt = q;
    q_dt.skew = false; // the hierarchy direction is not skew-hermitian
    for (int i = 0; i < q.nodes(); ++i)
        q_dt.values[static_cast<size_t>(i)] =
            q.values[static_cast<size_t>(i)] +
            dt * comm(j_mat, fk1[static_cast<size_t>(i)]);

    const ScatteringRecord base = forward_scatter(q, cfg);
    const ScatteringRecord pert = forward_scatter(q_dt, cfg);
    const Mat mu_mat = mu.matrix();
    double worst = 0.0;
    for (size_t i = 0; i < base.nodes.size(); ++i) {
        const Mat& s = base.nodes[i].s;
        const Mat predicted = std::pow(base.nodes[i].xi, k) * comm(mu_mat, s);
        const Mat measured = (1.0 / dt) * (pert.nodes[i].s - s);
        worst = std::max(worst, norm_max(measured - predicted));
    }
    return worst;
}

cd HierarchyHamiltonian::decomposition() const {
    cd acc(0.0, 0.0);
    for (size_t i = 0; i < coefficients.size(); ++i)
        acc += coefficients[i] * action_integrals[i];
    return acc;
}

HierarchyHamiltonian hierarchy_hamiltonian(const ScatteringRecord& rec,
                                           const DiagonalGenerator& mu, int k) {
    const int n = rec.n();
    if (n == 0) throw Error("hierarchy_hamiltonian: empty record");
    if (mu.n() != n) throw Error("hierarchy_hamiltonian: dimension mismatch");
    if (rec.nodes.size() < 2)
        throw Error("hierarchy_hamiltonian: need at least two xi nodes");
    const int total = static_cast<int>(rec.nodes.size());

    const PermutationSchedule sched = default_schedule(n);
    const int nsteps = sched.length();
    std::vector<cd> coeff(static_cast<size_t>(nsteps));
    for (int nu = 1; nu <= nsteps; ++nu) {
        const std::pair<int, int> jk = label_pair(sched, nu);
        coeff[static_cast<size_t>(nu - 1)] = mu.mu()[static_cast<size_t>(jk.second - 1)] -
                                             mu.mu()[static_cast<size_t>(jk.first - 1)];
    }

    std::vector<cd> h_vals(static_cast<size_t>(total), cd(0.0, 0.0));
    std::vector<std::vector<cd>> p_vals(
        static_cast<size_t>(nsteps), std::vector<cd>(static_cast<size_t>(total), cd(0.0, 0.0)));
    std::vector<bool> good(static_cast<size_t>(total), false);

    for (int i = 0; i < total; ++i) {
        const ScatteringNode& node = rec.nodes[static_cast<size_t>(i)];
        if (node.flagged) continue;
        const double pw = std::pow(node.xi, k);
        try {
            cd tr(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                tr += mu.mu()[static_cast<size_t>(j)] *
                      std::log(node.delta_plus(j, j) / node.delta_minus(j, j));
            const DarbouxChart chart = darboux_coordinates(node.s, sched);
            h_vals[static_cast<size_t>(i)] = pw * tr;
            for (int nu = 0; nu < nsteps; ++nu)
                p_vals[static_cast<size_t>(nu)][static_cast<size_t>(i)] =
                    pw * chart.p[static_cast<size_t>(nu)];
            good[static_cast<size_t>(i)] = true;
        } catch (const DegeneratePoint&) {
            good[static_cast<size_t>(i)] = false;
        }
    }

    int bad = 0;
    for (int i = 0; i < total; ++i)
        if (!good[static_cast<size_t>(i)]) ++bad;
    if (bad > 0.01 * total) {
        std::ostringstream os;
        os << "hierarchy_hamiltonian: " << bad << " of " << total
           << " nodes lack factorization data";
        throw FlaggedNodesExceeded(os.str());
    }

    // Fill isolated bad nodes by linear interpolation between good neighbors
    // (constant extension at the ends) so the trapezoid sums stay defined.
    auto patch = [&](std::vector<cd>& vals) {
        for (int i = 0; i < total; ++i) {
            if (good[static_cast<size_t>(i)]) continue;
            int lo = i - 1, hi = i + 1;
            while (lo >= 0 && !good[static_cast<size_t>(lo)]) --lo;
            while (hi < total && !good[static_cast<size_t>(hi)]) ++hi;
            if (lo >= 0 && hi < total) {
                const double t = static_cast<double>(i - lo) / (hi - lo);
                vals[static_cast<size_t>(i)] = (1.0 - t) * vals[static_cast<size_t>(lo)] +
                                               t * vals[static_cast<size_t>(hi)];
            } else if (lo >= 0) {
                vals[static_cast<size_t>(i)] = vals[static_cast<size_t>(lo)];
            } else if (hi < total) {
                vals[static_cast<size_t>(i)] = vals[static_cast<size_t>(hi)];
            }
        }
    };
    if (bad > 0) {
        patch(h_vals);
        for (int nu = 0; nu < nsteps; ++nu) patch(p_vals[static_cast<size_t>(nu)]);
    }

    const double hxi = rec.nodes[1].xi - rec.nodes[0].xi;
    const cd two_pi_i(0.0, 2.0 * kPi);
    HierarchyHamiltonian out;
    out.value = trapezoid(h_vals, hxi) / two_pi_i;
    out.coefficients = coeff;
    out.action_integrals.resize(static_cast<size_t>(nsteps));
    for (int nu = 0; nu < nsteps; ++nu)
        out.action_integrals[static_cast<size_t>(nu)] =
            trapezoid(p_vals[static_cast<size_t>(nu)], hxi) / two_pi_i;
    return out;
}

PointwiseBracketReport pointwise_bracket_check(const ScatteringRecord& rec) {
    const int n = rec.n();
    if (n == 0) throw Error("pointwise_bracket_check: empty record");
    const PermutationSchedule sched = default_schedule(n);
    const int nsteps = sched.length();
    const cd four_pi_i(0.0, 4.0 * kPi);
    PointwiseBracketReport rep;

    for (const ScatteringNode& node : rec.nodes) {
        if (node.flagged) continue;
        const Mat& s = node.s;

        // (a) local commutation relation vs the quarter-normalized bivector
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m) {
                        const cd lhs = cd(0.0, kPi) * s(j, m) * s(l, k) *
                                       (sgn(l - j) - sgn(m - k));
                        const cd rhs = four_pi_i * bracket_tensor(s, j, k, l, m);
                        rep.local_identity =
                            std::max(rep.local_identity, std::abs(lhs - rhs));
                    }

        ChartGradients grads;
        try {
            grads = chart_gradients(s, sched);
        } catch (const DegeneratePoint&) {
            continue;
        }

        auto pointwise = [&](const Mat& g1, const Mat& g2) {
            cd acc(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (g1(j, k) == cd(0.0, 0.0)) continue;
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m)
                            acc += g1(j, k) * g2(l, m) * bracket_tensor(s, j, k, l, m);
                }
            return acc;
        };
        auto two_point_same = [&](const Mat& g1, const Mat& g2) {
            // <f, g>(s, s) with both gradients evaluated at this node
            cd acc(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (g1(j, k) == cd(0.0, 0.0)) continue;
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m) {
                            const double w = (j == l ? 1.0 : 0.0) - (k == m ? 1.0 : 0.0);
                            if (w == 0.0) continue;
                            acc += g1(j, k) * g2(l, m) * s(j, k) * s(l, m) * w;
                        }
                }
            return acc;
        };

        // (b) actions have purely local brackets: the two-point part vanishes
        for (int nu = 0; nu < nsteps; ++nu)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const cd v = two_point_same(grads.dp[static_cast<size_t>(nu)],
                                                matrix_unit(n, j, k));
                    rep.action_locality = std::max(rep.action_locality, std::abs(v));
                }

        // (c) renormalized chart has unit local coefficients
        for (int mu_i = 0; mu_i < nsteps; ++mu_i)
            for (int nu = 0; nu < nsteps; ++nu) {
                const Mat gp = 0.5 * grads.dp[static_cast<size_t>(mu_i)];
                const Mat gq = (cd(1.0, 0.0) / cd(0.0, 2.0 * kPi)) *
                               grads.dq[static_cast<size_t>(nu)];
                const cd v = four_pi_i * pointwise(gp, gq);
                const cd expect = mu_i == nu ? cd(1.0, 0.0) : cd(0.0, 0.0);
                rep.renormalized = std::max(rep.renormalized, std::abs(v - expect));
            }

        ++rep.nodes_checked;
    }
    return rep;
}

Potential gaussian_potential(const Mat& c, double half_width, double h, double width,
                             bool skew) {
    const int n = c.n();
    if (n < 2) throw Error("gaussian_potential: coefficient must be at least 2x2");
    for (int j = 0; j < n; ++j)
        if (c(j, j) != cd(0.0, 0.0))
            throw Error("gaussian_potential: coefficient diagonal must vanish");
    if (!(h > 0.0) || !(half_width > 0.0) || !(width > 0.0))
        throw Error("gaussian_potential: grid parameters must be positive");
    Potential q;
    q.x0 = -half_width;
    q.h = h;
    q.skew = skew;
    const int nn = static_cast<int>(std::lround(2.0 * half_width / h)) + 1;
    q.values.reserve(static_cast<size_t>(nn));
    for (int i = 0; i < nn; ++i) {
        const double x = q.x0 + h * i;
        q.values.push_back(std::exp(-x * x / (width * width)) * c);
    }
    q.validate();
    return q;
}

Mat random_skew_coefficient(Rng& rng, int n, double scale) {
    Mat c(n);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            c(j, k) = scale * rng.cnormal();
            c(k, j) = -std::conj(c(j, k));
        }
    return c;
}

} // namespace mgflow
