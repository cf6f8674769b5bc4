/// \file py_module.cpp
/// \brief Python bindings for the main operations: triangular factorization,
///        the log chart and two-form, the Poisson bracket, linear flows,
///        SU(3) action-angle variables, and forward scattering.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <vector>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/factorization.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/schedule.hpp"
#include "mgflow/su3.hpp"
#include "mgflow/suites.hpp"

namespace py = pybind11;
using namespace mgflow;

namespace {

Mat to_mat(const py::array_t<cd, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw py::value_error("expected a square 2-D complex array");
    const int n = static_cast<int>(arr.shape(0));
    Mat m(n);
    const auto r = arr.unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = r(i, j);
    return m;
}

py::array_t<cd> to_array(const Mat& m) {
    py::array_t<cd> arr({m.n(), m.n()});
    auto w = arr.mutable_unchecked<2>();
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) w(i, j) = m(i, j);
    return arr;
}

py::dict factorize_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a) {
    const TriangularFactorization f = factorize(to_mat(a));
    py::dict d;
    d["a_plus"] = to_array(f.a_plus);
    d["a_minus"] = to_array(f.a_minus);
    d["v_plus"] = to_array(f.v_plus);
    d["v_minus"] = to_array(f.v_minus);
    d["delta_plus"] = to_array(f.delta_plus);
    d["delta_minus"] = to_array(f.delta_minus);
    d["delta"] = to_array(f.delta);
    return d;
}

py::dict darboux_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a) {
    const Mat m = to_mat(a);
    const DarbouxChart chart = darboux_coordinates(m, default_schedule(m.n()));
    py::dict d;
    d["p"] = chart.p;
    d["q"] = chart.q;
    d["casimirs"] = chart.casimirs;
    return d;
}

cd omega_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a,
            const py::array_t<cd, py::array::c_style | py::array::forcecast>& da1,
            const py::array_t<cd, py::array::c_style | py::array::forcecast>& da2) {
    const Mat base = to_mat(a);
    return omega_eval({base, to_mat(da1)}, {base, to_mat(da2)});
}

cd bracket_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a, int j,
              int k, int l, int m) {
    const Mat mat = to_mat(a);
    for (int idx : {j, k, l, m})
        if (idx < 1 || idx > mat.n()) throw py::value_error("indices are 1-based");
    return bracket_tensor(mat, j - 1, k - 1, l - 1, m - 1);
}

py::array_t<cd> linear_flow_py(
    const py::array_t<cd, py::array::c_style | py::array::forcecast>& a,
    const std::vector<cd>& mu, double t) {
    return to_array(linear_flow(to_mat(a), DiagonalGenerator(mu), t));
}

py::dict su3_actions_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a) {
    const ActionAngleState st = actions(to_mat(a));
    py::dict d;
    d["I1"] = st.I1;
    d["I2"] = st.I2;
    d["I3"] = st.I3;
    d["I0"] = st.I0;
    d["rho"] = st.rho;
    d["omega"] = st.omega;
    d["zeta"] = st.zeta;
    d["chart_valid"] = st.chart_valid;
    return d;
}

py::dict su3_angles_py(const py::array_t<cd, py::array::c_style | py::array::forcecast>& a) {
    const ActionAngleState st = actions(to_mat(a));
    const AngleVariables av = angle_variables(st);
    py::dict d;
    d["theta"] = std::vector<cd>{av.theta[0], av.theta[1], av.theta[2]};
    d["alpha"] = av.alpha;
    d["beta"] = av.beta;
    return d;
}

py::dict pendulum_py(double t_final, int steps, std::uint64_t seed) {
    Rng rng(seed, "su3.pendulum", 0);
    const std::vector<PendulumSample> traj =
        pendulum_flow(SU3Point(unitary_stratum_point(rng)), t_final, steps);
    std::vector<double> t, i1, i2, i3, omega, resid;
    for (const PendulumSample& s : traj) {
        t.push_back(s.t);
        i1.push_back(s.action[0]);
        i2.push_back(s.action[1]);
        i3.push_back(s.action[2]);
        omega.push_back(s.omega);
        resid.push_back(std::abs(s.residual));
    }
    py::dict d;
    d["t"] = t;
    d["I1"] = i1;
    d["I2"] = i2;
    d["I3"] = i3;
    d["omega"] = omega;
    d["residual"] = resid;
    return d;
}

py::dict scatter_py(std::uint64_t seed, int n, double half_width, double h, double xi_max,
                    int xi_count, double scale) {
    Rng rng(seed, "py.scatter", 0);
    const Mat c = random_skew_coefficient(rng, n, scale);
    const Potential q = gaussian_potential(c, half_width, h, 1.0, true);
    SpectralConfig cfg;
    switch (n) {
        case 2: cfg.lambda = {0.9, -0.7}; break;
        case 3: cfg.lambda = {1.1, 0.3, -1.4}; break;
        case 4: cfg.lambda = {1.6, 0.5, -0.6, -1.7}; break;
        default: throw py::value_error("n must be 2, 3, or 4");
    }
    cfg.xi_grid = SpectralConfig::uniform_grid(-xi_max, xi_max, xi_count);
    const ScatteringRecord rec = forward_scatter(q, cfg);
    std::vector<double> xi;
    std::vector<py::array_t<cd>> s;
    for (const ScatteringNode& node : rec.nodes) {
        xi.push_back(node.xi);
        s.push_back(to_array(node.s));
    }
    py::dict d;
    d["xi"] = xi;
    d["s"] = s;
    d["lambda"] = rec.lambda;
    d["flagged"] = rec.flagged_count();
    return d;
}

bool verify_py(const std::string& suite, std::uint64_t seed, int n, int trials) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.trials = trials;
    return run_suite(suite, cfg).all_pass();
}

py::array_t<cd> random_glstar_py(std::uint64_t seed, int n) {
    Rng rng(seed, "py.glstar", 0);
    return to_array(random_glstar(rng, n));
}

py::array_t<cd> random_su3_py(std::uint64_t seed) {
    Rng rng(seed, "py.su3", 0);
    return to_array(random_su3(rng));
}

} // namespace

PYBIND11_MODULE(_mgflow, m) {
    m.doc() = "matrix-group flows: factorization, log chart, bracket, scattering";

    py::register_exception<Error>(m, "MgflowError");

    m.def("factorize", &factorize_py, py::arg("a"),
          "Both triangular factorizations a = a_plus v_plus^-1 = a_minus v_minus^-1");
    m.def("darboux", &darboux_py, py::arg("a"),
          "Log chart (p, q) and Casimir values at a point of GL*");
    m.def("omega", &omega_py, py::arg("a"), py::arg("da1"), py::arg("da2"),
          "The two-form evaluated on two tangent vectors at a");
    m.def("bracket", &bracket_py, py::arg("a"), py::arg("j"), py::arg("k"), py::arg("l"),
          py::arg("m"), "Coordinate bracket (a_jk, a_lm), indices 1-based");
    m.def("linear_flow", &linear_flow_py, py::arg("a"), py::arg("mu"), py::arg("t"),
          "Half-rate diagonal conjugation exp(t mu/2) a exp(-t mu/2)");
    m.def("su3_actions", &su3_actions_py, py::arg("a"),
          "Action variables and pendulum data of an SU(3) point");
    m.def("su3_angles", &su3_angles_py, py::arg("a"),
          "Angle variables by quadrature in the spectral-root plane");
    m.def("pendulum", &pendulum_py, py::arg("t_final") = 10.0, py::arg("steps") = 1000,
          py::arg("seed") = 2026, "Pendulum trajectory on the distinguished stratum");
    m.def("scatter", &scatter_py, py::arg("seed") = 2026, py::arg("n") = 3,
          py::arg("half_width") = 8.0, py::arg("h") = 0.03125, py::arg("xi_max") = 2.0,
          py::arg("xi_count") = 17, py::arg("scale") = 0.3,
          "Forward scattering of a seeded Gaussian skew potential");
    m.def("verify", &verify_py, py::arg("suite"), py::arg("seed") = 2026, py::arg("n") = 3,
          py::arg("trials") = 5, "Run a verification suite; True if every check passed");
    m.def("random_glstar", &random_glstar_py, py::arg("seed") = 2026, py::arg("n") = 3,
          "Seeded random point of GL* (both factorizations exist)");
    m.def("random_su3", &random_su3_py, py::arg("seed") = 2026, "Seeded random SU(3) point");
}
