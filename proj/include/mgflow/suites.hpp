/// \file suites.hpp
/// \brief Named verification suites shared by the CLI harness and the
///        acceptance gate: each suite runs a list of residual checks against
///        configured tolerances and reports results (never throws on a
///        failed check).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mgflow {

/// Experiment parameters shared by the CLI and the acceptance gate.
/// Tolerances are grouped by the family of identity they bound; grid
/// parameters control the scattering sweeps.
struct ExperimentConfig {
    std::uint64_t seed = 2026;
    int n = 3;       ///< matrix dimension for the dimension-generic suites
    int trials = 40; ///< sample points per randomized check

    // --- tolerances -------------------------------------------------------
    double tol_form = 1e-8;      ///< form decomposition (relative)
    double tol_alt = 1e-10;      ///< equivalent form expressions, pullbacks
    double tol_bracket = 1e-9;   ///< antisymmetry, Leibniz, canonical pairs
    double tol_jacobi = 1e-7;    ///< Jacobi identity (outer FD gradients)
    double tol_exact = 1e-12;    ///< identities exact in exact arithmetic
    double tol_casimir = 1e-10;  ///< Casimir centrality / unit modulus
    double tol_flow = 1e-7;      ///< integrated flow endpoint match
    double tol_nonlocal = 1e-10; ///< two-point bracket identities
    double tol_su3 = 1e-9;       ///< spectral identity, root product
    double tol_su3_pairs = 1e-8; ///< off-diagonal quadratic pair relations
    double tol_theta = 1e-10;    ///< Carlson vs quadrature angle values
    double tol_angles = 1e-6;    ///< dI ^ dTheta canonicality (FD-limited)
    double tol_pendulum_actions = 1e-8;
    double tol_pendulum_freq = 1e-5;
    double tol_pendulum_energy = 1e-6;
    double tol_scatter_exact = 1e-12; ///< zero potential, local identity
    double tol_unitarity = 1e-7;
    double tol_det = 1e-8;
    double tol_recursion = 1e-3;      ///< hierarchy recursion residual
    double tol_linearization = 1e-3;  ///< linearized-flow residual at dt=1e-4
    double tol_invariance = 1e-8;     ///< action / Hamiltonian drift
    double tol_qslope = 1e-6;         ///< angle slope vs predicted rate

    // --- scattering grids -------------------------------------------------
    double grid_half_width = 12.0;
    double grid_h = 0.015625; // 1/64
    double grid_xi_max = 4.0;
    int grid_xi_count = 257;

    std::string out_dir; ///< artifact directory (used by the CLI layer)

    /// Throws ConfigError on out-of-range parameters (n must be >= 2; the
    /// scattering suite supports n in [2, 4]).
    void validate() const;
};

/// One named check: worst residual vs tolerance plus wall time.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
    std::string note; ///< optional detail (resolved constants, counts)
};

/// Per-trial residual row for the CSV artifact.
struct TrialRow {
    std::string check;
    std::uint64_t trial = 0;
    double residual = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<TrialRow> trial_rows;
    bool all_pass() const;
    double seconds() const;
};

/// Known suite names: form, bracket, casimir, flows, su3, scatter
/// (plus the meta-name "all").
const std::vector<std::string>& suite_names();

/// Runs every check of one suite (or "all"); failed checks are recorded in
/// the report, never thrown.  Throws ConfigError for unknown suite names or
/// invalid configuration.
SuiteReport run_suite(const std::string& suite, const ExperimentConfig& cfg);

} // namespace mgflow
