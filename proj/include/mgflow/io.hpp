/// \file io.hpp
/// \brief File formats: JSON (de)serialization for matrices, potentials,
///        scattering records, and charts; CSV writers for trajectories and
///        summaries; flat key=value configuration parsing.
///
/// All numeric CSV output uses 17 significant digits, '.' as the decimal
/// separator, and '\n' line endings, so identical inputs produce
/// byte-identical files on every platform.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgflow/darboux.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/su3.hpp"

namespace mgflow {

/// Shortest representation that round-trips a double exactly (17 significant
/// digits, C locale).
std::string format_full(double x);

/// Matrix JSON: {"n": n, "re": [n*n row-major], "im": [n*n row-major]}.
void save_matrix(const Mat& a, const std::string& path);
Mat load_matrix(const std::string& path);

/// Potential JSON: {"x0", "h", "n_nodes", "n", "matrices": [matrix...]}
/// plus optional "skew" (default false) and "tail_tol" (default 1e-12).
/// Loading validates the result; malformed input throws FileFormatError
/// with the offending file and location.
void save_potential(const Potential& q, const std::string& path);
Potential load_potential(const std::string& path);

/// Scattering record JSON: the run parameters (lambda, tolerances, flags)
/// plus one entry per xi node ({"xi", "s", "flagged", "flag_reason"}).
/// Loading recomputes the triangular factors from s.
void save_scattering_record(const ScatteringRecord& rec, const std::string& path);
ScatteringRecord load_scattering_record(const std::string& path);

/// Per-node CSV summary: xi, |det s - 1|, max-norm of s s* - 1, and the
/// chart actions p_nu (re/im pairs; nan for flagged or degenerate nodes).
void write_scattering_csv(const ScatteringRecord& rec, const std::string& path);

/// Chart JSON: p, q, casimirs as [re, im] pairs plus the schedule positions.
void save_chart(const DarbouxChart& chart, const std::string& path);

/// Pendulum trajectory CSV: t, I1, I2, I3, omega, omega_dot,
/// identity_residual, and the nine squared moduli |a_jk|^2.
void write_pendulum_csv(const std::vector<PendulumSample>& samples,
                        const std::string& path);

/// Matrix-flow trajectory CSV: t, re/im of every entry (row-major), and the
/// relative Casimir drift.
void write_flow_csv(const std::vector<TrajectoryPoint>& points, const std::string& path);

/// Flat key=value configuration.  Blank lines and lines starting with '#'
/// are ignored; a line without '=' throws FileFormatError naming the line.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin);
std::map<std::string, std::string> parse_config_file(const std::string& path);

} // namespace mgflow
