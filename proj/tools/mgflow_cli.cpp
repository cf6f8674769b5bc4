/// \file mgflow_cli.cpp
/// \brief Command-line harness: verification suites, scattering runs, the
///        pendulum flow, and one-shot chart evaluation.
///
/// Subcommands
///   verify <suite>    run a verification suite (form, bracket, casimir,
///                     flows, su3, scatter, all); writes <suite>_report.json
///                     and <suite>_trials.csv to the output directory
///   scatter           forward-scatter a potential file; optionally apply a
///                     hierarchy flow and report the invariance residuals
///   su3-flow          integrate the pendulum trajectory and write its CSV
///   darboux <file>    evaluate the log chart at one matrix point
///
/// Shared options can also come from a flat key=value file via --config;
/// explicit command-line flags override file values.  The output directory
/// defaults to $MGFLOW_OUT, then "out".
///
/// Exit status: 0 all requested checks passed, 1 failures or runtime errors,
/// 2 configuration or input-format errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/io.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/poisson.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/schedule.hpp"
#include "mgflow/su3.hpp"
#include "mgflow/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mgflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

/// The shared experiment options, wired both to CLI flags and config keys.
struct Options {
    ExperimentConfig cfg;
    std::string out_dir;
};

void add_shared_options(CLI::App& app, Options& opt) {
    // Config-file values are injected ahead of the explicit command line, so
    // every shared option keeps its last occurrence (flags override the file).
    auto add = [&app](const std::string& name, auto& var, const std::string& desc) {
        app.add_option(name, var, desc)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    add("--seed", opt.cfg.seed, "base RNG seed");
    add("--n", opt.cfg.n, "matrix dimension for dimension-generic suites");
    add("--trials", opt.cfg.trials, "trials per randomized check");
    add("--out", opt.out_dir, "output directory (default $MGFLOW_OUT or ./out)");

    add("--tol-form", opt.cfg.tol_form, "relative tolerance: form decomposition");
    add("--tol-alt", opt.cfg.tol_alt, "tolerance: alternative form expression");
    add("--tol-bracket", opt.cfg.tol_bracket, "tolerance: bracket identities");
    add("--tol-jacobi", opt.cfg.tol_jacobi, "tolerance: Jacobi identity");
    add("--tol-exact", opt.cfg.tol_exact, "tolerance: closed-form identities");
    add("--tol-casimir", opt.cfg.tol_casimir, "tolerance: Casimir checks");
    add("--tol-flow", opt.cfg.tol_flow, "tolerance: integrated flow endpoint");
    add("--tol-nonlocal", opt.cfg.tol_nonlocal, "tolerance: two-point bracket");
    add("--tol-su3", opt.cfg.tol_su3, "tolerance: spectral identity");
    add("--tol-su3-pairs", opt.cfg.tol_su3_pairs, "tolerance: quadratic pairs");
    add("--tol-theta", opt.cfg.tol_theta, "tolerance: theta2 cross-check");
    add("--tol-angles", opt.cfg.tol_angles, "tolerance: canonical angles");
    add("--tol-pendulum-actions", opt.cfg.tol_pendulum_actions,
        "tolerance: pendulum action drift");
    add("--tol-pendulum-freq", opt.cfg.tol_pendulum_freq,
        "tolerance: pendulum frequency relation");
    add("--tol-pendulum-energy", opt.cfg.tol_pendulum_energy,
        "tolerance: pendulum energy drift");
    add("--tol-scatter-exact", opt.cfg.tol_scatter_exact,
        "tolerance: zero-potential and pointwise identities");
    add("--tol-unitarity", opt.cfg.tol_unitarity, "tolerance: unitarity");
    add("--tol-det", opt.cfg.tol_det, "tolerance: determinant residual");
    add("--tol-recursion", opt.cfg.tol_recursion, "tolerance: hierarchy recursion");
    add("--tol-linearization", opt.cfg.tol_linearization, "tolerance: flow linearization");
    add("--tol-invariance", opt.cfg.tol_invariance,
        "tolerance: action/Hamiltonian invariance");
    add("--tol-qslope", opt.cfg.tol_qslope, "tolerance: angle slope");

    add("--grid-half-width", opt.cfg.grid_half_width, "potential half width L");
    add("--grid-h", opt.cfg.grid_h, "potential grid spacing");
    add("--grid-xi-max", opt.cfg.grid_xi_max, "xi grid half width");
    add("--grid-xi-count", opt.cfg.grid_xi_count, "xi grid node count");
}

/// Applies a flat key=value config file as defaults: the file's pairs are
/// turned into long options injected ahead of the explicit command line, and
/// every shared option takes its last occurrence.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string config_path;
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) return rest;

    static const std::vector<std::string> known = {
        "seed", "n", "trials", "out", "tol-form", "tol-alt", "tol-bracket", "tol-jacobi",
        "tol-exact", "tol-casimir", "tol-flow", "tol-nonlocal", "tol-su3", "tol-su3-pairs",
        "tol-theta", "tol-angles", "tol-pendulum-actions", "tol-pendulum-freq",
        "tol-pendulum-energy", "tol-scatter-exact", "tol-unitarity", "tol-det",
        "tol-recursion", "tol-linearization", "tol-invariance", "tol-qslope",
        "grid-half-width", "grid-h", "grid-xi-max", "grid-xi-count"};

    std::vector<std::string> merged;
    for (const auto& [key, value] : parse_config_file(config_path)) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("config file '" + config_path + "': unknown key '" + key + "'");
        merged.push_back("--" + key + "=" + value);
    }
    merged.insert(merged.end(), rest.begin(), rest.end());
    return merged;
}

json check_to_json(const CheckResult& c) {
    return json{{"name", c.name},     {"residual", c.residual}, {"tolerance", c.tolerance},
                {"pass", c.pass},     {"seconds", c.seconds},   {"note", c.note}};
}

json config_to_json(const ExperimentConfig& c) {
    return json{{"seed", c.seed},
                {"n", c.n},
                {"trials", c.trials},
                {"grid_half_width", c.grid_half_width},
                {"grid_h", c.grid_h},
                {"grid_xi_max", c.grid_xi_max},
                {"grid_xi_count", c.grid_xi_count}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

int run_verify(const std::string& suite, const Options& opt) {
    const SuiteReport rep = run_suite(suite, opt.cfg);

    int passed = 0;
    for (const CheckResult& c : rep.checks) {
        std::printf("[%s] %-34s residual %-12.3e tol %-9.1e%s%s\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual, c.tolerance,
                    c.note.empty() ? "" : "  # ", c.note.c_str());
        passed += c.pass ? 1 : 0;
    }
    std::printf("suite %s: %d/%zu checks passed in %.2f s\n", rep.suite.c_str(), passed,
                rep.checks.size(), rep.seconds());

    ensure_dir(opt.out_dir);
    json report{{"suite", rep.suite},
                {"config", config_to_json(opt.cfg)},
                {"all_pass", rep.all_pass()},
                {"checks", json::array()}};
    for (const CheckResult& c : rep.checks) report["checks"].push_back(check_to_json(c));
    const std::string report_path = join_path(opt.out_dir, suite + "_report.json");
    write_text(report_path, report.dump(2) + "\n");

    std::string csv = "check,trial,residual\n";
    for (const TrialRow& row : rep.trial_rows)
        csv += row.check + "," + std::to_string(row.trial) + "," + format_full(row.residual) +
               "\n";
    const std::string csv_path = join_path(opt.out_dir, suite + "_trials.csv");
    write_text(csv_path, csv);

    std::printf("report: %s\ntrials: %s\n", report_path.c_str(), csv_path.c_str());
    return rep.all_pass() ? 0 : 1;
}

struct ScatterJob {
    std::string potential_path;
    std::vector<double> lambda;  ///< empty: from file or a default table
    std::vector<double> mu_re, mu_im;
    int flow_k = -1;             ///< -1: from file, else no flow
    double flow_t = 0.0;
    bool flow_requested = false;
};

int run_scatter(const ScatterJob& job, const Options& opt) {
    const Potential q = load_potential(job.potential_path);

    // Optional companion data bundled with the potential file.
    std::vector<double> lambda = job.lambda;
    std::vector<cd> mu_entries;
    int flow_k = job.flow_k;
    double flow_t = job.flow_t;
    bool have_flow = job.flow_requested;
    {
        std::ifstream in(job.potential_path, std::ios::binary);
        const json j = json::parse(in);
        if (lambda.empty() && j.contains("lambda"))
            lambda = j.at("lambda").get<std::vector<double>>();
        if (!job.mu_re.empty()) {
            for (size_t i = 0; i < job.mu_re.size(); ++i)
                mu_entries.push_back(cd(job.mu_re[i], i < job.mu_im.size() ? job.mu_im[i] : 0.0));
        } else if (j.contains("mu_re")) {
            const auto re = j.at("mu_re").get<std::vector<double>>();
            std::vector<double> im(re.size(), 0.0);
            if (j.contains("mu_im")) im = j.at("mu_im").get<std::vector<double>>();
            for (size_t i = 0; i < re.size(); ++i) mu_entries.push_back(cd(re[i], im[i]));
        }
        if (!have_flow && j.contains("flow_k")) {
            flow_k = j.at("flow_k").get<int>();
            flow_t = j.value("flow_t", 0.5);
            have_flow = !mu_entries.empty();
        }
    }
    if (lambda.empty()) {
        switch (q.n()) {
            case 2: lambda = {0.9, -0.7}; break;
            case 3: lambda = {1.1, 0.3, -1.4}; break;
            case 4: lambda = {1.6, 0.5, -0.6, -1.7}; break;
            default:
                throw ConfigError("no lambda table for n = " + std::to_string(q.n()) +
                                  "; provide one in the potential file");
        }
    }

    SpectralConfig cfg;
    cfg.lambda = lambda;
    cfg.xi_grid = SpectralConfig::uniform_grid(-opt.cfg.grid_xi_max, opt.cfg.grid_xi_max,
                                               opt.cfg.grid_xi_count);

    const ScatteringRecord rec = forward_scatter(q, cfg);
    ensure_dir(opt.out_dir);
    save_scattering_record(rec, join_path(opt.out_dir, "scatter_record.json"));
    write_scattering_csv(rec, join_path(opt.out_dir, "scatter_nodes.csv"));
    std::printf("scattered %d xi nodes (n = %d, %d flagged, |q|_1 = %.6f)\n",
                static_cast<int>(rec.nodes.size()), rec.n(), rec.flagged_count(), rec.q_l1);

    if (!have_flow) return 0;

    const DiagonalGenerator mu(mu_entries);
    const ScatteringRecord ev = evolve_scattering(rec, mu, flow_k, flow_t);
    save_scattering_record(ev, join_path(opt.out_dir, "scatter_evolved.json"));
    write_scattering_csv(ev, join_path(opt.out_dir, "scatter_evolved.csv"));

    // Invariance report: frozen actions, linear angles, conserved Hamiltonian.
    const PermutationSchedule sched = default_schedule(rec.n());
    double p_drift = 0.0, q_slope = 0.0;
    for (size_t i = 0; i < rec.nodes.size(); ++i) {
        if (rec.nodes[i].flagged || ev.nodes[i].flagged) continue;
        const DarbouxChart c0 = darboux_coordinates(rec.nodes[i].s, sched);
        const DarbouxChart c1 = darboux_coordinates(ev.nodes[i].s, sched);
        const double xik = std::pow(rec.nodes[i].xi, flow_k);
        for (int nu = 1; nu <= sched.length(); ++nu) {
            p_drift = std::max(p_drift, std::abs(c1.p[static_cast<size_t>(nu - 1)] -
                                                 c0.p[static_cast<size_t>(nu - 1)]));
            const auto [lj, lk] = label_pair(sched, nu);
            const cd rate = 2.0 * xik *
                            (mu.mu()[static_cast<size_t>(lk - 1)] -
                             mu.mu()[static_cast<size_t>(lj - 1)]);
            cd diff = c1.q[static_cast<size_t>(nu - 1)] - c0.q[static_cast<size_t>(nu - 1)] -
                      flow_t * rate;
            diff -= cd(0.0, 2.0 * kPi * std::round(diff.imag() / (2.0 * kPi)));
            q_slope = std::max(q_slope, std::abs(diff) / std::abs(flow_t));
        }
    }
    const HierarchyHamiltonian h0 = hierarchy_hamiltonian(rec, mu, flow_k);
    const HierarchyHamiltonian h1 = hierarchy_hamiltonian(ev, mu, flow_k);
    const double h_drift =
        std::abs(h1.value - h0.value) / std::max(1.0, std::abs(h0.value));

    const bool pass = p_drift <= opt.cfg.tol_invariance && q_slope <= opt.cfg.tol_qslope &&
                      h_drift <= opt.cfg.tol_invariance;
    json report{{"flow_k", flow_k},
                {"flow_t", flow_t},
                {"p_drift", p_drift},
                {"q_slope_residual", q_slope},
                {"hamiltonian_drift", h_drift},
                {"tol_invariance", opt.cfg.tol_invariance},
                {"tol_qslope", opt.cfg.tol_qslope},
                {"pass", pass}};
    write_text(join_path(opt.out_dir, "flow_report.json"), report.dump(2) + "\n");
    std::printf("[%s] flow k=%d t=%g: p drift %.3e, q slope residual %.3e, H drift %.3e\n",
                pass ? "PASS" : "FAIL", flow_k, flow_t, p_drift, q_slope, h_drift);
    return pass ? 0 : 1;
}

int run_su3_flow(double t_final, int steps, const Options& opt) {
    Rng rng(opt.cfg.seed, "su3.pendulum", 0);
    const Mat a0 = unitary_stratum_point(rng);
    const std::vector<PendulumSample> traj = pendulum_flow(SU3Point(a0), t_final, steps);
    ensure_dir(opt.out_dir);
    const std::string path = join_path(opt.out_dir, "pendulum.csv");
    write_pendulum_csv(traj, path);
    double action_drift = 0.0, ident = 0.0;
    for (const PendulumSample& s : traj) {
        for (int j = 0; j < 3; ++j)
            action_drift =
                std::max(action_drift, std::abs(s.action[j] - traj.front().action[j]));
        ident = std::max(ident, std::abs(s.residual));
    }
    std::printf("pendulum: %d samples to t=%g, action drift %.3e, identity residual %.3e\n",
                static_cast<int>(traj.size()), t_final, action_drift, ident);
    std::printf("trajectory: %s\n", path.c_str());
    return 0;
}

int run_darboux(const std::string& matrix_path, const Options& opt) {
    const Mat a = load_matrix(matrix_path);
    const PermutationSchedule sched = default_schedule(a.n());
    const DarbouxChart chart = darboux_coordinates(a, sched);
    ensure_dir(opt.out_dir);
    const std::string path = join_path(opt.out_dir, "chart.json");
    save_chart(chart, path);
    for (size_t nu = 0; nu < chart.p.size(); ++nu)
        std::printf("p_%zu = %+.12f %+.12fi    q_%zu = %+.12f %+.12fi\n", nu + 1,
                    chart.p[nu].real(), chart.p[nu].imag(), nu + 1, chart.q[nu].real(),
                    chart.q[nu].imag());
    for (size_t j = 0; j < chart.casimirs.size(); ++j)
        std::printf("phi_%zu = %+.12f %+.12fi\n", j + 1, chart.casimirs[j].real(),
                    chart.casimirs[j].imag());
    std::printf("chart: %s\n", path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    opt.out_dir = env_or("MGFLOW_OUT", "out");

    CLI::App app{"integrable-flow verification harness"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_version_flag("--version", "mgflow 1.0.0");
    add_shared_options(app, opt);
    // accepted for discoverability; actual handling happens in apply_config
    std::string config_dummy;
    app.add_option("--config", config_dummy, "flat key=value config file (flags override)");

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "form|bracket|casimir|flows|su3|scatter|all")
        ->required();

    ScatterJob job;
    CLI::App* scatter = app.add_subcommand("scatter", "forward-scatter a potential file");
    scatter->add_option("--potential", job.potential_path,
                        "potential JSON (default <data>/three_wave_demo.json)");
    scatter->add_option("--lambda", job.lambda, "spectral constants (strictly decreasing)");
    scatter->add_option("--flow-mu-re", job.mu_re, "flow generator, real parts");
    scatter->add_option("--flow-mu-im", job.mu_im, "flow generator, imaginary parts");
    CLI::Option* optk = scatter->add_option("--flow-k", job.flow_k, "hierarchy order k");
    scatter->add_option("--flow-t", job.flow_t, "flow time");

    double t_final = 10.0;
    int steps = 10000;
    CLI::App* su3flow = app.add_subcommand("su3-flow", "integrate the pendulum trajectory");
    su3flow->add_option("--t", t_final, "final time");
    su3flow->add_option("--steps", steps, "recorded steps");

    std::string matrix_path;
    CLI::App* darboux_cmd =
        app.add_subcommand("darboux", "evaluate the log chart at a matrix point");
    darboux_cmd->add_option("file", matrix_path, "matrix JSON file")->required();

    try {
        std::vector<std::string> args =
            apply_config(std::vector<std::string>(argv + 1, argv + argc));
        // CLI11 consumes arguments in reverse order.
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const FileFormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(suite, opt);
        if (scatter->parsed()) {
            if (job.potential_path.empty())
                job.potential_path =
                    join_path(env_or("MGFLOW_DATA_DIR", "data"), "three_wave_demo.json");
            job.flow_requested = optk->count() > 0 && !job.mu_re.empty();
            return run_scatter(job, opt);
        }
        if (su3flow->parsed()) return run_su3_flow(t_final, steps, opt);
        if (darboux_cmd->parsed()) return run_darboux(matrix_path, opt);
        std::fprintf(stderr, "error: no subcommand selected\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const FileFormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
