/// \file io.cpp
/// \brief JSON and CSV (de)serialization plus flat configuration parsing.

#include "mgflow/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mgflow/errors.hpp"
#include "mgflow/factorization.hpp"
#include "mgflow/schedule.hpp"

namespace mgflow {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileFormatError(path + ": cannot open for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open for writing");
    out << text;
    if (!out) throw Error(path + ": write failed");
}

int line_of_offset(const std::string& text, size_t offset) {
    int line = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

json parse_json(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << path << ":" << line_of_offset(text, e.byte) << ": " << e.what();
        throw FileFormatError(os.str());
    }
}

const json& require_key(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw FileFormatError(path + ": missing required key '" + key + "'");
    return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& path) {
    const json& v = require_key(j, key, path);
    if (!v.is_number())
        throw FileFormatError(path + ": key '" + key + "' must be a number");
    return v.get<double>();
}

int require_int(const json& j, const char* key, const std::string& path) {
    const json& v = require_key(j, key, path);
    if (!v.is_number_integer())
        throw FileFormatError(path + ": key '" + key + "' must be an integer");
    return v.get<int>();
}

json mat_to_json(const Mat& a) {
    const int n = a.n();
    std::vector<double> re, im;
    re.reserve(static_cast<size_t>(n) * n);
    im.reserve(static_cast<size_t>(n) * n);
    for (const cd& z : a.data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"n", n}, {"re", re}, {"im", im}};
}

Mat mat_from_json(const json& j, const std::string& path) {
    const int n = require_int(j, "n", path);
    if (n < 1 || n > 64) throw FileFormatError(path + ": matrix dimension out of range");
    const json& re = require_key(j, "re", path);
    const json& im = require_key(j, "im", path);
    const size_t count = static_cast<size_t>(n) * static_cast<size_t>(n);
    if (!re.is_array() || !im.is_array() || re.size() != count || im.size() != count)
        throw FileFormatError(path + ": 're'/'im' must be arrays of n*n numbers");
    std::vector<cd> data(count);
    for (size_t i = 0; i < count; ++i) {
        if (!re[i].is_number() || !im[i].is_number())
            throw FileFormatError(path + ": matrix entries must be numbers");
        data[i] = cd(re[i].get<double>(), im[i].get<double>());
    }
    Mat a(n, std::move(data));
    require_finite(a, path);
    return a;
}

std::string row_join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

void refactor_node(ScatteringNode& node) {
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

std::string format_full(double x) {
    char buf[64];
    const std::to_chars_result r =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

void save_matrix(const Mat& a, const std::string& path) {
    require_finite(a, "save_matrix");
    write_file(path, mat_to_json(a).dump() + "\n");
}

Mat load_matrix(const std::string& path) { return mat_from_json(parse_json(path), path); }

void save_potential(const Potential& q, const std::string& path) {
    q.validate();
    json j;
    j["x0"] = q.x0;
    j["h"] = q.h;
    j["n_nodes"] = q.nodes();
    j["n"] = q.n();
    j["skew"] = q.skew;
    j["tail_tol"] = q.tail_tol;
    json mats = json::array();
    for (const Mat& v : q.values) mats.push_back(mat_to_json(v));
    j["matrices"] = std::move(mats);
    write_file(path, j.dump() + "\n");
}

Potential load_potential(const std::string& path) {
    const json j = parse_json(path);
    Potential q;
    q.x0 = require_number(j, "x0", path);
    q.h = require_number(j, "h", path);
    const int n_nodes = require_int(j, "n_nodes", path);
    const int n = require_int(j, "n", path);
    q.skew = j.value("skew", false);
    q.tail_tol = j.value("tail_tol", 1e-12);
    const json& mats = require_key(j, "matrices", path);
    if (!mats.is_array() || static_cast<int>(mats.size()) != n_nodes)
        throw FileFormatError(path + ": 'matrices' must be an array of n_nodes matrices");
    q.values.reserve(mats.size());
    for (const json& m : mats) {
        Mat v = mat_from_json(m, path);
        if (v.n() != n)
            throw FileFormatError(path + ": matrix dimension disagrees with 'n'");
        q.values.push_back(std::move(v));
    }
    try {
        q.validate();
    } catch (const Error& e) {
        throw FileFormatError(path + ": " + e.what());
    }
    return q;
}

void save_scattering_record(const ScatteringRecord& rec, const std::string& path) {
    json j;
    j["lambda"] = rec.lambda;
    j["rtol"] = rec.rtol;
    j["atol"] = rec.atol;
    j["skew"] = rec.skew;
    j["small_norm_warning"] = rec.small_norm_warning;
    j["q_l1"] = rec.q_l1;
    json nodes = json::array();
    for (const ScatteringNode& node : rec.nodes) {
        json nj;
        nj["xi"] = node.xi;
        nj["s"] = mat_to_json(node.s);
        nj["flagged"] = node.flagged;
        nj["flag_reason"] = node.flag_reason;
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    write_file(path, j.dump() + "\n");
}

ScatteringRecord load_scattering_record(const std::string& path) {
    const json j = parse_json(path);
    ScatteringRecord rec;
    const json& lam = require_key(j, "lambda", path);
    if (!lam.is_array()) throw FileFormatError(path + ": 'lambda' must be an array");
    for (const json& v : lam) {
        if (!v.is_number()) throw FileFormatError(path + ": 'lambda' entries must be numbers");
        rec.lambda.push_back(v.get<double>());
    }
    rec.rtol = require_number(j, "rtol", path);
    rec.atol = require_number(j, "atol", path);
    rec.skew = j.value("skew", false);
    rec.small_norm_warning = j.value("small_norm_warning", false);
    rec.q_l1 = j.value("q_l1", 0.0);
    const json& nodes = require_key(j, "nodes", path);
    if (!nodes.is_array()) throw FileFormatError(path + ": 'nodes' must be an array");
    rec.nodes.reserve(nodes.size());
    for (const json& nj : nodes) {
        ScatteringNode node;
        node.xi = require_number(nj, "xi", path);
        node.s = mat_from_json(require_key(nj, "s", path), path);
        refactor_node(node);
        rec.nodes.push_back(std::move(node));
    }
    return rec;
}

void write_scattering_csv(const ScatteringRecord& rec, const std::string& path) {
    const int n = rec.n();
    if (n == 0) throw Error("write_scattering_csv: empty record");
    const PermutationSchedule sched = default_schedule(n);
    const int nsteps = sched.length();

    std::string text;
    {
        std::vector<std::string> header = {"xi", "det_residual", "unitarity_residual"};
        for (int nu = 1; nu <= nsteps; ++nu) {
            header.push_back("p" + std::to_string(nu) + "_re");
            header.push_back("p" + std::to_string(nu) + "_im");
        }
        text += row_join(header);
    }

    const Mat eye = Mat::identity(n);
    for (const ScatteringNode& node : rec.nodes) {
        std::vector<std::string> cells;
        cells.push_back(format_full(node.xi));
        cells.push_back(format_full(std::abs(det(node.s) - cd(1.0, 0.0))));
        cells.push_back(format_full(norm_max(node.s * dagger(node.s) - eye)));
        bool have_chart = false;
        DarbouxChart chart;
        if (!node.flagged) {
            try {
                chart = darboux_coordinates(node.s, sched);
                have_chart = true;
            } catch (const DegeneratePoint&) {
            }
        }
        for (int nu = 0; nu < nsteps; ++nu) {
            if (have_chart) {
                cells.push_back(format_full(chart.p[static_cast<size_t>(nu)].real()));
                cells.push_back(format_full(chart.p[static_cast<size_t>(nu)].imag()));
            } else {
                cells.push_back("nan");
                cells.push_back("nan");
            }
        }
        text += row_join(cells);
    }
    write_file(path, text);
}

void save_chart(const DarbouxChart& chart, const std::string& path) {
    auto pairs = [](const std::vector<cd>& v) {
        json arr = json::array();
        for (const cd& z : v) arr.push_back(json::array({z.real(), z.imag()}));
        return arr;
    };
    json j;
    j["positions"] = chart.schedule.positions;
    j["p"] = pairs(chart.p);
    j["q"] = pairs(chart.q);
    j["casimirs"] = pairs(chart.casimirs);
    write_file(path, j.dump() + "\n");
}

void write_pendulum_csv(const std::vector<PendulumSample>& samples,
                        const std::string& path) {
    std::string text;
    {
        std::vector<std::string> header = {"t",         "I1",        "I2",
                                           "I3",        "omega",     "omega_dot",
                                           "identity_residual"};
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                header.push_back("mod2_" + std::to_string(j) + std::to_string(k));
        text += row_join(header);
    }
    for (const PendulumSample& s : samples) {
        std::vector<std::string> cells;
        cells.push_back(format_full(s.t));
        for (int i = 0; i < 3; ++i) cells.push_back(format_full(s.action[i]));
        cells.push_back(format_full(s.omega));
        cells.push_back(format_full(s.omega_dot));
        cells.push_back(format_full(std::abs(s.residual)));
        for (int i = 0; i < 9; ++i) cells.push_back(format_full(s.mod2[i]));
        text += row_join(cells);
    }
    write_file(path, text);
}

void write_flow_csv(const std::vector<TrajectoryPoint>& points, const std::string& path) {
    if (points.empty()) throw Error("write_flow_csv: empty trajectory");
    const int n = points.front().a.n();
    std::string text;
    {
        std::vector<std::string> header = {"t"};
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                const std::string base = "a" + std::to_string(j) + std::to_string(k);
                header.push_back(base + "_re");
                header.push_back(base + "_im");
            }
        header.push_back("casimir_drift");
        text += row_join(header);
    }
    for (const TrajectoryPoint& pt : points) {
        std::vector<std::string> cells;
        cells.push_back(format_full(pt.t));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                cells.push_back(format_full(pt.a(j, k).real()));
                cells.push_back(format_full(pt.a(j, k).imag()));
            }
        cells.push_back(format_full(pt.casimir_drift));
        text += row_join(cells);
    }
    write_file(path, text);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": expected key=value, got '" << t << "'";
            throw FileFormatError(os.str());
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": empty key";
            throw FileFormatError(os.str());
        }
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    return parse_config_text(read_file(path), path);
}

} // namespace mgflow
