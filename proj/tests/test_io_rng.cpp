/// \file test_io_rng.cpp
/// \brief JSON/CSV round trips, config parsing, and RNG determinism.
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mgflow/darboux.hpp"
#include "mgflow/errors.hpp"
#include "mgflow/io.hpp"
#include "mgflow/matrix.hpp"
#include "mgflow/minors.hpp"
#include "mgflow/rng.hpp"
#include "mgflow/scattering.hpp"
#include "mgflow/schedule.hpp"

using namespace mgflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() : dir(fs::temp_directory_path() / "mgflow_io_test") { fs::create_directories(dir); }
    ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("format_full round-trips doubles exactly") {
    for (double x : {0.1, 1.0 / 3.0, 12345.678901234567, 1e-300, -2.5e17, 0.0}) {
        const std::string s = format_full(x);
        CHECK(std::stod(s) == x);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("matrix JSON round trip") {
    TempDir tmp;
    Rng rng(31, "test.iomat", 0);
    const Mat a = random_tangent(rng, 3);
    save_matrix(a, tmp.path("m.json"));
    const Mat b = load_matrix(tmp.path("m.json"));
    CHECK(norm_max(a - b) == 0.0);
}

TEST_CASE("malformed JSON reports file and line") {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("bad.json"));
        out << "{\n  \"n\": 2,\n  \"re\": [1, 2\n}\n";
    }
    try {
        load_matrix(tmp.path("bad.json"));
        FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json") != std::string::npos);
    }
    // wrong shape: re has too few entries
    {
        std::ofstream out(tmp.path("short.json"));
        out << "{\"n\": 2, \"re\": [1, 2, 3], \"im\": [0, 0, 0, 0]}";
    }
    CHECK_THROWS_AS(load_matrix(tmp.path("short.json")), FileFormatError);
}

TEST_CASE("potential JSON round trip preserves validation") {
    TempDir tmp;
    Rng rng(31, "test.iopot", 0);
    const Mat c = random_skew_coefficient(rng, 2, 0.3);
    const Potential q = gaussian_potential(c, 6.0, 1.0 / 16.0, 1.0, true);
    save_potential(q, tmp.path("q.json"));
    const Potential q2 = load_potential(tmp.path("q.json"));
    CHECK(q2.nodes() == q.nodes());
    CHECK(q2.x0 == q.x0);
    CHECK(q2.h == q.h);
    CHECK(q2.skew == q.skew);
    double worst = 0.0;
    for (int i = 0; i < q.nodes(); ++i)
        worst = std::max(worst, norm_max(q.values[static_cast<size_t>(i)] -
                                         q2.values[static_cast<size_t>(i)]));
    CHECK(worst == 0.0);
}

TEST_CASE("scattering record JSON round trip refactorizes nodes") {
    TempDir tmp;
    Rng rng(31, "test.iorec", 0);
    const Mat c = random_skew_coefficient(rng, 2, 0.3);
    const Potential q = gaussian_potential(c, 6.0, 1.0 / 16.0, 1.0, true);
    SpectralConfig cfg;
    cfg.lambda = {0.9, -0.7};
    cfg.xi_grid = SpectralConfig::uniform_grid(-1.0, 1.0, 3);
    const ScatteringRecord rec = forward_scatter(q, cfg);
    save_scattering_record(rec, tmp.path("rec.json"));
    const ScatteringRecord rec2 = load_scattering_record(tmp.path("rec.json"));
    REQUIRE(rec2.nodes.size() == rec.nodes.size());
    CHECK(rec2.skew == rec.skew);
    CHECK(rec2.lambda == rec.lambda);
    for (size_t i = 0; i < rec.nodes.size(); ++i) {
        CHECK(norm_max(rec2.nodes[i].s - rec.nodes[i].s) == 0.0);
        CHECK(norm_max(rec2.nodes[i].v_plus - rec.nodes[i].v_plus) < 1e-13);
    }

    // CSV summary: header plus one line per node, '\n' endings, no commas in numbers
    write_scattering_csv(rec, tmp.path("rec.csv"));
    const std::string csv = slurp(tmp.path("rec.csv"));
    CHECK(csv.rfind("xi,det_residual,unitarity_residual", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 nodes
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("chart JSON writes all coordinate blocks") {
    TempDir tmp;
    Rng rng(31, "test.iochart", 0);
    const Mat a = random_glstar(rng, 3);
    const DarbouxChart chart = darboux_coordinates(a, default_schedule(3));
    save_chart(chart, tmp.path("chart.json"));
    const std::string text = slurp(tmp.path("chart.json"));
    CHECK(text.find("\"p\"") != std::string::npos);
    CHECK(text.find("\"q\"") != std::string::npos);
    CHECK(text.find("\"casimirs\"") != std::string::npos);
}

TEST_CASE("config parsing: comments, blanks, overrides, errors") {
    const std::string text =
        "# run setup\n"
        "seed = 42\n"
        "\n"
        "n=3\n"
        "out_dir = results/run1\n"
        "seed = 43\n";
    const auto kv = parse_config_text(text, "inline");
    CHECK(kv.at("seed") == "43");
    CHECK(kv.at("n") == "3");
    CHECK(kv.at("out_dir") == "results/run1");
    try {
        parse_config_text("seed 42\n", "inline");
        FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
        CHECK(std::string(e.what()).find("inline:1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("= 3\n", "inline"), FileFormatError);
}

TEST_CASE("counter RNG: determinism and stream independence") {
    Rng a(2026, "alpha", 7);
    Rng b(2026, "alpha", 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // different trial or stream gives a different sequence
    Rng c(2026, "alpha", 8);
    Rng d(2026, "beta", 7);
    Rng e(2027, "alpha", 7);
    bool all_equal_c = true, all_equal_d = true, all_equal_e = true;
    Rng base(2026, "alpha", 7);
    for (int i = 0; i < 16; ++i) {
        const std::uint64_t x = base.next_u64();
        all_equal_c &= (c.next_u64() == x);
        all_equal_d &= (d.next_u64() == x);
        all_equal_e &= (e.next_u64() == x);
    }
    CHECK_FALSE(all_equal_c);
    CHECK_FALSE(all_equal_d);
    CHECK_FALSE(all_equal_e);
}

TEST_CASE("RNG draws are in range and roughly centered") {
    Rng rng(5, "dist", 0);
    double mean = 0.0;
    for (int i = 0; i < 4000; ++i) {
        const double u = rng.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    mean /= 4000.0;
    CHECK(std::abs(mean - 0.5) < 0.03);

    double nmean = 0.0, nvar = 0.0;
    const int m = 4000;
    std::vector<double> xs(m);
    for (int i = 0; i < m; ++i) {
        xs[static_cast<size_t>(i)] = rng.normal();
        nmean += xs[static_cast<size_t>(i)];
    }
    nmean /= m;
    for (int i = 0; i < m; ++i)
        nvar += (xs[static_cast<size_t>(i)] - nmean) * (xs[static_cast<size_t>(i)] - nmean);
    nvar /= m - 1;
    CHECK(std::abs(nmean) < 0.08);
    CHECK(std::abs(nvar - 1.0) < 0.1);

    const cd z = rng.disc(2.0);
    CHECK(std::abs(z) <= 2.0);
}

TEST_CASE("random GL_* points avoid degenerate minors") {
    Rng rng(5, "glstar", 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat a = random_glstar(rng, 4);
        const PrincipalMinors pm = principal_minors(a);
        for (int j = 1; j <= 4; ++j) {
            CHECK(std::abs(pm.dplus(j)) >= 1e-3);
            CHECK(std::abs(pm.dminus(j)) >= 1e-3);
        }
    }
    const Mat s = random_sl(rng, 3);
    CHECK(std::abs(det(s) - cd(1.0, 0.0)) < 1e-12);
}
