#include "gemo/config.hpp"
#include "gemo/error.hpp"
#include "gemo/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("gemo_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gemo::RunConfig example(const char* file, const fs::path& out)
{
    auto cfg = gemo::load_config(std::string(GEMO_CONFIG_DIR) + "/" + file);
    cfg.out = out.string();
    return cfg;
}

} // namespace

TEST_CASE("config parsing")
{
    const auto cfg = gemo::parse_config("# comment\ndeformation = exponential\n gamma = pi/2 \nstates=3 # trailing\n");
    CHECK(cfg.deformation == "exponential");
    CHECK(cfg.gamma == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-16));
    CHECK(cfg.states == 3);
    CHECK(cfg.grid_n == 4096);
    CHECK(gemo::parse_number("10/sqrt(4)") == 5.0);

    const auto fails_with = [](const char* text, const char* fragment) {
        try {
            (void)gemo::parse_config(text);
        } catch (const gemo::Error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
            return;
        }
        FAIL("no error for: " << text);
    };
    fails_with("alpha = 1\nbogus = 2\n", "line 2");
    fails_with("alpha 1\n", "expected key = value");
    fails_with("space = w\n", "x|z|both");
    fails_with("states = 2.5\n", "integer");
    fails_with("alpha = x\n", "may not depend on x");
    CHECK_THROWS_AS((void)gemo::parse_config("V = 1/(1+x\nalpha = 1/(2\n"), gemo::ParseError);
}

TEST_CASE("resolve: defaults and checks")
{
    gemo::RunConfig cfg;
    const auto rc = gemo::resolve(cfg);
    CHECK(rc.x_domain.lo == -500.0);
    CHECK(rc.z_domain.hi == doctest::Approx(std::numbers::pi / 2.0));

    cfg.deformation = "exponential";
    cfg.potential = "half-morse";
    const auto e = gemo::resolve(cfg);
    CHECK(e.z_domain.lo == 0.0);
    CHECK(e.z_domain.hi == doctest::Approx(10.0 / std::sqrt(std::sqrt(2.0))).epsilon(1e-14));
    CHECK(e.map->forward(e.x_domain.hi) == doctest::Approx(e.z_domain.hi).epsilon(1e-10));

    gemo::RunConfig bad;
    bad.grid_n = 10;
    CHECK_THROWS_AS((void)gemo::resolve(bad), gemo::InputError);
    bad = {};
    bad.hbar = -1.0;
    CHECK_THROWS_AS((void)gemo::resolve(bad), gemo::InputError);
    bad = {};
    bad.deformation = "expression";
    bad.mu = "x^2";
    CHECK_THROWS_AS((void)gemo::resolve(bad), gemo::InputError);
    bad.x_min = -1.0;
    bad.x_max = 1.0;
    bad.potential = "expression";
    bad.v = "1/(1+x";
    CHECK_THROWS_AS((void)gemo::resolve(bad), gemo::ParseError);
}

TEST_CASE("example 1 config reproduces the box spectrum")
{
    const auto out = scratch("ex1");
    const auto doc = gemo::run_solve(example("example1.cfg", out));
    const auto& s = doc["solves"][0];
    const std::vector<double> expected{0.5, 2.0, 4.5, 8.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const double e = s["eigenvalues"][i].get<double>();
        CHECK(std::abs(e - expected[i]) / expected[i] <= 1e-4);
    }
    CHECK(s["reference"]["name"] == "quadratic box");
    CHECK(fs::exists(out / "spectrum.json"));
    CHECK(fs::exists(out / "states.csv"));
    fs::remove_all(out);
}

TEST_CASE("example 2 config reproduces the half-oscillator spectrum")
{
    const auto out = scratch("ex2");
    const auto doc = gemo::run_solve(example("example2.cfg", out));
    const auto& s = doc["solves"][0];
    const double omega = std::sqrt(2.0);
    for (std::size_t n = 0; n < 3; ++n) {
        const double expected = omega * (2.0 * n + 1.5);
        CHECK(std::abs(s["eigenvalues"][n].get<double>() - expected) / expected <= 1e-3);
    }
    fs::remove_all(out);
}

TEST_CASE("determinism and config echo")
{
    const auto a = scratch("det_a"), b = scratch("det_b");
    auto cfg = example("example2.cfg", a);
    cfg.grid_n = 512;
    cfg.space = gemo::SolveSpace::Both;
    const auto doc = gemo::run_solve(cfg);
    cfg.out = b.string();
    (void)gemo::run_solve(cfg);
    CHECK(slurp(a / "states_x.csv") == slurp(b / "states_x.csv"));
    CHECK(slurp(a / "states_z.csv") == slurp(b / "states_z.csv"));
    // Only the echoed output directory differs.
    auto ja = nlohmann::json::parse(slurp(a / "spectrum.json"));
    auto jb = nlohmann::json::parse(slurp(b / "spectrum.json"));
    ja["config"].erase("out");
    jb["config"].erase("out");
    CHECK(ja.dump() == jb.dump());

    const auto& echo = doc["config"];
    for (const char* key : {"deformation", "mu", "gamma", "potential", "V", "V0", "hbar", "mass", "x_min", "x_max",
                            "z_min", "z_max", "grid_n", "space", "states", "out", "stencil"})
        CHECK_MESSAGE(echo.contains(key), key);
    CHECK(echo["space"] == "both");
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("figures")
{
    const auto out = scratch("fig");
    gemo::RunConfig cfg;
    cfg.out = out.string();
    const auto f1 = gemo::figure_fig1(cfg);
    REQUIRE(f1.rows.size() == 512);
    CHECK(f1.rows.front()[0] == -6.0);
    CHECK(f1.rows[256][0] == 0.0);
    CHECK(std::abs(f1.rows[256][1] - 2.0 / std::numbers::pi) <= 1e-12);
    CHECK(f1.rows[256][2] <= 1e-30);

    const auto f2 = gemo::figure_fig2(cfg);
    REQUIRE(f2.rows.size() == 512);
    CHECK(f2.rows.back()[0] == 2.5);
    for (std::size_t c = 1; c <= 3; ++c) CHECK(f2.rows.front()[c] == 0.0);
    CHECK(std::isinf(f2.rows.front()[4]));
    std::size_t prev = 0;
    for (std::size_t c = 1; c <= 3; ++c) {
        std::size_t arg = 0;
        for (std::size_t r = 0; r < f2.rows.size(); ++r)
            if (f2.rows[r][c] > f2.rows[arg][c]) arg = r;
        CHECK(arg > prev);
        prev = arg;
    }
    CHECK(f2.sidecar["energies"].size() == 3);

    const auto path = gemo::run_figures("fig2", cfg);
    const std::string csv = slurp(path);
    CHECK(csv.rfind("x,density_0,density_1,density_2,V\n0,0,0,0,inf\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(fs::exists(out / "fig2.json"));
    CHECK_THROWS_AS((void)gemo::run_figures("fig3", cfg), gemo::InputError);
    fs::remove_all(out);
}

TEST_CASE("number formatting round-trips")
{
    CHECK(gemo::format_number(0.1) == "0.1");
    CHECK(gemo::format_number(-INFINITY) == "-inf");
    CHECK(gemo::format_number(NAN) == "nan");
    for (double v : {1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(gemo::format_number(v)) == v);
}
