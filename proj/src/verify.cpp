#include "gemo/verify.hpp"

#include "gemo/analytic.hpp"
#include "gemo/eigensolver.hpp"
#include "gemo/error.hpp"
#include "gemo/hamiltonian.hpp"
#include "gemo/observables.hpp"
#include "gemo/pct.hpp"
#include "gemo/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace gemo {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }

std::vector<double> eigenvalues(const std::vector<EigenPair>& pairs)
{
    std::vector<double> out;
    for (const auto& p : pairs) out.push_back(p.eigenvalue);
    return out;
}

std::vector<double> box_levels_z(double alpha, std::size_t n, std::size_t k)
{
    const double edge = 0.5 * kPi / alpha;
    const Grid g = Grid::interior(-edge, edge, n, Space::Z);
    const auto h = build_z_hamiltonian(g, [](double) { return 0.0; });
    return eigenvalues(lowest_eigenpairs(h, k, g.spacing));
}

double truncated_box_energy(int n, double alpha, double l)
{
    const double zl = std::atan(alpha * l) / alpha;
    return n * n * kPi * kPi / (8.0 * zl * zl);
}

// Example 1 in z-space.
CriterionResult criterion1(const VerifyOptions& opt)
{
    CriterionResult r;
    const std::vector<double> golden{0.5, 2.0, 4.5, 8.0};
    const auto t0 = std::chrono::steady_clock::now();
    const auto coarse = box_levels_z(opt.alpha, 4096, 4);
    const auto fine = box_levels_z(opt.alpha, 8193, 4);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<double> rel, ratio;
    for (int i = 0; i < 4; ++i) {
        rel.push_back(std::abs(coarse[i] - golden[i]) / golden[i]);
        const double exact = box_energy(i + 1, opt.alpha);
        ratio.push_back(std::abs(coarse[i] - exact) / std::abs(fine[i] - exact));
    }
    const bool ok_err = max_of(rel) <= 1e-4;
    const bool ok_ratio = min_of(ratio) >= 3.5 && max_of(ratio) <= 4.5;
    const bool ok_time = seconds <= 10.0;
    r.passed = ok_err && ok_ratio && ok_time;
    r.summary = "max rel err " + sci(max_of(rel)) + " (tol 1e-4), refinement ratios " + sci(min_of(ratio)) + ".." +
                sci(max_of(ratio)) + " (need [3.5, 4.5]), " + sci(seconds) + " s (limit 10)";
    r.details = {{"alpha", opt.alpha},          {"eigenvalues_n4096", coarse}, {"eigenvalues_n8193", fine},
                 {"expected", golden},          {"relative_errors", rel},      {"tolerance", 1e-4},
                 {"convergence_ratios", ratio}, {"ratio_range", {3.5, 4.5}},  {"runtime_s", seconds}};
    return r;
}

// Example 1 in x-space against the truncated-box energies.
CriterionResult criterion2(const VerifyOptions& opt)
{
    CriterionResult r;
    constexpr double l = 500.0;
    const Grid g = Grid::interior(-l, l, 8000, Space::X);
    const auto h = build_x_hamiltonian(g, Deformation::quadratic(opt.alpha), [](double) { return 0.0; });
    const auto values = eigenvalues(lowest_eigenpairs(h, 4, g.spacing));

    std::vector<double> oracle, rel;
    for (int n = 1; n <= 4; ++n) {
        oracle.push_back(truncated_box_energy(n, 1.0, l));
        rel.push_back(std::abs(values[n - 1] - oracle.back()) / oracle.back());
    }
    // E_n(L) decreasing in L towards n²/2 from above.
    json ladder = json::array();
    bool monotone = true;
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> e;
        for (double ll : {50.0, 500.0, 5000.0}) e.push_back(truncated_box_energy(n, 1.0, ll));
        const double limit = box_energy(n, 1.0);
        monotone = monotone && e[0] > e[1] && e[1] > e[2] && e[2] > limit;
        ladder.push_back({{"n", n}, {"L50", e[0]}, {"L500", e[1]}, {"L5000", e[2]}, {"limit", limit}});
    }
    r.passed = max_of(rel) <= 1e-3 && monotone;
    r.summary = "max rel err vs truncated box " + sci(max_of(rel)) + " (tol 1e-3), E_n(L) monotone from above: " +
                (monotone ? "yes" : "no");
    r.details = {{"alpha", opt.alpha},     {"L", l},           {"N", 8000},
                 {"eigenvalues", values}, {"oracle", oracle}, {"relative_errors", rel},
                 {"tolerance", 1e-3},     {"L_ladder", ladder}};
    return r;
}

// Example 2 in z-space and x-space.
CriterionResult criterion3(const VerifyOptions&)
{
    CriterionResult r;
    const Units u;
    const double gamma = 1.0, v0 = 1.0;
    const double omega = half_oscillator_omega(gamma, v0, u);
    const auto d = Deformation::exponential(gamma);
    const CoordinateMap map(d);
    const auto vx = [&](double x) {
        const double w = -std::expm1(gamma * x);
        return v0 * w * w;
    };

    const double zmax = 10.0 * std::sqrt(u.hbar / (u.mass * omega));
    const Grid gz = Grid::interior(0.0, zmax, 4096, Space::Z);
    const auto hz = build_z_hamiltonian(gz, [&](double z) { return vx(map.inverse(z)); }, u);
    const auto ez = eigenvalues(lowest_eigenpairs(hz, 3, gz.spacing));

    const double xmax = 2.5;
    const Grid gx = Grid::interior(0.0, xmax, 4096, Space::X);
    const auto hx = build_x_hamiltonian(gx, d, vx, u);
    const auto ex = eigenvalues(lowest_eigenpairs(hx, 3, gx.spacing));

    std::vector<double> expected, rel_z, rel_x;
    for (int n = 0; n < 3; ++n) {
        expected.push_back(half_oscillator_energy(n, omega, u));
        rel_z.push_back(std::abs(ez[n] - expected[n]) / expected[n]);
        rel_x.push_back(std::abs(ex[n] - expected[n]) / expected[n]);
    }
    const double z_reach = map.forward(xmax);
    r.passed = max_of(rel_z) <= 1e-3 && max_of(rel_x) <= 5e-3 && z_reach >= zmax;
    r.summary = "z-space max rel err " + sci(max_of(rel_z)) + " (tol 1e-3), x-space " + sci(max_of(rel_x)) +
                " (tol 5e-3), z(x_max) = " + sci(z_reach) + " >= " + sci(zmax);
    r.details = {{"omega", omega},     {"expected", expected},       {"z_domain", {0.0, zmax}},
                 {"z_eigenvalues", ez}, {"z_relative_errors", rel_z}, {"x_domain", {0.0, xmax}},
                 {"x_eigenvalues", ex}, {"x_relative_errors", rel_x}, {"z_of_x_max", z_reach}};
    return r;
}

// Uncertainty chain on analytic box states.
CriterionResult criterion4(const VerifyOptions&)
{
    CriterionResult r;
    double worst = 0.0;
    json rows = json::array();
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto d = Deformation::quadratic(alpha);
        for (int n = 1; n <= 6; ++n) {
            const auto rep = uncertainty_report(d, box_state(n, alpha));
            const double dx = std::sqrt(2.0 * n - 1.0) / alpha;
            const double dp = n * alpha;
            const double prod = n * std::sqrt(2.0 * n - 1.0);
            const double e = std::max({std::abs(rep.x.delta - dx) / dx, std::abs(rep.p.delta - dp) / dp,
                                       std::abs(rep.product - prod) / prod});
            worst = std::max(worst, e);
            rows.push_back({{"alpha", alpha}, {"n", n}, {"dx", rep.x.delta}, {"dp", rep.p.delta},
                            {"product", rep.product}, {"max_rel_err", e}});
        }
    }
    json scans = json::array();
    bool scan_ok = true;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto s = minimum_dp_scan(Deformation::quadratic(alpha), 6);
        const bool ok = s.n_star == 1 && std::abs(s.dp_min - alpha) <= 1e-9 * alpha;
        scan_ok = scan_ok && ok;
        scans.push_back({{"alpha", alpha}, {"n_star", s.n_star}, {"dp_min", s.dp_min}, {"dp", s.dp}});
    }
    r.passed = worst <= 1e-6 && scan_ok;
    r.summary = "max rel err over dx, dp, product " + sci(worst) + " (tol 1e-6), minimum dp scan " +
                (scan_ok ? "(1, alpha)" : "mismatch");
    r.details = {{"states", rows}, {"tolerance", 1e-6}, {"minimum_dp_scan", scans}};
    return r;
}

double weighted_dot(const std::vector<double>& a, const std::vector<double>& b, double w)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(s) * w;
}

double hermiticity_defect(const SymmetricBandedMatrix& h, double weight, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> u(h.size()), v(h.size());
        for (auto& x : u) x = dist(rng);
        for (auto& x : v) x = dist(rng);
        const auto hu = h.multiply(u);
        const auto hv = h.multiply(v);
        const double lhs = weighted_dot(u, hv, weight);
        const double rhs = weighted_dot(hu, v, weight);
        const double scale = std::sqrt(weighted_dot(u, u, weight) * weighted_dot(hv, hv, weight));
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

double richardson_ratio(const Deformation& d, Interval walls, const std::function<double(double)>& f, double& coarse,
                        double& fine)
{
    const auto residual = [&](std::size_t n) {
        const Grid g = Grid::interior(walls.lo, walls.hi, n, Space::X);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = f(g.node(i));
        return commutator_residual(d, WaveFunction(g, std::span<const double>(s)));
    };
    coarse = residual(1023);
    fine = residual(2047);
    return coarse / fine;
}

// Operator identities.
CriterionResult criterion5(const VerifyOptions&)
{
    CriterionResult r;
    // (a) Hermiticity.
    const auto dq = Deformation::quadratic(1.0);
    const auto de = Deformation::exponential(1.0);
    const Grid gq = Grid::interior(-500.0, 500.0, 8000, Space::X);
    const Grid ge = Grid::interior(0.0, 2.5, 4096, Space::X);
    const auto hq = build_x_hamiltonian(gq, dq, [](double) { return 0.0; });
    const auto he = build_x_hamiltonian(ge, de, [](double x) {
        const double w = -std::expm1(x);
        return w * w;
    });
    const double herm = std::max(hermiticity_defect(hq, gq.spacing, 11), hermiticity_defect(he, ge.spacing, 12));
    const bool ok_a = herm <= 1e-13;

    // (b) Commutator residual under halving of h.
    double cq1 = 0, cq2 = 0, ce1 = 0, ce2 = 0;
    const double rq = richardson_ratio(dq, {-10.0, 10.0}, [](double x) { return std::exp(-0.5 * x * x); }, cq1, cq2);
    const double re = richardson_ratio(
        de, {0.5, 4.0}, [](double x) { return std::exp(-0.5 * std::pow((x - 2.25) / 0.35, 2)); }, ce1, ce2);
    const bool ok_b = rq >= 3.5 && rq <= 4.5 && re >= 3.5 && re <= 4.5;

    // (c) Momentum eigenstates e^{in·arctan(αx)}/√(1+α²x²). The central
    // difference leaves ≈ (h²/6)·n³α³ at the origin, so the window is kept
    // to a few 1/α.
    const double alpha = 1.0;
    const auto eigenstate_error = [&](int n, std::size_t count) {
        const Grid g = Grid::interior(-3.0 / alpha, 3.0 / alpha, count, Space::X);
        std::vector<Complex> s(g.count);
        for (std::size_t i = 0; i < g.count; ++i) {
            const double x = g.node(i);
            s[i] = std::polar(1.0 / std::sqrt(1.0 + alpha * alpha * x * x), n * std::atan(alpha * x));
        }
        const WaveFunction psi(g, std::move(s));
        const WaveFunction p = apply_momentum(dq, psi);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.count; ++i) worst = std::max(worst, std::abs(p[i] - n * alpha * psi[i]));
        return worst;
    };
    double worst_c = 0.0;
    std::vector<double> per_n, ratio_c;
    for (int n = 1; n <= 4; ++n) {
        per_n.push_back(eigenstate_error(n, 8192));
        ratio_c.push_back(per_n.back() / eigenstate_error(n, 16385));
        worst_c = std::max(worst_c, per_n.back());
    }
    const bool ok_c = worst_c <= 1e-5;

    r.passed = ok_a && ok_b && ok_c;
    r.summary = "(a) hermiticity defect " + sci(herm) + " (tol 1e-13); (b) richardson ratios " + sci(rq) + ", " +
                sci(re) + " (need [3.5, 4.5]); (c) momentum eigenstate error " + sci(worst_c) + " (tol 1e-5)";
    r.details = {{"hermiticity_defect", herm},
                 {"commutator_quadratic", {{"N1023", cq1}, {"N2047", cq2}, {"ratio", rq}}},
                 {"commutator_exponential", {{"N1023", ce1}, {"N2047", ce2}, {"ratio", re}}},
                 {"momentum_eigenstates",
                  {{"window", {-3.0 / alpha, 3.0 / alpha}}, {"N", 8192}, {"max_error_by_n", per_n},
                   {"halving_ratio_by_n", ratio_c}}}};
    return r;
}

struct LoopCheck {
    double pointwise = 0.0;
    double norm = 0.0;
};

LoopCheck pull_back_check(const CoordinateMap& map, const StateFunction& chi, const Grid& gz, const StateFunction& phi,
                          const Grid& gx)
{
    const WaveFunction chi_s = chi.sample(gz);
    const WaveFunction phi_s = pull_back_wavefunction(map, chi_s, gx);
    LoopCheck c;
    for (std::size_t i = 0; i < gx.count; ++i) {
        c.pointwise = std::max(c.pointwise, std::abs(phi_s[i] - phi.value(gx.node(i))));
    }
    c.norm = std::abs(phi_s.norm_squared() - chi_s.norm_squared());
    return c;
}

// PCT loop closure.
CriterionResult criterion6(const VerifyOptions&)
{
    CriterionResult r;
    double point = 0.0, norm = 0.0;
    json rows = json::array();

    const CoordinateMap mq(Deformation::quadratic(1.0));
    const Grid gz_box = Grid::interior(-0.5 * kPi, 0.5 * kPi, 4096, Space::Z);
    const Grid gx_box = Grid::interior(-1000.0, 1000.0, 40001, Space::X);
    for (int n = 1; n <= 4; ++n) {
        const auto c = pull_back_check(mq, box_state_z(n, 1.0), gz_box, box_state(n, 1.0), gx_box);
        point = std::max(point, c.pointwise);
        norm = std::max(norm, c.norm);
        rows.push_back({{"example", "box"}, {"n", n}, {"pointwise", c.pointwise}, {"norm_defect", c.norm}});
    }

    const Units u;
    const double omega = half_oscillator_omega(1.0, 1.0, u);
    const CoordinateMap me(Deformation::exponential(1.0));
    const Grid gz_osc = Grid::interior(0.0, 12.0, 4096, Space::Z);
    const Grid gx_osc = Grid::interior(0.0, 2.5, 4096, Space::X);
    for (int n = 0; n <= 2; ++n) {
        const auto c = pull_back_check(me, half_oscillator_state_z(n, omega, u), gz_osc,
                                       half_oscillator_state_x(n, 1.0, 1.0, u), gx_osc);
        point = std::max(point, c.pointwise);
        norm = std::max(norm, c.norm);
        rows.push_back({{"example", "half oscillator"}, {"n", n}, {"pointwise", c.pointwise}, {"norm_defect", c.norm}});
    }
    r.passed = point <= 1e-6 && norm <= 1e-6;
    r.summary = "max pointwise deviation " + sci(point) + " (tol 1e-6), max norm defect " + sci(norm) + " (tol 1e-6)";
    r.details = {{"checks", rows}, {"tolerance", 1e-6}};
    return r;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::vector<std::string>& header)
{
    std::ifstream in(path);
    if (!in) throw InputError("verify.figures", "cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    header.clear();
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Figure data.
CriterionResult criterion7(const VerifyOptions&)
{
    CriterionResult r;
    namespace fs = std::filesystem;
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("gemo-verify-" + std::to_string(rd()));
    RunConfig cfg;
    cfg.out = dir.string();
    const auto csv1 = run_figures("fig1", cfg);
    const auto csv2 = run_figures("fig2", cfg);
    std::vector<std::string> h1, h2;
    const auto f1 = read_csv(csv1, h1);
    const auto f2 = read_csv(csv2, h2);
    std::error_code ec;
    fs::remove_all(dir, ec);

    double at_zero = std::numeric_limits<double>::quiet_NaN();
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : f1) {
        if (row[0] == 0.0) at_zero = row[1];
        if (row[0] >= 0.0) {
            decreasing = decreasing && row[1] < prev;
            prev = row[1];
        }
    }
    const double peak_err = std::abs(at_zero - 2.0 / kPi);

    bool wall_zero = f2.front()[0] == 0.0;
    std::vector<double> argmax;
    for (int n = 0; n < 3; ++n) {
        wall_zero = wall_zero && f2.front()[1 + n] == 0.0;
        std::size_t best = 0;
        for (std::size_t i = 1; i < f2.size(); ++i) {
            if (f2[i][1 + n] > f2[best][1 + n]) best = i;
        }
        argmax.push_back(f2[best][0]);
    }
    const bool moving = argmax[0] < argmax[1] && argmax[1] < argmax[2];

    r.passed = peak_err <= 1e-9 && decreasing && wall_zero && moving;
    r.summary = "fig1 |phi_1(0)|^2 - 2/pi = " + sci(peak_err) + " (tol 1e-9), decreasing on [0,6]: " +
                (decreasing ? "yes" : "no") + "; fig2 zero at wall: " + (wall_zero ? "yes" : "no") +
                ", peaks at x = " + sci(argmax[0]) + ", " + sci(argmax[1]) + ", " + sci(argmax[2]);
    r.details = {{"fig1_rows", f1.size()},   {"fig1_density_1_at_0", at_zero}, {"fig1_decreasing", decreasing},
                 {"fig2_rows", f2.size()},   {"fig2_zero_at_wall", wall_zero}, {"fig2_argmax", argmax},
                 {"fig2_columns", h2}};
    return r;
}

// Solver oracles.
CriterionResult criterion8(const VerifyOptions&)
{
    CriterionResult r;
    constexpr std::size_t n = 50;
    constexpr double a = 2.0, b = -1.0;
    SymmetricBandedMatrix t(n, 1);
    for (auto& v : t.band(0)) v = a;
    for (auto& v : t.band(1)) v = b;
    const auto pairs = lowest_eigenpairs(t, n);
    double toeplitz = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double exact = a + 2.0 * b * std::cos(j * kPi / (n + 1));
        toeplitz = std::max(toeplitz, std::abs(pairs[j - 1].eigenvalue - exact));
    }

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> diag(-5.0, 5.0), off(0.1, 2.0), sign(-1.0, 1.0);
    std::uniform_int_distribution<int> size(2, 8);
    double brute = 0.0;
    int cases = 0;
    for (int bw : {1, 2}) {
        for (int trial = 0; trial < 20; ++trial, ++cases) {
            const auto m = static_cast<std::size_t>(size(rng));
            SymmetricBandedMatrix s(m, bw);
            for (auto& v : s.band(0)) v = diag(rng);
            for (int d = 1; d <= bw; ++d) {
                for (auto& v : s.band(d)) v = off(rng) * (sign(rng) < 0 ? -1.0 : 1.0);
            }
            std::vector<std::vector<double>> dense(m, std::vector<double>(m));
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) dense[i][j] = s.at(i, j);
            }
            const auto expect = brute_force_eigenvalues(dense);
            const auto got = eigenvalues(lowest_eigenpairs(s, m));
            for (std::size_t i = 0; i < m; ++i) brute = std::max(brute, std::abs(got[i] - expect[i]));
        }
    }
    r.passed = toeplitz <= 1e-12 && brute <= 1e-10;
    r.summary = "Toeplitz N=50 max error " + sci(toeplitz) + " (tol 1e-12), brute force (" + std::to_string(cases) +
                " matrices, N<=8) max error " + sci(brute) + " (tol 1e-10)";
    r.details = {{"toeplitz_max_error", toeplitz}, {"brute_force_cases", cases}, {"brute_force_max_error", brute}};
    return r;
}

const char* title(int id)
{
    switch (id) {
    case 1: return "example-1 spectrum, z-space";
    case 2: return "example-1 spectrum, x-space";
    case 3: return "example-2 spectrum";
    case 4: return "uncertainty chain";
    case 5: return "operator identities";
    case 6: return "coordinate map loop closure";
    case 7: return "figure data";
    case 8: return "solver oracle";
    }
    return "?";
}

// det(A − λI) by Gaussian elimination with partial pivoting.
double shifted_det(const std::vector<std::vector<double>>& a, double lambda)
{
    auto m = a;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) m[i][i] -= lambda;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        }
        if (m[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

} // namespace

std::vector<double> brute_force_eigenvalues(const std::vector<std::vector<double>>& a)
{
    const std::size_t n = a.size();
    double bound = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        bound = std::max(bound, s);
    }
    const double lo = -bound - 1.0, hi = bound + 1.0;
    for (std::size_t steps = 1024; steps <= (1u << 24); steps *= 4) {
        std::vector<double> roots;
        double prev_x = lo, prev_f = shifted_det(a, lo);
        for (std::size_t i = 1; i <= steps; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
            const double f = shifted_det(a, x);
            if ((prev_f < 0.0) != (f < 0.0) && f != 0.0 && prev_f != 0.0) {
                double l = prev_x, r = x;
                const bool l_neg = prev_f < 0.0;
                for (int it = 0; it < 200; ++it) {
                    const double m = 0.5 * (l + r);
                    if (m <= l || m >= r) break;
                    ((shifted_det(a, m) < 0.0) == l_neg ? l : r) = m;
                }
                roots.push_back(0.5 * (l + r));
            } else if (f == 0.0) {
                roots.push_back(x);
            }
            prev_x = x;
            prev_f = f;
        }
        if (roots.size() == n) return roots;
    }
    throw ConvergenceError("verify.brute_force", "could not separate all roots of the characteristic polynomial");
}

CriterionResult check_criterion(int id, const VerifyOptions& opt)
{
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = criterion1(opt); break;
        case 2: r = criterion2(opt); break;
        case 3: r = criterion3(opt); break;
        case 4: r = criterion4(opt); break;
        case 5: r = criterion5(opt); break;
        case 6: r = criterion6(opt); break;
        case 7: r = criterion7(opt); break;
        case 8: r = criterion8(opt); break;
        default: throw InputError("verify", "no criterion " + std::to_string(id));
        }
    } catch (const Error& e) {
        r.passed = false;
        r.summary = std::string("error: ") + e.what();
        r.details = {{"error", e.what()}, {"stage", e.stage()}};
    }
    r.id = id;
    r.title = title(id);
    return r;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(check_criterion(id, opt));
    return out;
}

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results)
{
    json j;
    bool all = true;
    j["criteria"] = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        j["criteria"].push_back(
            {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary}, {"details", r.details}});
    }
    j["all_passed"] = all;
    return j;
}

} // namespace gemo
