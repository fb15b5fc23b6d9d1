#include "gemo/pipeline.hpp"

#include "gemo/analytic.hpp"
#include "gemo/error.hpp"
#include "gemo/hamiltonian.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace gemo {

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text)
{
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("pipeline.write", "cannot write " + path.string());
    out << text;
    if (!out) throw InputError("pipeline.write", "write failed for " + path.string());
}

nlohmann::ordered_json oracle_json(const Oracle& o, const std::vector<EigenPair>& pairs)
{
    nlohmann::ordered_json j;
    j["name"] = o.name;
    j["values"] = o.values;
    std::vector<double> rel;
    for (std::size_t i = 0; i < o.values.size() && i < pairs.size(); ++i) {
        rel.push_back((pairs[i].eigenvalue - o.values[i]) / o.values[i]);
    }
    j["relative_errors"] = rel;
    return j;
}

void attach_oracles(const ResolvedConfig& rc, SpaceSolve& s, std::size_t k)
{
    const RunConfig& c = rc.raw;
    const Units& u = rc.units;
    if (c.potential == "zero") {
        // Free particle between the walls of the z-image: a plain box.
        const double w = s.space == Space::Z
                             ? s.grid.wall_hi() - s.grid.wall_lo()
                             : rc.map->forward(s.grid.wall_hi()) - rc.map->forward(s.grid.wall_lo());
        Oracle t{"box on solved domain", {}};
        for (std::size_t n = 1; n <= k; ++n) {
            t.values.push_back(double(n * n) * std::numbers::pi * std::numbers::pi * u.hbar * u.hbar /
                               (2.0 * u.mass * w * w));
        }
        s.truncated = t;
        if (c.deformation == "quadratic") {
            Oracle r{"quadratic box", {}};
            for (std::size_t n = 1; n <= k; ++n) r.values.push_back(box_energy(static_cast<int>(n), c.alpha, u));
            s.reference = r;
        }
    } else if (c.potential == "half-morse" && c.deformation == "exponential") {
        const double lower = s.space == Space::Z ? s.grid.wall_lo() : rc.map->forward(s.grid.wall_lo());
        if (std::abs(lower) <= 1e-12) {
            const double omega = half_oscillator_omega(c.gamma, c.v0, u);
            Oracle r{"half oscillator", {}};
            for (std::size_t n = 0; n < k; ++n) r.values.push_back(half_oscillator_energy(static_cast<int>(n), omega, u));
            s.reference = r;
        }
    }
}

SpaceSolve solve_one(const ResolvedConfig& rc, Space space)
{
    const RunConfig& c = rc.raw;
    const auto n = static_cast<std::size_t>(c.grid_n);
    const auto k = static_cast<std::size_t>(c.states);
    SpaceSolve s;
    s.space = space;
    if (space == Space::Z) {
        s.grid = Grid::interior(rc.z_domain.lo, rc.z_domain.hi, n, Space::Z);
        const auto h = build_z_hamiltonian(s.grid, rc.potential_z, rc.units);
        s.pairs = lowest_eigenpairs(h, k, s.grid.spacing);
        s.max_residual = residual_check(h, s.pairs);
    } else {
        s.grid = Grid::interior(rc.x_domain.lo, rc.x_domain.hi, n, Space::X);
        const auto h = build_x_hamiltonian(s.grid, rc.deformation, rc.potential_x, rc.units, c.stencil);
        s.pairs = lowest_eigenpairs(h, k, s.grid.spacing);
        s.max_residual = residual_check(h, s.pairs);
    }
    attach_oracles(rc, s, k);
    return s;
}

nlohmann::ordered_json solve_json(const SpaceSolve& s)
{
    nlohmann::ordered_json j;
    j["space"] = space_name(s.space);
    j["grid"] = {{"count", s.grid.count},
                 {"spacing", s.grid.spacing},
                 {"first_node", s.grid.node(0)},
                 {"wall_lo", s.grid.wall_lo()},
                 {"wall_hi", s.grid.wall_hi()}};
    std::vector<double> values, residuals;
    for (const auto& p : s.pairs) {
        values.push_back(p.eigenvalue);
        residuals.push_back(p.residual);
    }
    j["eigenvalues"] = values;
    j["residuals"] = residuals;
    j["max_residual_check"] = s.max_residual;
    if (s.reference) j["reference"] = oracle_json(*s.reference, s.pairs);
    if (s.truncated) j["truncated"] = oracle_json(*s.truncated, s.pairs);
    return j;
}

std::string states_csv(const SpaceSolve& s)
{
    std::vector<std::string> header{space_name(s.space)};
    for (std::size_t i = 0; i < s.pairs.size(); ++i) header.push_back("density_" + std::to_string(i));
    std::vector<std::vector<double>> rows(s.grid.count);
    for (std::size_t r = 0; r < s.grid.count; ++r) {
        rows[r].push_back(s.grid.node(r));
        for (const auto& p : s.pairs) rows[r].push_back(p.vector[r] * p.vector[r]);
    }
    return to_csv(header, rows);
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<SpaceSolve> solve(const ResolvedConfig& rc)
{
    std::vector<SpaceSolve> out;
    const SolveSpace sp = rc.raw.space;
    if (sp == SolveSpace::X || sp == SolveSpace::Both) out.push_back(solve_one(rc, Space::X));
    if (sp == SolveSpace::Z || sp == SolveSpace::Both) out.push_back(solve_one(rc, Space::Z));
    return out;
}

nlohmann::ordered_json run_solve(const RunConfig& cfg)
{
    const ResolvedConfig rc = resolve(cfg);
    const auto solves = solve(rc);

    nlohmann::ordered_json doc;
    doc["config"] = to_json(rc);
    doc["solves"] = nlohmann::ordered_json::array();
    for (const auto& s : solves) doc["solves"].push_back(solve_json(s));

    const fs::path dir(cfg.out);
    write_text(dir / "spectrum.json", doc.dump(2) + "\n");
    if (solves.size() == 1) {
        write_text(dir / "states.csv", states_csv(solves.front()));
    } else {
        for (const auto& s : solves) write_text(dir / ("states_" + std::string(space_name(s.space)) + ".csv"), states_csv(s));
    }
    return doc;
}

FigureData figure_fig1(const RunConfig& cfg)
{
    const Units u{cfg.hbar, cfg.mass};
    FigureData f;
    f.name = "fig1";
    f.header = {"x"};
    std::vector<StateFunction> states;
    std::vector<double> energies;
    for (int n = 1; n <= 4; ++n) {
        states.push_back(box_state(n, cfg.alpha));
        energies.push_back(box_energy(n, cfg.alpha, u));
        f.header.push_back("density_" + std::to_string(n));
    }
    constexpr int samples = 512;
    for (int i = 0; i < samples; ++i) {
        const double x = -6.0 + 12.0 * i / samples;
        std::vector<double> row{x};
        for (const auto& s : states) {
            const double v = s.value(x);
            row.push_back(v * v);
        }
        f.rows.push_back(std::move(row));
    }
    f.sidecar["figure"] = "fig1";
    f.sidecar["config"] = {{"deformation", "quadratic"}, {"alpha", cfg.alpha}, {"hbar", cfg.hbar}, {"mass", cfg.mass}};
    f.sidecar["columns"] = f.header;
    f.sidecar["quantum_numbers"] = {1, 2, 3, 4};
    f.sidecar["energies"] = energies;
    return f;
}

FigureData figure_fig2(const RunConfig& cfg)
{
    const Units u{cfg.hbar, cfg.mass};
    const double omega = half_oscillator_omega(cfg.gamma, cfg.v0, u);
    FigureData f;
    f.name = "fig2";
    f.header = {"x"};
    std::vector<StateFunction> states;
    std::vector<double> energies;
    for (int n = 0; n <= 2; ++n) {
        states.push_back(half_oscillator_state_x(n, cfg.gamma, cfg.v0, u));
        energies.push_back(half_oscillator_energy(n, omega, u));
        f.header.push_back("density_" + std::to_string(n));
    }
    f.header.push_back("V");
    constexpr int samples = 512;
    for (int i = 0; i < samples; ++i) {
        const double x = 2.5 * i / (samples - 1);
        std::vector<double> row{x};
        for (const auto& s : states) {
            const double v = s.value(x);
            row.push_back(v * v);
        }
        const double w = -std::expm1(cfg.gamma * x);
        row.push_back(x <= 0.0 ? std::numeric_limits<double>::infinity() : cfg.v0 * w * w);
        f.rows.push_back(std::move(row));
    }
    f.sidecar["figure"] = "fig2";
    f.sidecar["config"] = {{"deformation", "exponential"}, {"gamma", cfg.gamma}, {"V0", cfg.v0},
                           {"hbar", cfg.hbar},           {"mass", cfg.mass}};
    f.sidecar["omega"] = omega;
    f.sidecar["columns"] = f.header;
    f.sidecar["quantum_numbers"] = {0, 1, 2};
    f.sidecar["energies"] = energies;
    return f;
}

std::string run_figures(const std::string& which, const RunConfig& cfg)
{
    FigureData f;
    if (which == "fig1") f = figure_fig1(cfg);
    else if (which == "fig2") f = figure_fig2(cfg);
    else throw InputError("pipeline.figure", "unknown figure '" + which + "' (expected fig1 or fig2)");
    const fs::path dir(cfg.out);
    const fs::path csv = dir / (f.name + ".csv");
    write_text(csv, to_csv(f.header, f.rows));
    write_text(dir / (f.name + ".json"), f.sidecar.dump(2) + "\n");
    return csv.string();
}

} // namespace gemo
