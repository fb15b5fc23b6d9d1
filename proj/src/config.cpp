#include "gemo/config.hpp"

#include "gemo/analytic.hpp"
#include "gemo/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace gemo {

namespace {

constexpr const char* kParseStage = "config.parse";
constexpr const char* kResolveStage = "config.resolve";

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

long parse_count(std::string_view key, std::string_view value)
{
    const double v = parse_number(value);
    if (v != std::floor(v) || std::abs(v) > 1e15) {
        throw InputError(kParseStage, "key '" + std::string(key) + "' needs an integer, got " + std::string(value));
    }
    return static_cast<long>(v);
}

void require(bool ok, const std::string& message)
{
    if (!ok) throw InputError(kResolveStage, message);
}

void require_finite(double v, const char* name)
{
    require(std::isfinite(v), std::string(name) + " must be finite");
}

Interval image_of(const CoordinateMap& map, Interval x)
{
    return {map.forward(x.lo), map.forward(x.hi)};
}

Interval preimage_of(const CoordinateMap& map, Interval z)
{
    return {map.inverse(z.lo), map.inverse(z.hi)};
}

Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

} // namespace

double parse_number(std::string_view text)
{
    const expr::Ast a = expr::parse(trim(text));
    if (expr::depends_on_variable(a)) throw InputError(kParseStage, "numeric value may not depend on x");
    return expr::evaluate(a, {0.0, nullptr});
}

const char* solve_space_name(SolveSpace s)
{
    switch (s) {
    case SolveSpace::X: return "x";
    case SolveSpace::Z: return "z";
    case SolveSpace::Both: return "both";
    }
    return "?";
}

void RunConfig::set(std::string_view key, std::string_view raw)
{
    const std::string_view value = trim(raw);
    const std::string k(trim(key));
    const auto word = [&](std::initializer_list<const char*> allowed) {
        for (const char* a : allowed) {
            if (value == a) return std::string(value);
        }
        std::string list;
        for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
        throw InputError(kParseStage, "key '" + k + "' must be one of " + list + ", got '" + std::string(value) + "'");
    };

    if (k == "deformation") deformation = word({"zero", "quadratic", "exponential", "expression"});
    else if (k == "alpha") alpha = parse_number(value);
    else if (k == "gamma") gamma = parse_number(value);
    else if (k == "mu") mu = value;
    else if (k.starts_with("param.")) {
        const std::string name = k.substr(6);
        if (name.empty()) throw InputError(kParseStage, "empty parameter name");
        params[name] = parse_number(value);
    } else if (k == "potential") potential = word({"zero", "half-morse", "expression"});
    else if (k == "V") v = value;
    else if (k == "V0") v0 = parse_number(value);
    else if (k == "hbar") hbar = parse_number(value);
    else if (k == "mass") mass = parse_number(value);
    else if (k == "x_min") x_min = parse_number(value);
    else if (k == "x_max") x_max = parse_number(value);
    else if (k == "z_min") z_min = parse_number(value);
    else if (k == "z_max") z_max = parse_number(value);
    else if (k == "grid_n") grid_n = parse_count(k, value);
    else if (k == "states") states = parse_count(k, value);
    else if (k == "space") {
        const auto w = word({"x", "z", "both"});
        space = w == "x" ? SolveSpace::X : (w == "z" ? SolveSpace::Z : SolveSpace::Both);
    } else if (k == "out") {
        if (value.empty()) throw InputError(kParseStage, "key 'out' needs a directory");
        out = value;
    } else if (k == "stencil") {
        stencil = word({"fourth", "second"}) == "fourth" ? Stencil::FourthOrder : Stencil::SecondOrder;
    } else {
        throw InputError(kParseStage, "unknown key '" + k + "'");
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InputError(kParseStage, "line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            cfg.set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw InputError(kParseStage, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("config.load", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ResolvedConfig resolve(const RunConfig& cfg)
{
    ResolvedConfig rc;
    rc.raw = cfg;
    for (double v : {cfg.alpha, cfg.gamma, cfg.v0, cfg.hbar, cfg.mass}) require_finite(v, "numeric field");
    require(cfg.hbar > 0.0, "hbar must be positive");
    require(cfg.mass > 0.0, "mass must be positive");
    require(cfg.grid_n >= 64, "grid_n must be at least 64");
    require(cfg.states >= 1, "states must be at least 1");
    require(cfg.states <= cfg.grid_n, "states may not exceed grid_n");
    for (const auto* o : {&cfg.x_min, &cfg.x_max, &cfg.z_min, &cfg.z_max}) {
        if (*o) require_finite(**o, "domain bound");
    }
    require(cfg.x_min.has_value() == cfg.x_max.has_value(), "x_min and x_max must be given together");
    require(cfg.z_min.has_value() == cfg.z_max.has_value(), "z_min and z_max must be given together");
    if (cfg.x_min) require(*cfg.x_min < *cfg.x_max, "x_min must be below x_max");
    if (cfg.z_min) require(*cfg.z_min < *cfg.z_max, "z_min must be below z_max");
    rc.units = {cfg.hbar, cfg.mass};

    // Deformation over a domain that covers any requested x range.
    std::optional<Interval> x_req;
    if (cfg.x_min) x_req = Interval{*cfg.x_min, *cfg.x_max};
    if (cfg.deformation == "zero") {
        rc.deformation = Deformation::zero();
    } else if (cfg.deformation == "quadratic") {
        require(cfg.alpha > 0.0, "alpha must be positive");
        rc.deformation = Deformation::quadratic(cfg.alpha);
    } else if (cfg.deformation == "exponential") {
        require(cfg.gamma > 0.0, "gamma must be positive");
        rc.deformation = Deformation::exponential(cfg.gamma);
    } else {
        require(!cfg.mu.empty(), "deformation = expression needs a mu = ... line");
        require(x_req.has_value(), "deformation = expression needs x_min and x_max");
        rc.deformation = Deformation::from_text(cfg.mu, cfg.params, *x_req);
    }
    if (x_req) rc.deformation = rc.deformation.with_domain(hull(rc.deformation.domain(), *x_req));
    rc.mu_text = expr::to_string(rc.deformation.mu());

    const Interval dom = rc.deformation.domain();
    const double x_ref = std::clamp(0.0, dom.lo, dom.hi);
    rc.map = std::make_shared<const CoordinateMap>(rc.deformation, x_ref, 0.0);

    // Domains.
    const bool half_morse = cfg.potential == "half-morse";
    if (x_req) {
        rc.x_domain = *x_req;
        rc.z_domain = cfg.z_min ? Interval{*cfg.z_min, *cfg.z_max} : image_of(*rc.map, rc.x_domain);
    } else if (cfg.z_min) {
        rc.z_domain = {*cfg.z_min, *cfg.z_max};
        rc.x_domain = preimage_of(*rc.map, rc.z_domain);
    } else if (cfg.deformation == "quadratic") {
        rc.x_domain = {-500.0 / cfg.alpha, 500.0 / cfg.alpha};
        const double edge = 0.5 * std::numbers::pi / cfg.alpha;
        rc.z_domain = {-edge, edge};
    } else if (cfg.deformation == "exponential" && half_morse) {
        const double omega = half_oscillator_omega(cfg.gamma, cfg.v0, rc.units);
        rc.z_domain = {0.0, 10.0 * std::sqrt(cfg.hbar / (cfg.mass * omega))};
        rc.x_domain = {0.0, rc.map->inverse(rc.z_domain.hi)};
    } else {
        throw InputError(kResolveStage, "no default domain for this deformation; set x_min/x_max or z_min/z_max");
    }

    // Potentials.
    if (cfg.potential == "zero") {
        rc.v_text = "0";
        rc.potential_x = [](double) { return 0.0; };
        rc.potential_z = rc.potential_x;
    } else {
        expr::Ast v;
        if (half_morse) {
            require(cfg.v0 > 0.0, "V0 must be positive");
            require(cfg.gamma > 0.0, "gamma must be positive");
            require(rc.x_domain.lo >= 0.0, "half-morse potential is infinite for x <= 0; x_min must be >= 0");
            expr::Parameters p{{"V0", cfg.v0}, {"gamma", cfg.gamma}};
            v = expr::parse("V0*(1-exp(gamma*x))^2", {"V0", "gamma"});
            rc.v_text = expr::to_string(v);
            rc.potential_x = [v, p](double x) {
                if (x <= 0.0) return std::numeric_limits<double>::infinity();
                return expr::evaluate(v, {x, &p});
            };
        } else {
            require(!cfg.v.empty(), "potential = expression needs a V = ... line");
            std::set<std::string, std::less<>> names;
            for (const auto& [name, value] : cfg.params) names.insert(name);
            v = expr::parse(cfg.v, names);
            rc.v_text = expr::to_string(v);
            rc.potential_x = potential_from_ast(v, cfg.params);
        }
        rc.potential_z = [map = rc.map, vx = rc.potential_x](double z) { return vx(map->inverse(z)); };
    }
    return rc;
}

nlohmann::ordered_json to_json(const ResolvedConfig& rc)
{
    const RunConfig& c = rc.raw;
    nlohmann::ordered_json j;
    j["deformation"] = c.deformation;
    j["mu"] = rc.mu_text;
    if (c.deformation == "quadratic") j["alpha"] = c.alpha;
    if (c.deformation == "exponential" || c.potential == "half-morse") j["gamma"] = c.gamma;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    j["params"] = params;
    j["potential"] = c.potential;
    j["V"] = rc.v_text;
    if (c.potential == "half-morse") j["V0"] = c.v0;
    j["hbar"] = c.hbar;
    j["mass"] = c.mass;
    j["x_min"] = rc.x_domain.lo;
    j["x_max"] = rc.x_domain.hi;
    j["z_min"] = rc.z_domain.lo;
    j["z_max"] = rc.z_domain.hi;
    j["grid_n"] = c.grid_n;
    j["space"] = solve_space_name(c.space);
    j["states"] = c.states;
    j["out"] = c.out;
    j["stencil"] = c.stencil == Stencil::FourthOrder ? "fourth" : "second";
    return j;
}

} // namespace gemo
