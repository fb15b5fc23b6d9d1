// Command-line driver: solve, figure, verify, parse-check.

#include "gemo/config.hpp"
#include "gemo/error.hpp"
#include "gemo/expr.hpp"
#include "gemo/pipeline.hpp"
#include "gemo/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Overrides {
    std::optional<std::string> alpha, gamma, v0, hbar, mass, grid_n, space, states, out;
    std::vector<std::string> set;

    void apply(gemo::RunConfig& cfg) const
    {
        const std::pair<const char*, const std::optional<std::string>*> flags[] = {
            {"alpha", &alpha}, {"gamma", &gamma},   {"V0", &v0},         {"hbar", &hbar}, {"mass", &mass},
            {"grid_n", &grid_n}, {"space", &space}, {"states", &states}, {"out", &out}};
        for (const auto& [key, value] : flags) {
            if (*value) cfg.set(key, **value);
        }
        for (const auto& kv : set) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw gemo::InputError("cli", "--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
};

void add_physics_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--alpha", o.alpha, "quadratic deformation strength");
    cmd->add_option("--gamma", o.gamma, "exponential deformation strength");
    cmd->add_option("--V0", o.v0, "half-morse depth");
    cmd->add_option("--hbar", o.hbar, "reduced Planck constant");
    cmd->add_option("--mass", o.mass, "particle mass");
    cmd->add_option("--out", o.out, "output directory");
}

int report(const gemo::Error& e)
{
    std::cerr << "gemo: " << e.what() << "\n  stage: " << e.stage() << "\n";
    if (const auto* pe = dynamic_cast<const gemo::ParseError*>(&e)) std::cerr << "  offset: " << pe->offset() << "\n";
    return kExitInput;
}

int cmd_solve(const std::string& path, const Overrides& o)
{
    gemo::RunConfig cfg = gemo::load_config(path);
    o.apply(cfg);
    const auto doc = gemo::run_solve(cfg);
    for (const auto& s : doc["solves"]) {
        std::cout << s["space"].get<std::string>() << "-space, N = " << s["grid"]["count"] << "\n";
        const auto& ev = s["eigenvalues"];
        for (std::size_t i = 0; i < ev.size(); ++i) {
            std::cout << "  E[" << i << "] = " << gemo::format_number(ev[i].get<double>());
            if (s.contains("reference")) {
                std::cout << "  rel.err " << gemo::format_number(s["reference"]["relative_errors"][i].get<double>());
            }
            std::cout << "\n";
        }
    }
    std::cout << "wrote " << cfg.out << "\n";
    return 0;
}

int cmd_figure(const std::string& which, const Overrides& o)
{
    gemo::RunConfig cfg;
    o.apply(cfg);
    std::cout << "wrote " << gemo::run_figures(which, cfg) << "\n";
    return 0;
}

int cmd_verify(double alpha, const std::string& json_path, int only)
{
    gemo::VerifyOptions opt;
    opt.alpha = alpha;
    std::vector<gemo::CriterionResult> results;
    if (only > 0) results.push_back(gemo::check_criterion(only, opt));
    else results = gemo::run_acceptance(opt);

    for (const auto& r : results) {
        std::cerr << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.summary << "\n";
    }
    const auto doc = gemo::to_json(results);
    const std::string text = doc.dump(2) + "\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw gemo::InputError("cli.verify", "cannot write " + json_path);
        out << text;
    }
    std::cout << text;
    return doc["all_passed"].get<bool>() ? 0 : kExitFailure;
}

int cmd_parse_check(const std::string& text, const std::vector<std::string>& names)
{
    const std::set<std::string, std::less<>> params(names.begin(), names.end());
    const auto ast = gemo::expr::parse(text, params);
    std::cout << "expression: " << gemo::expr::to_string(ast) << "\n";
    std::cout << "d/dx:       " << gemo::expr::to_string(gemo::expr::differentiate(ast)) << "\n";
    std::cout << "parameters:";
    for (const auto& p : gemo::expr::referenced_parameters(ast)) std::cout << " " << p;
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized extended momentum operator toolkit"};
    app.require_subcommand(1);

    Overrides solve_o;
    std::string config_path;
    auto* solve = app.add_subcommand("solve", "solve a run configuration");
    solve->add_option("config", config_path, "key = value configuration file")->required();
    add_physics_flags(solve, solve_o);
    solve->add_option("--grid-n", solve_o.grid_n, "interior grid nodes");
    solve->add_option("--space", solve_o.space, "x, z or both");
    solve->add_option("--states", solve_o.states, "number of eigenpairs");
    solve->add_option("--set", solve_o.set, "extra key=value override")->take_all();

    Overrides fig_o;
    std::string which;
    auto* figure = app.add_subcommand("figure", "emit fig1 or fig2 data");
    figure->add_option("which", which, "fig1 or fig2")->required();
    add_physics_flags(figure, fig_o);

    double verify_alpha = 1.0;
    std::string verify_json;
    int verify_only = 0;
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--alpha", verify_alpha, "deformation strength for the example-1 spectrum solves");
    verify->add_option("--json", verify_json, "also write the JSON report to this file");
    verify->add_option("--only", verify_only, "run a single criterion")->check(CLI::Range(1, gemo::kCriterionCount));

    std::string expr_text;
    std::vector<std::string> param_names;
    auto* parse_check = app.add_subcommand("parse-check", "parse an expression and print its derivative");
    parse_check->add_option("expr", expr_text, "expression in x")->required();
    parse_check->add_option("--param", param_names, "declare a parameter name")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve) return cmd_solve(config_path, solve_o);
        if (*figure) return cmd_figure(which, fig_o);
        if (*verify) return cmd_verify(verify_alpha, verify_json, verify_only);
        if (*parse_check) return cmd_parse_check(expr_text, param_names);
    } catch (const gemo::Error& e) {
        return report(e);
    } catch (const std::exception& e) {
        std::cerr << "gemo: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
