#pragma once

#include "gemo/deform.hpp"
#include "gemo/hamiltonian.hpp"
#include "gemo/pct.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gemo {

enum class SolveSpace { X, Z, Both };

/// Declarative run description. Read from a flat `key = value` file; numeric
/// values may be constant expressions such as `pi/2`.
///
/// keys: deformation (zero|quadratic|exponential|expression), alpha, gamma,
/// mu, param.<name>, potential (zero|half-morse|expression), V, V0, hbar,
/// mass, x_min, x_max, z_min, z_max, grid_n, space (x|z|both), states, out,
/// stencil (fourth|second).
struct RunConfig {
    std::string deformation = "quadratic";
    double alpha = 1.0;
    double gamma = 1.0;
    std::string mu;
    expr::Parameters params;

    std::string potential = "zero";
    std::string v;
    double v0 = 1.0;

    double hbar = 1.0;
    double mass = 1.0;

    std::optional<double> x_min, x_max, z_min, z_max;

    long grid_n = 4096;
    SolveSpace space = SolveSpace::Z;
    long states = 4;
    std::string out = "out";
    Stencil stencil = Stencil::FourthOrder;

    /// Sets one key from its textual value. Throws InputError (stage
    /// "config.parse") for unknown keys or malformed values.
    void set(std::string_view key, std::string_view value);
};

[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Constant expression such as `10/sqrt(sqrt(2))`.
[[nodiscard]] double parse_number(std::string_view text);

[[nodiscard]] const char* solve_space_name(SolveSpace s);

/// Config with every default expanded and the physics objects built.
struct ResolvedConfig {
    RunConfig raw;
    Deformation deformation = Deformation::zero();
    std::shared_ptr<const CoordinateMap> map;
    Potential potential_x;
    /// Potential of the equivalent z-space problem, V(x(z)).
    Potential potential_z;
    std::string mu_text;
    std::string v_text;
    Interval x_domain;
    Interval z_domain;
    Units units;
};

/// Validates the config and fills in domains:
/// an explicit x range fixes z as its image; an explicit z range alone fixes
/// x as its preimage; otherwise the worked-example defaults apply (quadratic:
/// x ∈ [−500/α, 500/α] and the full box z ∈ [−π/2α, π/2α]; exponential with
/// half-morse: z ∈ [0, 10√(ħ/mω)] and its preimage).
[[nodiscard]] ResolvedConfig resolve(const RunConfig& cfg);

[[nodiscard]] nlohmann::ordered_json to_json(const ResolvedConfig& rc);

} // namespace gemo
