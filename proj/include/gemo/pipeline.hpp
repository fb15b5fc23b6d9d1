#pragma once

#include "gemo/config.hpp"
#include "gemo/eigensolver.hpp"
#include "gemo/grid.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gemo {

/// Closed-form energies the numerical spectrum can be compared against.
struct Oracle {
    std::string name;
    std::vector<double> values;
};

struct SpaceSolve {
    Space space = Space::Z;
    Grid grid;
    std::vector<EigenPair> pairs;
    double max_residual = 0.0;
    /// Energies of the untruncated problem.
    std::optional<Oracle> reference;
    /// Energies of the same problem on the solved (truncated) domain.
    std::optional<Oracle> truncated;
};

/// Builds and diagonalizes the Hamiltonian of every requested space.
[[nodiscard]] std::vector<SpaceSolve> solve(const ResolvedConfig& rc);

/// Solves and writes `spectrum.json` plus `states.csv` (`states_x.csv` and
/// `states_z.csv` when both spaces are solved) into cfg.out. Returns the
/// spectrum document.
nlohmann::ordered_json run_solve(const RunConfig& cfg);

/// Columnar figure data with its JSON sidecar.
struct FigureData {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    nlohmann::ordered_json sidecar;
};

/// |φₙ(x)|², n = 1..4, of the quadratic box on x_i = −6 + 12i/512, i < 512.
/// Uses cfg.alpha, hbar and mass.
[[nodiscard]] FigureData figure_fig1(const RunConfig& cfg);
/// |φₙ(x)|², n = 0..2, of the half oscillator and V(x) on 512 points of
/// [0, 2.5] (both ends included). Uses cfg.gamma, V0, hbar and mass.
[[nodiscard]] FigureData figure_fig2(const RunConfig& cfg);

/// Computes fig1 or fig2 and writes `<name>.csv` and `<name>.json` into
/// cfg.out. Returns the CSV path.
std::string run_figures(const std::string& which, const RunConfig& cfg);

/// Shortest round-trip decimal; non-finite values print as inf, -inf, nan.
[[nodiscard]] std::string format_number(double v);
[[nodiscard]] std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

} // namespace gemo
