#pragma once

#include "gemo/banded.hpp"
#include "gemo/deform.hpp"
#include "gemo/expr.hpp"
#include "gemo/grid.hpp"

#include <functional>

namespace gemo {

/// Physical constants of a run. Both default to 1.
struct Units {
    double hbar = 1.0;
    double mass = 1.0;
};

using Potential = std::function<double(double)>;

/// Potential callable backed by an expression in x.
[[nodiscard]] Potential potential_from_ast(expr::Ast v, expr::Parameters params);

enum class Stencil {
    /// Tridiagonal flux form S·Dᵀ·G½·D·S, O(h²).
    SecondOrder,
    /// Pentadiagonal S·[(4/3)·Dᵀ·G½·D − (1/3)·A·G·Aᵀ]·S, O(h⁴) in the interior.
    FourthOrder,
};

/// Standard 3-point Hamiltonian −(ħ²/2m) d²/dz² + V on a z-grid with
/// Dirichlet walls: diagonal ħ²/(m h²) + V(z_i), off-diagonal −ħ²/(2m h²).
[[nodiscard]] SymmetricBandedMatrix build_z_hamiltonian(const Grid& grid, const Potential& v, Units units = {});

/// Hamiltonian p²/2m + V of the deformed momentum p = −iħ√g ∂ₓ √g (g = 1 + μ),
/// discretized as (ħ²/2m)·S·K·S + diag(V) with S = diag(√g) and K a symmetric
/// discretization of −∂ₓ g ∂ₓ. The deformation is validated on the grid hull
/// first; a failed validation throws InputError.
[[nodiscard]] SymmetricBandedMatrix build_x_hamiltonian(const Grid& grid, const Deformation& d, const Potential& v,
                                                        Units units = {}, Stencil stencil = Stencil::FourthOrder);

[[nodiscard]] SymmetricBandedMatrix build_x_hamiltonian(const Grid& grid, const Deformation& d, const expr::Ast& v,
                                                        const expr::Parameters& params, Units units = {},
                                                        Stencil stencil = Stencil::FourthOrder);

/// (pψ)_i = −iħ[(1+μ)Dψ + ½μ′ψ](x_i), D the central difference; the two end
/// nodes use one-sided second-order differences.
[[nodiscard]] WaveFunction apply_momentum(const Deformation& d, const WaveFunction& psi, double hbar = 1.0);

/// max over interior nodes of |(x·p f − p(x·f))_i − iħ(1+μ(x_i)) f_i|.
[[nodiscard]] double commutator_residual(const Deformation& d, const WaveFunction& f, double hbar = 1.0);

} // namespace gemo
