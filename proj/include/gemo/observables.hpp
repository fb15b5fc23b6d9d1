#pragma once

#include "gemo/analytic.hpp"
#include "gemo/deform.hpp"
#include "gemo/grid.hpp"

#include <optional>
#include <vector>

namespace gemo {

struct PositionMoments {
    double mean = 0.0;
    double mean_sq = 0.0;
    double delta = 0.0;
};

struct MomentumMoments {
    Complex mean;
    /// Sampled states: the part of ⟨ψ, pψ⟩ produced by the anti-Hermitian
    /// O(h²) remainder of the difference stencil. Zero for analytic states.
    Complex skew;
    double mean_sq = 0.0;
    double delta = 0.0;
};

struct UncertaintyReport {
    PositionMoments x;
    MomentumMoments p;
    double product = 0.0;
    /// (ħ/2)(1 + α²⟨x²⟩), present for quadratic deformations only.
    std::optional<double> eup_bound;
    /// (ħ/2)|⟨1 + μ⟩|.
    double generic_bound = 0.0;
    /// product < bound − 1e-8, using the EUP bound when present.
    bool violated = false;
};

/// Trapezoid moments of a sampled state. Throws InputError when the norm
/// deviates from 1 by more than 1e-6.
[[nodiscard]] PositionMoments position_moments(const WaveFunction& psi);
/// ⟨p²⟩ = ‖pψ‖² with p from apply_momentum. ⟨p⟩ is the expectation of the
/// Hermitian part ½(p + p†) of the discrete operator, ½(⟨ψ, pψ⟩ + ⟨pψ, ψ⟩);
/// the remainder is reported as `skew`.
[[nodiscard]] MomentumMoments momentum_moments(const Deformation& d, const WaveFunction& psi, double hbar = 1.0);
[[nodiscard]] UncertaintyReport uncertainty_report(const Deformation& d, const WaveFunction& psi, double hbar = 1.0);

// Analytic states are integrated by adaptive quadrature over their support.
// The deformation is evaluated there regardless of its declared domain.

[[nodiscard]] PositionMoments position_moments(const StateFunction& psi);
[[nodiscard]] MomentumMoments momentum_moments(const Deformation& d, const StateFunction& psi, double hbar = 1.0);
[[nodiscard]] UncertaintyReport uncertainty_report(const Deformation& d, const StateFunction& psi, double hbar = 1.0);

struct MinimumMomentumSpread {
    int n_star = 0;
    double dp_min = 0.0;
    /// δp of box states n = 1..n_max.
    std::vector<double> dp;
};

/// δp over the analytic box states of a quadratic deformation.
[[nodiscard]] MinimumMomentumSpread minimum_dp_scan(const Deformation& d, int n_max, double hbar = 1.0);

} // namespace gemo
