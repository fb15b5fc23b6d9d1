#pragma once

#include "gemo/deform.hpp"
#include "gemo/grid.hpp"
#include "gemo/hamiltonian.hpp"

#include <functional>

namespace gemo {

/// Real analytic state with its first derivative, normalized on `support`
/// (ends may be infinite). `scale` is the natural length used when mapping
/// an infinite end for quadrature.
struct StateFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    Interval support;
    double scale = 1.0;

    [[nodiscard]] WaveFunction sample(const Grid& grid) const;
};

/// Hₙ(t) by the three-term recurrence.
[[nodiscard]] double hermite(int n, double t);

// Infinite well of the quadratic deformation μ = α²x².

[[nodiscard]] double box_energy(int n, double alpha, Units units = {});
/// χₙ(z) on |z| ≤ π/(2α): √(2α/π)·cos(nαz) for odd n, sin for even n.
[[nodiscard]] StateFunction box_state_z(int n, double alpha);
/// φₙ(x) = √(2α/π)·cos(n·arctan(αx))/√(1+α²x²) for odd n, sin for even n.
[[nodiscard]] StateFunction box_state(int n, double alpha);
[[nodiscard]] WaveFunction box_state(int n, double alpha, const Grid& grid);

// Half oscillator of the exponential deformation μ = e^{−γx} − 1 with the
// wall potential V₀(1 − e^{γx})² for x > 0.

/// ω = γ·√(2V₀/m).
[[nodiscard]] double half_oscillator_omega(double gamma, double v0, Units units = {});
/// ħω(2n + 3/2).
[[nodiscard]] double half_oscillator_energy(int n, double omega, Units units = {});
/// Odd full-line oscillator state of index q = 2n+1 restricted to z > 0 and
/// renormalized there.
[[nodiscard]] StateFunction half_oscillator_state_z(int n, double omega, Units units = {});
/// e^{γx/2}·χₙ((e^{γx} − 1)/γ) written out in closed form.
[[nodiscard]] StateFunction half_oscillator_state_x(int n, double gamma, double v0, Units units = {});
[[nodiscard]] WaveFunction half_oscillator_state_x(int n, double gamma, double v0, Units units, const Grid& grid);

/// Exponent γx/2 − √(2mV₀)(e^{γx}−1)²/(2ħγ) of the x-space half-oscillator
/// state, as composed from the z-space Gaussian and the e^{γx/2} factor.
[[nodiscard]] double half_oscillator_exponent_composed(double x, double gamma, double v0, Units units = {});
/// −(1/2γ)[√(2mV₀)/ħ·(e^{γx}−1)² − γ²x], the closed form as printed.
[[nodiscard]] double half_oscillator_exponent_closed(double x, double gamma, double v0, Units units = {});

/// ∫ f² over the state's support by adaptive quadrature.
[[nodiscard]] double norm_squared(const StateFunction& f, double tol = 1e-12);

} // namespace gemo
