#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gemo {

enum class Space { X, Z };

[[nodiscard]] const char* space_name(Space s);

/// Uniform sample axis of interior nodes. The wavefunction is pinned to zero
/// at the two walls one spacing beyond the first and last node.
struct Grid {
    double start = 0.0;
    double spacing = 1.0;
    std::size_t count = 0;
    Space space = Space::X;

    /// `count` interior nodes strictly between the walls.
    [[nodiscard]] static Grid interior(double wall_lo, double wall_hi, std::size_t count, Space space);

    [[nodiscard]] double node(std::size_t i) const { return start + static_cast<double>(i) * spacing; }
    [[nodiscard]] double wall_lo() const { return start - spacing; }
    [[nodiscard]] double wall_hi() const { return start + static_cast<double>(count) * spacing; }
    [[nodiscard]] std::vector<double> nodes() const;

    /// Throws InputError unless spacing > 0, count >= 3, all finite.
    void check() const;
};

[[nodiscard]] bool same_grid(const Grid& a, const Grid& b);

using Complex = std::complex<double>;

/// Complex samples bound to a grid, with the quadrature norm computed once.
class WaveFunction {
public:
    WaveFunction(Grid grid, std::vector<Complex> samples);
    WaveFunction(Grid grid, std::span<const double> samples);

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] std::span<const Complex> samples() const { return samples_; }
    [[nodiscard]] std::size_t size() const { return samples_.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return samples_[i]; }

    /// ∫|ψ|² by the trapezoid rule with zero walls (h·Σ|ψ_i|²).
    [[nodiscard]] double norm_squared() const { return norm_squared_; }
    [[nodiscard]] WaveFunction normalized() const;
    [[nodiscard]] std::vector<double> density() const;

private:
    Grid grid_;
    std::vector<Complex> samples_;
    double norm_squared_ = 0.0;
};

/// Grid inner product h·Σ conj(a_i)·b_i. Grids must coincide.
[[nodiscard]] Complex inner(const WaveFunction& a, const WaveFunction& b);

/// Cubic Lagrange interpolation of the samples at `at`, with the zero walls
/// acting as extra nodes. Throws RangeError outside [wall_lo, wall_hi].
[[nodiscard]] Complex interpolate_cubic(const WaveFunction& psi, double at);

} // namespace gemo
