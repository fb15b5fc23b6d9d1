#pragma once

#include "gemo/deform.hpp"
#include "gemo/grid.hpp"

#include <vector>

namespace gemo {

/// Monotone change of variable z(x) = z₀ + ∫_{x_ref}^{x} dy / (1 + μ(y)).
///
/// A table of (x_i, z_i) over the whole deformation domain is built eagerly,
/// with nodes placed where 1/(1+μ) varies; queries integrate from the nearest
/// node, and inversion brackets inside the table before refining.
class CoordinateMap {
public:
    /// Throws InputError when x_ref is outside the domain or the deformation
    /// fails validation on its domain.
    explicit CoordinateMap(Deformation d, double x_ref = 0.0, double z0 = 0.0);

    [[nodiscard]] const Deformation& deformation() const { return d_; }
    [[nodiscard]] double x_ref() const { return x_ref_; }
    [[nodiscard]] double z0() const { return z0_; }
    /// z-image of the deformation domain.
    [[nodiscard]] Interval image() const { return {zs_.front(), zs_.back()}; }
    [[nodiscard]] std::size_t table_size() const { return xs_.size(); }

    [[nodiscard]] double forward(double x) const;
    /// x with |forward(x) − z| ≤ 1e-10. Throws RangeError outside image().
    [[nodiscard]] double inverse(double z) const;

private:
    [[nodiscard]] double integrate(double a, double b, double tol) const;

    Deformation d_;
    double x_ref_;
    double z0_;
    std::vector<double> xs_;
    std::vector<double> zs_;
};

/// φ(x_i) = χ(z(x_i)) / √(1 + μ(x_i)), with χ interpolated cubically on its
/// z-grid. Throws RangeError if an x node maps outside the z-grid walls.
[[nodiscard]] WaveFunction pull_back_wavefunction(const CoordinateMap& map, const WaveFunction& chi,
                                                  const Grid& x_grid);

} // namespace gemo
