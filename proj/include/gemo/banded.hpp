#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gemo {

/// Real symmetric matrix with bandwidth b ∈ {1, 2}. Only the diagonal and the
/// b superdiagonals are stored, so M = Mᵀ holds by construction.
class SymmetricBandedMatrix {
public:
    SymmetricBandedMatrix(std::size_t n, int bandwidth);

    /// bands[0] is the diagonal (n entries), bands[d] the d-th superdiagonal
    /// (n − d entries).
    [[nodiscard]] static SymmetricBandedMatrix from_bands(std::vector<std::vector<double>> bands);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] int bandwidth() const { return bandwidth_; }

    [[nodiscard]] std::span<const double> band(int d) const { return bands_[static_cast<std::size_t>(d)]; }
    [[nodiscard]] std::span<double> band(int d) { return bands_[static_cast<std::size_t>(d)]; }

    /// Entry (i, j); zero outside the band.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const;

    [[nodiscard]] std::vector<double> multiply(std::span<const double> v) const;

    /// max_i Σ_j |M_ij|
    [[nodiscard]] double norm_inf() const;

    /// Gershgorin enclosure of the spectrum.
    [[nodiscard]] std::pair<double, double> gershgorin() const;

private:
    std::size_t n_;
    int bandwidth_;
    std::vector<std::vector<double>> bands_;
};

} // namespace gemo
