#include "gemo/banded.hpp"

#include "gemo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gemo {

SymmetricBandedMatrix::SymmetricBandedMatrix(std::size_t n, int bandwidth) : n_(n), bandwidth_(bandwidth)
{
    if (n == 0) throw InputError("banded", "matrix dimension must be positive");
    if (bandwidth < 1 || bandwidth > 2) throw InputError("banded", "bandwidth must be 1 or 2");
    bands_.resize(static_cast<std::size_t>(bandwidth) + 1);
    for (int d = 0; d <= bandwidth; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        bands_[ud].assign(n > ud ? n - ud : 0, 0.0);
    }
}

SymmetricBandedMatrix SymmetricBandedMatrix::from_bands(std::vector<std::vector<double>> bands)
{
    if (bands.size() < 2 || bands.size() > 3) throw InputError("banded", "need diagonal plus 1 or 2 superdiagonals");
    const std::size_t n = bands[0].size();
    SymmetricBandedMatrix m(n, static_cast<int>(bands.size()) - 1);
    for (std::size_t d = 0; d < bands.size(); ++d) {
        const std::size_t expect = n > d ? n - d : 0;
        if (bands[d].size() != expect) throw InputError("banded", "band length mismatch");
        for (double v : bands[d]) {
            if (!std::isfinite(v)) throw DomainError("banded", "non-finite matrix entry");
        }
        m.bands_[d] = std::move(bands[d]);
    }
    return m;
}

double SymmetricBandedMatrix::at(std::size_t i, std::size_t j) const
{
    if (i > j) std::swap(i, j);
    const std::size_t d = j - i;
    if (d > static_cast<std::size_t>(bandwidth_) || j >= n_) return 0.0;
    return bands_[d][i];
}

std::vector<double> SymmetricBandedMatrix::multiply(std::span<const double> v) const
{
    if (v.size() != n_) throw InputError("banded.multiply", "vector length mismatch");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) out[i] = bands_[0][i] * v[i];
    for (std::size_t d = 1; d < bands_.size(); ++d) {
        const auto& b = bands_[d];
        for (std::size_t i = 0; i < b.size(); ++i) {
            out[i] += b[i] * v[i + d];
            out[i + d] += b[i] * v[i];
        }
    }
    return out;
}

double SymmetricBandedMatrix::norm_inf() const
{
    std::vector<double> row(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) row[i] = std::abs(bands_[0][i]);
    for (std::size_t d = 1; d < bands_.size(); ++d) {
        for (std::size_t i = 0; i < bands_[d].size(); ++i) {
            row[i] += std::abs(bands_[d][i]);
            row[i + d] += std::abs(bands_[d][i]);
        }
    }
    return *std::max_element(row.begin(), row.end());
}

std::pair<double, double> SymmetricBandedMatrix::gershgorin() const
{
    std::vector<double> radius(n_, 0.0);
    for (std::size_t d = 1; d < bands_.size(); ++d) {
        for (std::size_t i = 0; i < bands_[d].size(); ++i) {
            radius[i] += std::abs(bands_[d][i]);
            radius[i + d] += std::abs(bands_[d][i]);
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n_; ++i) {
        lo = std::min(lo, bands_[0][i] - radius[i]);
        hi = std::max(hi, bands_[0][i] + radius[i]);
    }
    return {lo, hi};
}

} // namespace gemo
