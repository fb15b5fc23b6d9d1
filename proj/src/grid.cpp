#include "gemo/grid.hpp"

#include "gemo/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gemo {

const char* space_name(Space s) { return s == Space::X ? "x" : "z"; }

Grid Grid::interior(double wall_lo, double wall_hi, std::size_t count, Space space)
{
    if (!(std::isfinite(wall_lo) && std::isfinite(wall_hi) && wall_lo < wall_hi))
        throw InputError("grid", "walls must be finite with wall_lo < wall_hi");
    if (count < 3) throw InputError("grid", "grid needs at least 3 nodes");
    const double h = (wall_hi - wall_lo) / static_cast<double>(count + 1);
    return Grid{wall_lo + h, h, count, space};
}

std::vector<double> Grid::nodes() const
{
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = node(i);
    return out;
}

void Grid::check() const
{
    if (!(std::isfinite(start) && std::isfinite(spacing) && spacing > 0.0) || count < 3)
        throw InputError("grid", "grid needs finite start, spacing > 0 and at least 3 nodes");
}

bool same_grid(const Grid& a, const Grid& b)
{
    return a.count == b.count && a.space == b.space && a.start == b.start && a.spacing == b.spacing;
}

namespace {

double sum_norm(const Grid& g, std::span<const Complex> s)
{
    double acc = 0.0;
    for (const auto& v : s) acc += std::norm(v);
    return acc * g.spacing;
}

} // namespace

WaveFunction::WaveFunction(Grid grid, std::vector<Complex> samples) : grid_(grid), samples_(std::move(samples))
{
    grid_.check();
    if (samples_.size() != grid_.count) throw InputError("wavefunction", "sample count does not match grid");
    for (const auto& v : samples_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("wavefunction", "non-finite sample");
    }
    norm_squared_ = sum_norm(grid_, samples_);
}

WaveFunction::WaveFunction(Grid grid, std::span<const double> samples)
    : WaveFunction(grid, std::vector<Complex>(samples.begin(), samples.end()))
{
}

WaveFunction WaveFunction::normalized() const
{
    if (norm_squared_ <= 0.0) throw DomainError("wavefunction", "cannot normalize the zero function");
    const double s = 1.0 / std::sqrt(norm_squared_);
    std::vector<Complex> out(samples_);
    for (auto& v : out) v *= s;
    return WaveFunction(grid_, std::move(out));
}

std::vector<double> WaveFunction::density() const
{
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](const Complex& v) { return std::norm(v); });
    return out;
}

Complex inner(const WaveFunction& a, const WaveFunction& b)
{
    if (!same_grid(a.grid(), b.grid())) throw InputError("wavefunction.inner", "grids differ");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc * a.grid().spacing;
}

Complex interpolate_cubic(const WaveFunction& psi, double at)
{
    const Grid& g = psi.grid();
    const double lo = g.wall_lo();
    const double hi = g.wall_hi();
    const double slack = 1e-12 * (hi - lo);
    if (!(at >= lo - slack && at <= hi + slack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "point " << at << " outside sampled interval [" << lo << ", " << hi << "]";
        throw RangeError("grid.interpolate", msg.str());
    }
    // Extended nodes: index 0 is wall_lo, 1..count are samples, count+1 is wall_hi.
    const auto n_ext = static_cast<long>(g.count) + 2;
    const auto value = [&](long k) -> Complex {
        if (k <= 0 || k >= n_ext - 1) return {};
        return psi[static_cast<std::size_t>(k - 1)];
    };
    const double t = (at - lo) / g.spacing;
    long k = static_cast<long>(std::floor(t));
    k = std::clamp(k, 0L, n_ext - 2);
    long first = std::clamp(k - 1, 0L, n_ext - 4);
    const double u = t - static_cast<double>(first);
    if (u == std::floor(u) && u >= 0.0 && u <= 3.0) return value(first + static_cast<long>(u));

    Complex acc{};
    for (int j = 0; j < 4; ++j) {
        double w = 1.0;
        for (int m = 0; m < 4; ++m) {
            if (m != j) w *= (u - m) / static_cast<double>(j - m);
        }
        acc += w * value(first + j);
    }
    return acc;
}

} // namespace gemo
