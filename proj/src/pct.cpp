#include "gemo/pct.hpp"

#include "gemo/error.hpp"
#include "gemo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gemo {

namespace {

constexpr int kInitialSegments = 64;
constexpr std::size_t kMaxTable = std::size_t{1} << 18;
constexpr double kMaxVariation = 1.25;
constexpr double kTableTol = 1e-13;
constexpr double kQueryTol = 1e-12;
constexpr double kInverseTol = 1e-10;

std::string interval_text(double a, double b)
{
    std::ostringstream out;
    out.precision(17);
    out << "[" << a << ", " << b << "]";
    return out.str();
}

} // namespace

CoordinateMap::CoordinateMap(Deformation d, double x_ref, double z0) : d_(std::move(d)), x_ref_(x_ref), z0_(z0)
{
    const Interval dom = d_.domain();
    if (!dom.contains(x_ref)) throw InputError("pct.map", "x_ref outside the deformation domain");
    if (!std::isfinite(z0)) throw InputError("pct.map", "z0 must be finite");

    const auto weight = [this](double x) { return 1.0 / d_.one_plus_mu(x); };

    // Refine segments until 1/(1+μ) varies by at most kMaxVariation across each.
    std::vector<double> nodes;
    const auto refine = [&](auto&& self, double a, double b, double wa, double wb, int depth) -> void {
        const double m = 0.5 * (a + b);
        const double wm = weight(m);
        const double hi = std::max({wa, wm, wb});
        const double lo = std::min({wa, wm, wb});
        if (lo <= 0.0 || !std::isfinite(hi))
            throw InputError("pct.map", "1 + mu not positive on " + interval_text(a, b));
        if (hi <= kMaxVariation * lo || depth >= 48 || nodes.size() >= kMaxTable) {
            nodes.push_back(a);
            return;
        }
        self(self, a, m, wa, wm, depth + 1);
        self(self, m, b, wm, wb, depth + 1);
    };
    const double step = dom.width() / kInitialSegments;
    for (int i = 0; i < kInitialSegments; ++i) {
        const double a = dom.lo + i * step;
        const double b = i + 1 == kInitialSegments ? dom.hi : dom.lo + (i + 1) * step;
        refine(refine, a, b, weight(a), weight(b), 0);
    }
    nodes.push_back(dom.hi);
    if (!std::binary_search(nodes.begin(), nodes.end(), x_ref))
        nodes.insert(std::upper_bound(nodes.begin(), nodes.end(), x_ref), x_ref);
    xs_ = std::move(nodes);

    zs_.assign(xs_.size(), 0.0);
    const auto ref = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), x_ref) - xs_.begin());
    zs_[ref] = z0;
    for (std::size_t i = ref + 1; i < xs_.size(); ++i) zs_[i] = zs_[i - 1] + integrate(xs_[i - 1], xs_[i], kTableTol);
    for (std::size_t i = ref; i-- > 0;) zs_[i] = zs_[i + 1] - integrate(xs_[i], xs_[i + 1], kTableTol);
}

double CoordinateMap::integrate(double a, double b, double tol) const
{
    const auto weight = [this](double x) { return 1.0 / d_.one_plus_mu(x); };
    const double m = 0.5 * (a + b);
    const double coarse = std::abs((b - a) / 6.0 * (weight(a) + 4.0 * weight(m) + weight(b)));
    quad::SimpsonOptions opt;
    opt.abs_tol = std::max(tol, 1e-14 * coarse);
    opt.min_depth = 2;
    try {
        return quad::adaptive_simpson(weight, a, b, opt);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("pct.forward_map", e.what());
    }
}

double CoordinateMap::forward(double x) const
{
    if (x == x_ref_) return z0_;
    const Interval dom = d_.domain();
    if (!dom.contains(x)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "x = " << x << " outside domain " << interval_text(dom.lo, dom.hi);
        throw DomainError("pct.forward_map", msg.str());
    }
    if (d_.kind() == DeformationKind::Zero) return z0_ + (x - x_ref_);

    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t j = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
    if (j + 1 >= xs_.size()) j = xs_.size() - 2;
    if (x == xs_[j]) return zs_[j];
    if (x - xs_[j] <= xs_[j + 1] - x) return zs_[j] + integrate(xs_[j], x, kQueryTol);
    return zs_[j + 1] - integrate(x, xs_[j + 1], kQueryTol);
}

double CoordinateMap::inverse(double z) const
{
    const Interval img = image();
    const double slack = 1e-13 * std::max(1.0, std::max(std::abs(img.lo), std::abs(img.hi)));
    if (!(z >= img.lo - slack && z <= img.hi + slack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "z = " << z << " outside the image " << interval_text(img.lo, img.hi);
        throw RangeError("pct.inverse_map", msg.str());
    }
    z = std::clamp(z, img.lo, img.hi);
    if (z == z0_) return x_ref_;
    if (d_.kind() == DeformationKind::Zero) return x_ref_ + (z - z0_);

    auto it = std::upper_bound(zs_.begin(), zs_.end(), z);
    std::size_t j = it == zs_.begin() ? 0 : static_cast<std::size_t>(it - zs_.begin()) - 1;
    if (j + 1 >= zs_.size()) j = zs_.size() - 2;
    if (z == zs_[j]) return xs_[j];

    // Safeguarded Newton inside the bracket [a, b]; dz/dx = 1/(1+μ).
    double a = xs_[j], b = xs_[j + 1];
    double x = a + (b - a) * (z - zs_[j]) / (zs_[j + 1] - zs_[j]);
    double best_x = x;
    double best_r = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        const double r = forward(x) - z;
        if (std::abs(r) < best_r) {
            best_r = std::abs(r);
            best_x = x;
        }
        if (std::abs(r) <= 1e-14 * std::max(1.0, std::abs(z))) break;
        if (r > 0.0) b = x;
        else a = x;
        double next = x - r * d_.one_plus_mu(x);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (next == x || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
        x = next;
    }
    if (best_r > kInverseTol)
        throw ConvergenceError("pct.inverse_map", "Newton/bisection did not reach tolerance inside " + interval_text(xs_[j], xs_[j + 1]));
    return best_x;
}

WaveFunction pull_back_wavefunction(const CoordinateMap& map, const WaveFunction& chi, const Grid& x_grid)
{
    if (chi.grid().space != Space::Z) throw InputError("pct.pull_back", "source wavefunction must live on a z-grid");
    x_grid.check();
    const Grid& zg = chi.grid();
    std::vector<Complex> out(x_grid.count);
    for (std::size_t i = 0; i < x_grid.count; ++i) {
        const double x = x_grid.node(i);
        const double z = map.forward(x);
        if (z < zg.wall_lo() - 1e-12 * zg.spacing || z > zg.wall_hi() + 1e-12 * zg.spacing) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "x = " << x << " maps to z = " << z << " outside the z-grid";
            throw RangeError("pct.pull_back", msg.str());
        }
        out[i] = interpolate_cubic(chi, std::clamp(z, zg.wall_lo(), zg.wall_hi())) / std::sqrt(map.deformation().one_plus_mu(x));
    }
    Grid g = x_grid;
    g.space = Space::X;
    return WaveFunction(g, std::move(out));
}

} // namespace gemo
