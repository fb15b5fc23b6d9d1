#include "gemo/observables.hpp"

#include "gemo/error.hpp"
#include "gemo/hamiltonian.hpp"
#include "gemo/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace gemo {

namespace {

constexpr double kNormSlack = 1e-6;
constexpr double kBoundSlack = 1e-8;
constexpr double kMomentTol = 1e-12;

void require_normalized(double n2, const char* stage)
{
    if (std::abs(n2 - 1.0) > kNormSlack) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "state norm " << n2 << " deviates from 1";
        throw InputError(stage, msg.str());
    }
}

double spread(double mean_sq, double mean_abs_sq) { return std::sqrt(std::max(0.0, mean_sq - mean_abs_sq)); }

double integrate(const StateFunction& psi, const std::function<double(double)>& f)
{
    quad::SimpsonOptions opt;
    opt.abs_tol = kMomentTol;
    opt.min_depth = 6;
    return quad::integrate_line(f, psi.support.lo, psi.support.hi, psi.scale, opt);
}

Deformation unbounded(const Deformation& d) { return d.with_domain({-1e300, 1e300}); }

UncertaintyReport assemble(const Deformation& d, PositionMoments x, MomentumMoments p, double mean_g, double hbar)
{
    UncertaintyReport r;
    r.x = x;
    r.p = p;
    r.product = x.delta * p.delta;
    r.generic_bound = 0.5 * hbar * std::abs(mean_g);
    if (d.kind() == DeformationKind::Quadratic) {
        const double a = d.strength();
        r.eup_bound = 0.5 * hbar * (1.0 + a * a * x.mean_sq);
    }
    r.violated = r.product < r.eup_bound.value_or(r.generic_bound) - kBoundSlack;
    return r;
}

} // namespace

PositionMoments position_moments(const WaveFunction& psi)
{
    require_normalized(psi.norm_squared(), "observables.position_moments");
    const Grid& g = psi.grid();
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = g.node(i);
        const double w = std::norm(psi[i]);
        m1 += x * w;
        m2 += x * x * w;
    }
    m1 *= g.spacing;
    m2 *= g.spacing;
    return {m1, m2, spread(m2, m1 * m1)};
}

MomentumMoments momentum_moments(const Deformation& d, const WaveFunction& psi, double hbar)
{
    require_normalized(psi.norm_squared(), "observables.momentum_moments");
    const WaveFunction ppsi = apply_momentum(d, psi, hbar);
    const Complex raw = inner(psi, ppsi);
    const Complex mean = 0.5 * (raw + std::conj(raw));
    const double mean_sq = ppsi.norm_squared();
    return {mean, raw - mean, mean_sq, spread(mean_sq, std::norm(mean))};
}

UncertaintyReport uncertainty_report(const Deformation& d, const WaveFunction& psi, double hbar)
{
    const auto x = position_moments(psi);
    const auto p = momentum_moments(d, psi, hbar);
    double mean_g = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) mean_g += d.one_plus_mu(psi.grid().node(i)) * std::norm(psi[i]);
    return assemble(d, x, p, mean_g * psi.grid().spacing, hbar);
}

PositionMoments position_moments(const StateFunction& psi)
{
    const auto density = [&](double x) {
        const double v = psi.value(x);
        return v * v;
    };
    require_normalized(integrate(psi, density), "observables.position_moments");
    const double m1 = integrate(psi, [&](double x) { return x * density(x); });
    const double m2 = integrate(psi, [&](double x) { return x * x * density(x); });
    return {m1, m2, spread(m2, m1 * m1)};
}

MomentumMoments momentum_moments(const Deformation& d, const StateFunction& psi, double hbar)
{
    const Deformation wide = unbounded(d);
    // pψ = −iħ·R with R = (1+μ)ψ′ + ½μ′ψ real for real ψ.
    const auto r = [&](double x) {
        const Triple t = wide.evaluate_triple(x);
        return (1.0 + t.mu) * psi.derivative(x) + 0.5 * t.d1 * psi.value(x);
    };
    const double overlap = integrate(psi, [&](double x) { return psi.value(x) * r(x); });
    const double mean_sq = hbar * hbar * integrate(psi, [&](double x) {
                               const double v = r(x);
                               return v * v;
                           });
    const Complex mean{0.0, -hbar * overlap};
    return {mean, {}, mean_sq, spread(mean_sq, std::norm(mean))};
}

UncertaintyReport uncertainty_report(const Deformation& d, const StateFunction& psi, double hbar)
{
    const auto x = position_moments(psi);
    const auto p = momentum_moments(d, psi, hbar);
    const Deformation wide = unbounded(d);
    const double mean_g = integrate(psi, [&](double y) {
        const double v = psi.value(y);
        return wide.one_plus_mu(y) * v * v;
    });
    return assemble(d, x, p, mean_g, hbar);
}

MinimumMomentumSpread minimum_dp_scan(const Deformation& d, int n_max, double hbar)
{
    constexpr const char* stage = "observables.minimum_dp_scan";
    if (d.kind() != DeformationKind::Quadratic) throw InputError(stage, "requires a quadratic deformation");
    if (n_max < 2) throw InputError(stage, "n_max must be at least 2");
    const double alpha = std::abs(d.strength());
    MinimumMomentumSpread out;
    for (int n = 1; n <= n_max; ++n) {
        const double dp = momentum_moments(d, box_state(n, alpha), hbar).delta;
        out.dp.push_back(dp);
        if (out.n_star == 0 || dp < out.dp_min) {
            out.n_star = n;
            out.dp_min = dp;
        }
    }
    return out;
}

} // namespace gemo
