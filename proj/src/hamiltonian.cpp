#include "gemo/hamiltonian.hpp"

#include "gemo/error.hpp"

#include <cmath>
#include <sstream>

namespace gemo {

namespace {

void check_units(const Units& u, const char* stage)
{
    if (!(u.mass > 0.0 && std::isfinite(u.mass))) throw InputError(stage, "mass must be positive");
    if (!(u.hbar > 0.0 && std::isfinite(u.hbar))) throw InputError(stage, "hbar must be positive");
}

std::vector<double> sample_potential(const Grid& grid, const Potential& v, const char* stage)
{
    std::vector<double> out(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.node(i);
        double value = 0.0;
        try {
            value = v(x);
        } catch (const Error& e) {
            throw DomainError(stage, std::string("potential evaluation failed: ") + e.what());
        }
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "potential not finite at node " << x;
            throw DomainError(stage, msg.str());
        }
        out[i] = value;
    }
    return out;
}

} // namespace

Potential potential_from_ast(expr::Ast v, expr::Parameters params)
{
    return [v = std::move(v), params = std::move(params)](double x) { return expr::evaluate(v, {x, &params}); };
}

SymmetricBandedMatrix build_z_hamiltonian(const Grid& grid, const Potential& v, Units units)
{
    constexpr const char* stage = "operator.build_z_hamiltonian";
    grid.check();
    check_units(units, stage);
    const std::size_t n = grid.count;
    const double kinetic = units.hbar * units.hbar / (units.mass * grid.spacing * grid.spacing);
    const auto pot = sample_potential(grid, v, stage);

    SymmetricBandedMatrix h(n, 1);
    auto diag = h.band(0);
    auto off = h.band(1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = kinetic + pot[i];
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = -0.5 * kinetic;
    return h;
}

SymmetricBandedMatrix build_x_hamiltonian(const Grid& grid, const Deformation& d, const Potential& v, Units units,
                                          Stencil stencil)
{
    constexpr const char* stage = "operator.build_x_hamiltonian";
    grid.check();
    check_units(units, stage);
    if (grid.space != Space::X) throw InputError(stage, "grid must be an x-space grid");
    const std::size_t n = grid.count;
    const double h = grid.spacing;

    const auto report = validate(d, {grid.wall_lo(), grid.wall_hi()}, static_cast<int>(n) + 2);
    if (!report.valid) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "deformation validation failed: min(1+mu) = " << report.min_one_plus_mu << " at x = " << report.argmin;
        throw InputError(stage, msg.str());
    }

    // g at extended nodes (index 0 = left wall, n+1 = right wall) and at the
    // n+1 cell midpoints between consecutive extended nodes.
    std::vector<double> g_node(n + 2), g_mid(n + 1);
    for (std::size_t k = 0; k < n + 2; ++k) {
        const double x = k == 0 ? grid.wall_lo() : (k == n + 1 ? grid.wall_hi() : grid.node(k - 1));
        g_node[k] = d.one_plus_mu(x);
    }
    for (std::size_t k = 0; k < n + 1; ++k) g_mid[k] = d.one_plus_mu(grid.wall_lo() + (static_cast<double>(k) + 0.5) * h);
    const auto pot = sample_potential(grid, v, stage);

    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> k0(n), k1(n - 1, 0.0), k2(n >= 2 ? n - 2 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) k0[i] = (g_mid[i] + g_mid[i + 1]) * inv_h2;
    for (std::size_t i = 0; i + 1 < n; ++i) k1[i] = -g_mid[i + 1] * inv_h2;

    if (stencil == Stencil::FourthOrder) {
        // Wide term A·G·Aᵀ; the walls act as odd-reflection points.
        std::vector<double> w0(n), w2(k2.size());
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i == 0 ? 2.0 * g_node[0] : (i >= 1 ? g_node[i] : 0.0);
            const double right = i + 1 == n ? 2.0 * g_node[n + 1] : g_node[i + 2];
            w0[i] = 0.25 * (left + right) * inv_h2;
        }
        // Row 0's left neighbour and row n-1's right neighbour are the walls
        // themselves; the interior rows use g at ext nodes i and i+2.
        for (std::size_t i = 0; i < k2.size(); ++i) w2[i] = -0.25 * g_node[i + 2] * inv_h2;
        for (std::size_t i = 0; i < n; ++i) k0[i] = (4.0 * k0[i] - w0[i]) / 3.0;
        for (std::size_t i = 0; i + 1 < n; ++i) k1[i] = 4.0 * k1[i] / 3.0;
        for (std::size_t i = 0; i < k2.size(); ++i) k2[i] = -w2[i] / 3.0;
    }

    const double c = 0.5 * units.hbar * units.hbar / units.mass;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::sqrt(g_node[i + 1]);

    const int bw = stencil == Stencil::FourthOrder ? 2 : 1;
    SymmetricBandedMatrix hm(n, bw);
    auto b0 = hm.band(0);
    auto b1 = hm.band(1);
    for (std::size_t i = 0; i < n; ++i) b0[i] = c * s[i] * s[i] * k0[i] + pot[i];
    for (std::size_t i = 0; i + 1 < n; ++i) b1[i] = c * s[i] * s[i + 1] * k1[i];
    if (bw == 2) {
        auto b2 = hm.band(2);
        for (std::size_t i = 0; i + 2 < n; ++i) b2[i] = c * s[i] * s[i + 2] * k2[i];
    }
    return hm;
}

SymmetricBandedMatrix build_x_hamiltonian(const Grid& grid, const Deformation& d, const expr::Ast& v,
                                          const expr::Parameters& params, Units units, Stencil stencil)
{
    return build_x_hamiltonian(grid, d, potential_from_ast(v, params), units, stencil);
}

WaveFunction apply_momentum(const Deformation& d, const WaveFunction& psi, double hbar)
{
    constexpr const char* stage = "operator.apply_momentum";
    const Grid& g = psi.grid();
    if (g.space != Space::X) throw InputError(stage, "momentum acts on x-space wavefunctions");
    const std::size_t n = g.count;
    const double inv2h = 0.5 / g.spacing;
    const Complex minus_i_hbar{0.0, -hbar};

    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex deriv;
        if (i == 0) deriv = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) * inv2h;
        else if (i + 1 == n) deriv = (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) * inv2h;
        else deriv = (psi[i + 1] - psi[i - 1]) * inv2h;

        Triple t;
        try {
            t = d.evaluate_triple(g.node(i));
        } catch (const DomainError& e) {
            throw DomainError(stage, std::string("grid exceeds deformation domain: ") + e.what());
        }
        out[i] = minus_i_hbar * ((1.0 + t.mu) * deriv + 0.5 * t.d1 * psi[i]);
    }
    return WaveFunction(g, std::move(out));
}

double commutator_residual(const Deformation& d, const WaveFunction& f, double hbar)
{
    const Grid& g = f.grid();
    std::vector<Complex> xf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) xf[i] = g.node(i) * f[i];
    const WaveFunction pf = apply_momentum(d, f, hbar);
    const WaveFunction pxf = apply_momentum(d, WaveFunction(g, std::move(xf)), hbar);

    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        const Complex expected = Complex{0.0, hbar} * d.one_plus_mu(g.node(i)) * f[i];
        const Complex got = g.node(i) * pf[i] - pxf[i];
        worst = std::max(worst, std::abs(got - expected));
    }
    return worst;
}

} // namespace gemo
