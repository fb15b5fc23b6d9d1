#include "gemo/analytic.hpp"
#include "gemo/eigensolver.hpp"
#include "gemo/error.hpp"
#include "gemo/hamiltonian.hpp"
#include "gemo/pct.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using gemo::Complex;
using gemo::Deformation;
using gemo::Grid;
using gemo::Space;
using gemo::WaveFunction;

namespace {

const gemo::Potential kFree = [](double) { return 0.0; };

std::vector<double> lowest(const gemo::SymmetricBandedMatrix& m, std::size_t k, double h)
{
    std::vector<double> out;
    for (const auto& p : gemo::lowest_eigenpairs(m, k, h)) out.push_back(p.eigenvalue);
    return out;
}

WaveFunction gaussian(const Grid& g, double center, double sigma, double k = 0.0)
{
    std::vector<Complex> v(g.count);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double t = (g.node(i) - center) / sigma;
        v[i] = std::exp(-0.5 * t * t) * std::polar(1.0, k * g.node(i));
    }
    return WaveFunction(g, std::move(v));
}

double dot(std::span<const double> a, std::span<const double> b)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(s);
}

} // namespace

TEST_CASE("z-space stencil for N = 3, h = 1")
{
    const auto h = gemo::build_z_hamiltonian(Grid::interior(0.0, 4.0, 3, Space::Z), kFree);
    REQUIRE(h.bandwidth() == 1);
    for (double d : h.band(0)) CHECK(d == 1.0);
    for (double e : h.band(1)) CHECK(e == -0.5);
}

TEST_CASE("z-space limits: box and half oscillator")
{
    const Grid box = Grid::interior(-std::numbers::pi / 2.0, std::numbers::pi / 2.0, 2000, Space::Z);
    CHECK(lowest(gemo::build_z_hamiltonian(box, kFree), 1, box.spacing)[0] == doctest::Approx(0.5).epsilon(1e-5));
    const Grid half = Grid::interior(0.0, 12.0, 4000, Space::Z);
    const auto e = lowest(gemo::build_z_hamiltonian(half, [](double z) { return 0.5 * z * z; }), 1, half.spacing);
    CHECK(e[0] == doctest::Approx(1.5).epsilon(1e-5));
}

TEST_CASE("zero deformation: x-space spectrum matches the z-space box")
{
    for (auto stencil : {gemo::Stencil::SecondOrder, gemo::Stencil::FourthOrder}) {
        const Grid gx = Grid::interior(0.0, 1.0, 400, Space::X);
        Grid gz = gx;
        gz.space = Space::Z;
        const auto ex = lowest(gemo::build_x_hamiltonian(gx, Deformation::zero(), kFree, {}, stencil), 4, gx.spacing);
        const auto ez = lowest(gemo::build_z_hamiltonian(gz, kFree), 4, gz.spacing);
        for (int n = 0; n < 4; ++n) {
            const double exact = 0.5 * std::pow((n + 1) * std::numbers::pi, 2);
            CHECK(std::abs(ex[n] - ez[n]) / exact <= 10.0 * std::pow((n + 1) * std::numbers::pi * gx.spacing, 2));
        }
    }
    const Grid g = Grid::interior(0.0, 1.0, 5, Space::X);
    const auto second = gemo::build_x_hamiltonian(g, Deformation::zero(), kFree, {}, gemo::Stencil::SecondOrder);
    const auto z = gemo::build_z_hamiltonian(Grid::interior(0.0, 1.0, 5, Space::Z), kFree);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(second.at(i, j) == doctest::Approx(z.at(i, j)).epsilon(1e-14));
}

TEST_CASE("x-space and z-space builds agree for the half oscillator")
{
    const auto d = Deformation::exponential(1.0);
    const gemo::CoordinateMap map(d);
    const auto v = [](double x) {
        const double w = -std::expm1(x);
        return w * w;
    };
    const double xmax = 2.5;
    const Grid gx = Grid::interior(0.0, xmax, 1024, Space::X);
    const Grid gz = Grid::interior(0.0, map.forward(xmax), 1024, Space::Z);
    const auto ex = lowest(gemo::build_x_hamiltonian(gx, d, v), 3, gx.spacing);
    const auto ez = lowest(gemo::build_z_hamiltonian(gz, [&](double z) { return v(map.inverse(z)); }), 3, gz.spacing);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(ex[n] - ez[n]) / ez[n] <= 5e-3);
}

TEST_CASE("expression potential and input checks")
{
    const auto d = Deformation::quadratic(1.0);
    const Grid g = Grid::interior(-5.0, 5.0, 200, Space::X);
    const auto a = gemo::build_x_hamiltonian(g, d, gemo::expr::parse("x^2"), {});
    const auto b = gemo::build_x_hamiltonian(g, d, [](double x) { return x * x; });
    for (std::size_t i = 0; i < g.count; ++i) CHECK(a.at(i, i) == b.at(i, i));

    CHECK_THROWS_AS((void)gemo::build_x_hamiltonian(g, d, [p = g.node(7)](double x) { return 1.0 / (x - p); }),
                    gemo::DomainError);
    CHECK_THROWS_AS((void)gemo::build_x_hamiltonian(g, Deformation::from_text("sin(x)", {}, {-6.0, 6.0}), kFree),
                    gemo::InputError);
    Grid wrong = g;
    wrong.space = Space::Z;
    CHECK_THROWS_AS((void)gemo::build_x_hamiltonian(wrong, d, kFree), gemo::InputError);
}

TEST_CASE("property: quadrature-weighted Hermiticity on random vectors")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    const Grid g = Grid::interior(0.0, 2.5, 777, Space::X);
    const auto h = gemo::build_x_hamiltonian(g, Deformation::exponential(1.0), [](double x) { return x; });
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> u(g.count), v(g.count);
        for (auto& s : u) s = normal(rng);
        for (auto& s : v) s = normal(rng);
        const double lhs = g.spacing * dot(u, h.multiply(v));
        const double rhs = g.spacing * dot(h.multiply(u), v);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(std::abs(lhs), std::abs(rhs)));
    }
}

TEST_CASE("plane wave under zero deformation")
{
    const double k = 3.0;
    const Grid g = Grid::interior(-5.0, 5.0, 1000, Space::X);
    const auto psi = gaussian(g, 0.0, 1e9, k);
    const auto p = gemo::apply_momentum(Deformation::zero(), psi);
    for (std::size_t i = 1; i + 1 < g.count; ++i) {
        const Complex ratio = p[i] / psi[i];
        CHECK(std::abs(ratio - k) <= k * k * k * g.spacing * g.spacing / 6.0 * 1.01);
    }
}

TEST_CASE("real states have zero mean momentum to O(h^2)")
{
    const auto d = Deformation::quadratic(1.0);
    double prev = 0.0;
    for (std::size_t n : {1001u, 2001u, 4001u}) {
        const Grid g = Grid::interior(-10.0, 10.0, n, Space::X);
        const auto psi = gaussian(g, 0.7, 0.9).normalized();
        const Complex mean = gemo::inner(psi, gemo::apply_momentum(d, psi));
        CHECK(std::abs(mean) <= 1e-4);
        if (prev > 0.0) CHECK(prev / std::abs(mean) == doctest::Approx(4.0).epsilon(0.1));
        prev = std::abs(mean);
    }
}

TEST_CASE("commutator residual: worked deformations")
{
    const auto residual = [](const Deformation& d, double lo, double hi, double c, double s, std::size_t n) {
        const Grid g = Grid::interior(lo, hi, n, Space::X);
        return gemo::commutator_residual(d, gaussian(g, c, s));
    };
    for (const auto& d : {Deformation::zero(), Deformation::quadratic(1.0)}) {
        const double coarse = residual(d, -10.0, 10.0, 0.0, 1.0, 1023);
        const double fine = residual(d, -10.0, 10.0, 0.0, 1.0, 2047);
        INFO(d.describe());
        CHECK(coarse / fine >= 3.5);
        CHECK(coarse / fine <= 4.5);
    }
    CHECK(residual(Deformation::exponential(1.0), 0.5, 4.0, 2.25, 0.35, 4096) <= 1e-6);
}

TEST_CASE("momentum eigenstates of the quadratic deformation")
{
    const double alpha = 1.0;
    const Grid g = Grid::interior(-3.0, 3.0, 8192, Space::X);
    for (int n = 1; n <= 4; ++n) {
        std::vector<Complex> v(g.count);
        for (std::size_t i = 0; i < g.count; ++i) {
            const double x = g.node(i);
            v[i] = std::polar(1.0 / std::sqrt(1.0 + alpha * alpha * x * x), n * std::atan(alpha * x));
        }
        const WaveFunction psi(g, std::move(v));
        const auto p = gemo::apply_momentum(Deformation::quadratic(alpha), psi);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.count; ++i) worst = std::max(worst, std::abs(p[i] - n * alpha * psi[i]));
        CHECK(worst <= 1e-5);
    }
}

TEST_CASE("property: momentum is anti-self-adjoint up to i, with O(h^2) defect")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.5, 1.2), wave(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double cu = centre(rng), su = width(rng), ku = wave(rng);
        const double cv = centre(rng), sv = width(rng), kv = wave(rng);
        double prev = 0.0;
        for (const auto& d : {Deformation::quadratic(0.8), Deformation::exponential(0.6)}) {
            prev = 0.0;
            for (std::size_t n : {1001u, 2001u}) {
                const Grid g = Grid::interior(-12.0, 12.0, n, Space::X);
                const auto u = gaussian(g, cu, su, ku), v = gaussian(g, cv, sv, kv);
                const Complex defect = gemo::inner(u, gemo::apply_momentum(d, v)) -
                                       gemo::inner(gemo::apply_momentum(d, u), v);
                if (prev > 0.0) {
                    INFO(d.describe());
                    CHECK(prev / std::abs(defect) >= 3.5);
                }
                prev = std::abs(defect);
            }
        }
    }
}
