#include "gemo/analytic.hpp"

#include "gemo/error.hpp"
#include "gemo/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gemo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRescaleSlack = 1e-9;

void require_quantum_number(int n, int lowest, const char* stage)
{
    if (n < lowest) {
        std::ostringstream msg;
        msg << "quantum number " << n << " below " << lowest;
        throw InputError(stage, msg.str());
    }
}

void require_positive(double v, const char* what, const char* stage)
{
    if (!(v > 0.0 && std::isfinite(v))) throw InputError(stage, std::string(what) + " must be positive");
}

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Rescales by the numerically computed norm, which must already be 1 to
// within kRescaleSlack.
StateFunction finalize(StateFunction raw, const char* stage)
{
    const double n2 = norm_squared(raw);
    if (std::abs(n2 - 1.0) > kRescaleSlack) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "closed-form normalization off by " << n2 - 1.0;
        throw ConvergenceError(stage, msg.str());
    }
    const double f = 1.0 / std::sqrt(n2);
    return {[v = std::move(raw.value), f](double x) { return f * v(x); },
            [d = std::move(raw.derivative), f](double x) { return f * d(x); }, raw.support, raw.scale};
}

} // namespace

WaveFunction StateFunction::sample(const Grid& grid) const
{
    std::vector<Complex> s(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) s[i] = value(grid.node(i));
    return WaveFunction(grid, std::move(s));
}

double hermite(int n, double t)
{
    require_quantum_number(n, 0, "analytic.hermite");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * t;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * t * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double norm_squared(const StateFunction& f, double tol)
{
    quad::SimpsonOptions opt;
    opt.abs_tol = tol;
    opt.min_depth = 6;
    const auto sq = [&](double x) {
        const double v = f.value(x);
        return v * v;
    };
    return quad::integrate_line(sq, f.support.lo, f.support.hi, f.scale, opt);
}

double box_energy(int n, double alpha, Units units)
{
    require_quantum_number(n, 1, "analytic.box_energy");
    return n * n * units.hbar * units.hbar * alpha * alpha / (2.0 * units.mass);
}

StateFunction box_state_z(int n, double alpha)
{
    constexpr const char* stage = "analytic.box_state_z";
    require_quantum_number(n, 1, stage);
    require_positive(alpha, "alpha", stage);
    const double amp = std::sqrt(2.0 * alpha / std::numbers::pi);
    const double edge = 0.5 * std::numbers::pi / alpha;
    const bool odd = n % 2 == 1;
    StateFunction s;
    s.value = [=](double z) {
        if (std::abs(z) > edge) return 0.0;
        const double a = n * alpha * z;
        return amp * (odd ? std::cos(a) : std::sin(a));
    };
    s.derivative = [=](double z) {
        if (std::abs(z) > edge) return 0.0;
        const double a = n * alpha * z;
        return amp * n * alpha * (odd ? -std::sin(a) : std::cos(a));
    };
    s.support = {-edge, edge};
    s.scale = 1.0 / alpha;
    return finalize(std::move(s), stage);
}

StateFunction box_state(int n, double alpha)
{
    constexpr const char* stage = "analytic.box_state";
    require_quantum_number(n, 1, stage);
    require_positive(alpha, "alpha", stage);
    const double amp = std::sqrt(2.0 * alpha / std::numbers::pi);
    const bool odd = n % 2 == 1;
    StateFunction s;
    s.value = [=](double x) {
        const double a = n * std::atan(alpha * x);
        return amp * (odd ? std::cos(a) : std::sin(a)) / std::sqrt(1.0 + alpha * alpha * x * x);
    };
    s.derivative = [=](double x) {
        const double w = 1.0 + alpha * alpha * x * x;
        const double a = n * std::atan(alpha * x);
        const double trig = odd ? std::cos(a) : std::sin(a);
        const double dtrig = odd ? -std::sin(a) : std::cos(a);
        return amp * (dtrig * n * alpha / (w * std::sqrt(w)) - trig * alpha * alpha * x / (w * std::sqrt(w)));
    };
    s.support = {-kInf, kInf};
    s.scale = 1.0 / alpha;
    return finalize(std::move(s), stage);
}

WaveFunction box_state(int n, double alpha, const Grid& grid) { return box_state(n, alpha).sample(grid); }

double half_oscillator_omega(double gamma, double v0, Units units)
{
    return std::abs(gamma) * std::sqrt(2.0 * v0 / units.mass);
}

double half_oscillator_energy(int n, double omega, Units units)
{
    require_quantum_number(n, 0, "analytic.half_oscillator_energy");
    return units.hbar * omega * (2.0 * n + 1.5);
}

StateFunction half_oscillator_state_z(int n, double omega, Units units)
{
    constexpr const char* stage = "analytic.half_oscillator_state_z";
    require_quantum_number(n, 0, stage);
    require_positive(omega, "omega", stage);
    const int q = 2 * n + 1;
    const double beta = std::sqrt(units.mass * omega / units.hbar);
    const double c = std::pow(units.mass * omega / (std::numbers::pi * units.hbar), 0.25) /
                     std::sqrt(std::ldexp(factorial(q), q - 1));
    StateFunction s;
    s.value = [=](double z) {
        if (z <= 0.0) return 0.0;
        const double xi = beta * z;
        return c * std::exp(-0.5 * xi * xi) * hermite(q, xi);
    };
    s.derivative = [=](double z) {
        if (z < 0.0) return 0.0;
        const double xi = beta * z;
        return c * beta * std::exp(-0.5 * xi * xi) * (2.0 * q * hermite(q - 1, xi) - xi * hermite(q, xi));
    };
    s.support = {0.0, kInf};
    s.scale = 1.0 / beta;
    return finalize(std::move(s), stage);
}

double half_oscillator_exponent_composed(double x, double gamma, double v0, Units units)
{
    const double s = std::sqrt(2.0 * units.mass * v0);
    const double u = std::expm1(gamma * x);
    return 0.5 * gamma * x - s * u * u / (2.0 * units.hbar * gamma);
}

double half_oscillator_exponent_closed(double x, double gamma, double v0, Units units)
{
    const double s = std::sqrt(2.0 * units.mass * v0);
    const double u = std::expm1(gamma * x);
    return -(1.0 / (2.0 * gamma)) * (s / units.hbar * u * u - gamma * gamma * x);
}

StateFunction half_oscillator_state_x(int n, double gamma, double v0, Units units)
{
    constexpr const char* stage = "analytic.half_oscillator_state_x";
    require_quantum_number(n, 0, stage);
    require_positive(gamma, "gamma", stage);
    require_positive(v0, "V0", stage);
    const int q = 2 * n + 1;
    const double s = std::sqrt(2.0 * units.mass * v0);
    const double k = std::sqrt(s / (units.hbar * gamma));
    const double c = std::pow(gamma * s / (std::numbers::pi * units.hbar), 0.25) /
                     std::sqrt(std::ldexp(factorial(q), q - 1));
    const auto exponent = [=](double x) { return half_oscillator_exponent_closed(x, gamma, v0, units); };

    StateFunction st;
    st.value = [=](double x) {
        if (x <= 0.0) return 0.0;
        const double e = exponent(x);
        if (e < -745.0) return 0.0;
        return c * std::exp(e) * hermite(q, k * std::expm1(gamma * x));
    };
    st.derivative = [=](double x) {
        if (x < 0.0) return 0.0;
        const double e = exponent(x);
        if (e < -745.0) return 0.0;
        const double g = std::exp(gamma * x);
        const double xi = k * (g - 1.0);
        const double de = -(s / units.hbar) * (g - 1.0) * g + 0.5 * gamma;
        return c * std::exp(e) * (de * hermite(q, xi) + 2.0 * q * hermite(q - 1, xi) * k * gamma * g);
    };
    st.support = {0.0, kInf};
    st.scale = std::log1p(1.0 / k) / gamma;
    return finalize(std::move(st), stage);
}

WaveFunction half_oscillator_state_x(int n, double gamma, double v0, Units units, const Grid& grid)
{
    return half_oscillator_state_x(n, gamma, v0, units).sample(grid);
}

} // namespace gemo
