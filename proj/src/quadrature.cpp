#include "gemo/quadrature.hpp"

#include "gemo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gemo::quad {

namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

class Integrator {
public:
    Integrator(const std::function<double(double)>& f, const SimpsonOptions& opt) : f_(f), opt_(opt) {}

    double refine(const Panel& p, double tol, int depth)
    {
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = f_(lm);
        const double frm = f_(rm);
        const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
        const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
        const double delta = left + right - p.whole;
        if (depth >= opt_.min_depth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        // Panels a few hundred ulps wide only resolve rounding noise.
        const double floor = 256.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p.a), std::abs(p.b));
        if (p.b - p.a <= floor && std::isfinite(delta)) return left + right;
        if (depth >= opt_.max_depth || !std::isfinite(delta)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "adaptive Simpson did not converge on [" << p.a << ", " << p.b << "]";
            throw ConvergenceError("quad.adaptive_simpson", msg.str());
        }
        const double half = depth >= opt_.min_depth ? 0.5 * tol : tol;
        return refine({p.a, lm, p.m, p.fa, flm, p.fm, left}, half, depth + 1) +
               refine({p.m, rm, p.b, p.fm, frm, p.fb, right}, half, depth + 1);
    }

private:
    const std::function<double(double)>& f_;
    const SimpsonOptions& opt_;
};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, const SimpsonOptions& opt)
{
    if (a == b) return 0.0;
    if (b < a) return -adaptive_simpson(f, b, a, opt);
    // During the uniform pre-split the tolerance is not halved, so it is spread
    // over the 2^min_depth panels up front.
    const double tol = opt.abs_tol / std::ldexp(1.0, opt.min_depth);
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    Integrator integ(f, opt);
    return integ.refine({a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, tol, 0);
}

double integrate_line(const std::function<double(double)>& f, double lo, double hi, double scale,
                      const SimpsonOptions& opt)
{
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return adaptive_simpson(f, lo, hi, opt);

    const double half_pi = 0.5 * std::numbers::pi;
    double centre = 0.0;
    if (!lo_inf) centre = lo;
    if (!hi_inf) centre = hi;

    const auto mapped = [&](double theta) {
        const double t = std::tan(theta);
        const double x = centre + scale * t;
        if (!std::isfinite(x)) return 0.0;
        const double v = f(x) * scale * (1.0 + t * t);
        return std::isfinite(v) ? v : 0.0;
    };
    const double th_lo = lo_inf ? -half_pi : 0.0;
    const double th_hi = hi_inf ? half_pi : 0.0;
    return adaptive_simpson(mapped, th_lo, th_hi, opt);
}

} // namespace gemo::quad
