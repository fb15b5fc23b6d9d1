#include "gemo/deform.hpp"

#include "gemo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gemo {

namespace {

void require_nonzero(double v, const char* what)
{
    if (v == 0.0 || !std::isfinite(v))
        throw InputError("deform.make_builtin", std::string(what) + " must be finite and nonzero");
}

void require_domain(const Interval& d)
{
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi))
        throw InputError("deform", "domain must be a finite interval with lo < hi");
}

} // namespace

Deformation Deformation::zero(Interval domain)
{
    require_domain(domain);
    Deformation d;
    d.kind_ = DeformationKind::Zero;
    d.domain_ = domain;
    d.mu_ = expr::constant(0.0);
    d.mu1_ = expr::differentiate(d.mu_);
    d.mu2_ = expr::differentiate(d.mu1_);
    return d;
}

Deformation Deformation::quadratic(double alpha, Interval domain)
{
    require_nonzero(alpha, "alpha");
    Deformation d = from_expression(expr::parse("alpha^2*x^2", {"alpha"}), {{"alpha", alpha}}, domain);
    d.kind_ = DeformationKind::Quadratic;
    d.strength_ = alpha;
    return d;
}

Deformation Deformation::exponential(double gamma)
{
    require_nonzero(gamma, "gamma");
    const double reach = 20.0 / std::abs(gamma);
    return exponential(gamma, {-reach, reach});
}

Deformation Deformation::exponential(double gamma, Interval domain)
{
    require_nonzero(gamma, "gamma");
    Deformation d = from_expression(expr::parse("exp(-gamma*x)-1", {"gamma"}), {{"gamma", gamma}}, domain);
    d.kind_ = DeformationKind::Exponential;
    d.strength_ = gamma;
    return d;
}

Deformation Deformation::from_expression(const expr::Ast& mu, expr::Parameters params, Interval domain)
{
    require_domain(domain);
    for (const auto& name : expr::referenced_parameters(mu)) {
        if (!params.contains(name)) throw InputError("deform.from_expression", "undeclared parameter '" + name + "'");
    }
    Deformation d;
    d.kind_ = DeformationKind::Expression;
    d.domain_ = domain;
    d.params_ = std::move(params);
    d.mu_ = mu;
    d.mu1_ = expr::differentiate(mu);
    d.mu2_ = expr::differentiate(d.mu1_);
    return d;
}

Deformation Deformation::from_text(std::string_view mu, expr::Parameters params, Interval domain)
{
    std::set<std::string, std::less<>> names;
    for (const auto& [k, v] : params) names.insert(k);
    return from_expression(expr::parse(mu, names), std::move(params), domain);
}

Deformation Deformation::with_domain(Interval domain) const
{
    require_domain(domain);
    Deformation d = *this;
    d.domain_ = domain;
    return d;
}

void Deformation::check_in_domain(double x) const
{
    // Grid end points computed as lo + i*h may overshoot by a few ulps.
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(domain_.lo), std::abs(domain_.hi)));
    if (!(x >= domain_.lo - slack && x <= domain_.hi + slack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "x = " << x << " outside domain [" << domain_.lo << ", " << domain_.hi << "]";
        throw DomainError("deform.evaluate_triple", msg.str());
    }
}

Triple Deformation::evaluate_triple(double x) const
{
    check_in_domain(x);
    Triple t;
    switch (kind_) {
    case DeformationKind::Zero: return t;
    case DeformationKind::Quadratic: {
        const double a2 = strength_ * strength_;
        t = {a2 * x * x, 2.0 * a2 * x, 2.0 * a2};
        break;
    }
    case DeformationKind::Exponential: {
        const double e = std::exp(-strength_ * x);
        t = {e - 1.0, -strength_ * e, strength_ * strength_ * e};
        break;
    }
    case DeformationKind::Expression: return evaluate_triple_symbolic(x);
    }
    if (!(std::isfinite(t.mu) && std::isfinite(t.d1) && std::isfinite(t.d2)))
        throw DomainError("deform.evaluate_triple", "non-finite deformation value");
    return t;
}

double Deformation::one_plus_mu(double x) const
{
    check_in_domain(x);
    switch (kind_) {
    case DeformationKind::Zero: return 1.0;
    case DeformationKind::Quadratic: return 1.0 + strength_ * strength_ * x * x;
    case DeformationKind::Exponential: {
        const double e = std::exp(-strength_ * x);
        if (!std::isfinite(e)) throw DomainError("deform.evaluate_triple", "non-finite deformation value");
        return e;
    }
    case DeformationKind::Expression: break;
    }
    return 1.0 + expr::evaluate(mu_, {x, &params_});
}

Triple Deformation::evaluate_triple_symbolic(double x) const
{
    check_in_domain(x);
    const expr::Bindings b{x, &params_};
    return {expr::evaluate(mu_, b), expr::evaluate(mu1_, b), expr::evaluate(mu2_, b)};
}

std::string Deformation::describe() const
{
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
    case DeformationKind::Zero: out << "zero"; break;
    case DeformationKind::Quadratic: out << "quadratic(alpha=" << strength_ << ")"; break;
    case DeformationKind::Exponential: out << "exponential(gamma=" << strength_ << ")"; break;
    case DeformationKind::Expression: out << "expression(" << expr::to_string(mu_) << ")"; break;
    }
    return out.str();
}

ValidationReport validate(const Deformation& d, Interval range, int samples)
{
    if (samples < 2) throw InputError("deform.validate", "samples must be >= 2");
    ValidationReport r;
    r.min_one_plus_mu = std::numeric_limits<double>::infinity();
    const double h = range.width() / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        const double x = i + 1 == samples ? range.hi : range.lo + i * h;
        const double g = d.one_plus_mu(x);
        if (g < r.min_one_plus_mu) {
            r.min_one_plus_mu = g;
            r.argmin = x;
        }
    }
    // A zero of 1 + μ between two samples would be missed, so polish the
    // sampled minimum by golden-section search over its two neighbour cells.
    const double lo = std::max(range.lo, r.argmin - h), hi = std::min(range.hi, r.argmin + h);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
         ++it) {
        const double c = b - ratio * (b - a), e = a + ratio * (b - a);
        if (d.one_plus_mu(c) < d.one_plus_mu(e)) b = e;
        else a = c;
    }
    const double x = 0.5 * (a + b);
    if (const double g = d.one_plus_mu(x); g < r.min_one_plus_mu) {
        r.min_one_plus_mu = g;
        r.argmin = x;
    }
    r.valid = r.min_one_plus_mu > kPositivityFloor;
    return r;
}

ValidationReport validate(const Deformation& d, int samples) { return validate(d, d.domain(), samples); }

} // namespace gemo
