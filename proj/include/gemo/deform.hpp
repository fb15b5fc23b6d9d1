#pragma once

#include "gemo/expr.hpp"

#include <string>

namespace gemo {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

/// μ(x) together with μ′ and μ″.
struct Triple {
    double mu = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

enum class DeformationKind { Zero, Quadratic, Exponential, Expression };

/// Positivity floor for 1 + μ on the working domain.
inline constexpr double kPositivityFloor = 1e-12;

/// Deformation function μ(x) of the commutator [x, p] = iħ(1 + μ(x)).
///
/// The derivative trees are always produced by symbolic differentiation of
/// `mu()`; built-in kinds additionally evaluate through closed forms.
class Deformation {
public:
    /// Zero deformation: μ ≡ 0.
    [[nodiscard]] static Deformation zero(Interval domain = {-1e6, 1e6});
    /// μ = α²x². α must be nonzero.
    [[nodiscard]] static Deformation quadratic(double alpha, Interval domain = {-1e6, 1e6});
    /// μ = e^{−γx} − 1. γ must be nonzero. The default domain keeps 1+μ above
    /// the positivity floor by a wide margin.
    [[nodiscard]] static Deformation exponential(double gamma);
    [[nodiscard]] static Deformation exponential(double gamma, Interval domain);

    /// General μ from an expression in `x` and `params`.
    [[nodiscard]] static Deformation from_expression(const expr::Ast& mu, expr::Parameters params, Interval domain);
    [[nodiscard]] static Deformation from_text(std::string_view mu, expr::Parameters params, Interval domain);

    [[nodiscard]] DeformationKind kind() const { return kind_; }
    /// α for Quadratic, γ for Exponential, 0 otherwise.
    [[nodiscard]] double strength() const { return strength_; }
    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] const expr::Parameters& parameters() const { return params_; }
    [[nodiscard]] const expr::Ast& mu() const { return mu_; }
    [[nodiscard]] const expr::Ast& mu1() const { return mu1_; }
    [[nodiscard]] const expr::Ast& mu2() const { return mu2_; }

    /// Same deformation restricted/extended to another domain.
    [[nodiscard]] Deformation with_domain(Interval domain) const;

    /// (μ, μ′, μ″) at x. Throws DomainError outside the domain or on a
    /// non-finite value.
    [[nodiscard]] Triple evaluate_triple(double x) const;
    /// 1 + μ(x), same checks as evaluate_triple.
    [[nodiscard]] double one_plus_mu(double x) const;
    /// (μ, μ′, μ″) through the expression trees, bypassing closed forms.
    [[nodiscard]] Triple evaluate_triple_symbolic(double x) const;

    [[nodiscard]] std::string describe() const;

private:
    Deformation() = default;
    void check_in_domain(double x) const;

    DeformationKind kind_ = DeformationKind::Zero;
    double strength_ = 0.0;
    Interval domain_;
    expr::Parameters params_;
    expr::Ast mu_, mu1_, mu2_;
};

struct ValidationReport {
    double min_one_plus_mu = 0.0;
    double argmin = 0.0;
    bool valid = false;
};

/// Minimum of 1 + μ over `samples` uniform points of [lo, hi] (end points
/// included), refined by a local search around the smallest sample. Valid iff
/// the minimum exceeds kPositivityFloor.
[[nodiscard]] ValidationReport validate(const Deformation& d, Interval range, int samples);
/// Same, over the deformation's declared domain.
[[nodiscard]] ValidationReport validate(const Deformation& d, int samples);

} // namespace gemo
