#include "gemo/error.hpp"
#include "gemo/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

namespace ex = gemo::expr;
using ex::Kind;

namespace {

const std::set<std::string, std::less<>> kParams{"g", "a"};
const ex::Parameters kValues{{"g", 0.7}, {"a", -1.3}};

double eval(const ex::Ast& a, double x) { return ex::evaluate(a, {x, &kValues}); }

// Random trees over x, g, a. Arguments of functions with a restricted domain
// or fast growth are wrapped so that most draws evaluate on [-2, 2]; draws
// that still fail are rejected by the callers.
class TreeGen {
public:
    explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

    ex::Ast make(int depth)
    {
        if (depth == 0 || pick(4) == 0) return leaf();
        switch (pick(12)) {
        case 0: return ex::neg(make(depth - 1));
        case 1: return ex::add(make(depth - 1), make(depth - 1));
        case 2: return ex::sub(make(depth - 1), make(depth - 1));
        case 3:
        case 4: return ex::mul(make(depth - 1), make(depth - 1));
        case 5: return ex::div(make(depth - 1), ex::add(ex::constant(1.5), ex::pow(make(depth - 1), 2)));
        case 6: return ex::pow(make(depth - 1), static_cast<int>(pick(4)));
        case 7: return ex::call(ex::Func::Exp, ex::call(ex::Func::Sin, make(depth - 1)));
        case 8: return ex::call(pick(2) ? ex::Func::Sin : ex::Func::Cos, make(depth - 1));
        case 9: return ex::call(ex::Func::Arctan, make(depth - 1));
        case 10: {
            const auto f = pick(2) ? ex::Func::Sqrt : ex::Func::Ln;
            return ex::call(f, ex::add(ex::constant(0.5), ex::pow(make(depth - 1), 2)));
        }
        default: return ex::call(ex::Func::Tan, ex::div(make(depth - 1), ex::add(ex::constant(4.0),
                                                                                 ex::pow(make(depth - 1), 2))));
        }
    }

    double point() { return std::uniform_real_distribution<double>(-2.0, 2.0)(rng_); }

private:
    unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

    ex::Ast leaf()
    {
        switch (pick(5)) {
        case 0:
        case 1: return ex::variable();
        case 2: return ex::parameter(pick(2) ? "g" : "a");
        default: return ex::constant(std::round(std::uniform_real_distribution<double>(-3.0, 3.0)(rng_) * 4.0) / 4.0);
        }
    }

    std::mt19937_64 rng_;
};

} // namespace

TEST_CASE("parse: x^2 is a power node")
{
    const auto a = ex::parse("x^2");
    REQUIRE(a->kind == Kind::Pow);
    CHECK(a->exponent == 2);
    CHECK(a->children[0]->kind == Kind::Variable);
}

TEST_CASE("parse: exp(-g*x)-1 structure")
{
    const auto a = ex::parse("exp(-g*x)-1", {"g"});
    const auto expected = ex::sub(
        ex::call(ex::Func::Exp, ex::neg(ex::mul(ex::parameter("g"), ex::variable()))), ex::constant(1.0));
    CHECK(ex::structurally_equal(a, expected));
}

TEST_CASE("parse: unbalanced parenthesis reports offset 7")
{
    try {
        (void)ex::parse("1/(1+x");
        FAIL("expected a parse error");
    } catch (const gemo::ParseError& e) {
        CHECK(e.offset() == 7);
        CHECK(e.stage() == "expr.parse");
    }
}

TEST_CASE("parse: rejected inputs")
{
    CHECK_THROWS_AS((void)ex::parse("x^2.5"), gemo::ParseError);
    CHECK_THROWS_AS((void)ex::parse("foo(x)"), gemo::ParseError);
    CHECK_THROWS_AS((void)ex::parse("k*x"), gemo::ParseError);
    CHECK_THROWS_AS((void)ex::parse(""), gemo::ParseError);
    CHECK_THROWS_AS((void)ex::parse("x x"), gemo::ParseError);
    CHECK_THROWS_AS((void)ex::parse("2*"), gemo::ParseError);
}

TEST_CASE("parse: unary minus binds looser than power")
{
    CHECK(eval(ex::parse("-x^2"), 3.0) == -9.0);
    CHECK(eval(ex::parse("(-x)^2"), 3.0) == 9.0);
    CHECK(eval(ex::parse("2^-1"), 0.0) == 0.5);
    CHECK(eval(ex::parse("2*-x^2"), 3.0) == -18.0);
    CHECK(ex::to_string(ex::parse("-g*x", kParams)) == "-g*x");
    CHECK(ex::to_string(ex::mul(ex::neg(ex::parameter("g")), ex::variable())) == "(-g)*x");
    CHECK(ex::to_string(ex::sub(ex::variable(), ex::neg(ex::variable()))) == "x-(-x)");
    CHECK(eval(ex::parse("pi"), 0.0) == doctest::Approx(M_PI).epsilon(1e-16));
}

TEST_CASE("differentiate: worked cases")
{
    CHECK(eval(ex::differentiate(ex::parse("x^2")), 1.75) == 3.5);
    const auto d = ex::differentiate(ex::parse("exp(-g*x)", {"g"}));
    for (double x : {-1.0, 0.0, 2.5}) CHECK(eval(d, x) == doctest::Approx(-0.7 * std::exp(-0.7 * x)).epsilon(1e-15));
    const auto c = ex::differentiate(ex::constant(4.2));
    REQUIRE(c->kind == Kind::Constant);
    CHECK(c->value == 0.0);
    const auto p = ex::differentiate(ex::parameter("g"));
    REQUIRE(p->kind == Kind::Constant);
    CHECK(p->value == 0.0);
}

TEST_CASE("evaluate: worked cases")
{
    CHECK(eval(ex::parse("x^2+1"), 2.0) == 5.0);
    CHECK(eval(ex::parse("exp(x)"), 0.0) == 1.0);
    CHECK_THROWS_AS(eval(ex::parse("1/x"), 0.0), gemo::DomainError);
    CHECK_THROWS_AS(eval(ex::parse("ln(x)"), -1.0), gemo::DomainError);
    CHECK_THROWS_AS(eval(ex::parse("exp(x)"), 1000.0), gemo::DomainError);
    CHECK_THROWS_AS((void)ex::evaluate(ex::parameter("q"), {1.0, &kValues}), gemo::DomainError);
}

TEST_CASE("simplify: identities and folding")
{
    const auto s1 = ex::simplify(ex::add(ex::constant(0.0), ex::variable()));
    CHECK(s1->kind == Kind::Variable);
    const auto e = ex::call(ex::Func::Exp, ex::variable());
    CHECK(ex::structurally_equal(ex::simplify(ex::mul(ex::constant(1.0), e)), e));
    const auto six = ex::simplify(ex::mul(ex::constant(2.0), ex::constant(3.0)));
    REQUIRE(six->kind == Kind::Constant);
    CHECK(six->value == 6.0);
    CHECK(ex::simplify(ex::pow(ex::variable(), 1))->kind == Kind::Variable);
}

TEST_CASE("property: derivative matches central difference on 1000 random pairs")
{
    TreeGen gen(20240611);
    constexpr double step = 1e-5;
    int accepted = 0, attempts = 0;
    double worst = 0.0;
    while (accepted < 1000) {
        REQUIRE(++attempts < 20000);
        const auto a = gen.make(4);
        const double x = gen.point();
        double d = 0.0, fd = 0.0;
        try {
            d = eval(ex::differentiate(a), x);
            fd = (eval(a, x + step) - eval(a, x - step)) / (2.0 * step);
        } catch (const gemo::DomainError&) {
            continue;
        }
        if (std::abs(eval(a, x)) > 1e6) continue;
        ++accepted;
        const double err = std::abs(d - fd) / (1.0 + std::abs(d));
        worst = std::max(worst, err);
        if (err > 1e-6) {
            INFO("expression: " << ex::to_string(a) << " at x = " << x);
            CHECK(err <= 1e-6);
        }
    }
    MESSAGE("worst scaled derivative error " << worst << " over " << attempts << " draws");
}

TEST_CASE("property: simplify preserves values")
{
    TreeGen gen(7);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto a = gen.make(4);
        const double x = gen.point();
        double v = 0.0;
        try {
            v = eval(a, x);
        } catch (const gemo::DomainError&) {
            continue;
        }
        const double s = eval(ex::simplify(a), x);
        ++checked;
        INFO(ex::to_string(a) << " at x = " << x);
        CHECK(std::abs(s - v) <= 1e-15 * std::max(1.0, std::abs(v)));
    }
    CHECK(checked > 1000);
}

TEST_CASE("property: parse-print-parse fixpoint")
{
    TreeGen gen(99);
    for (int i = 0; i < 1000; ++i) {
        const std::string text = ex::to_string(gen.make(5));
        const auto t1 = ex::parse(text, kParams);
        const auto t2 = ex::parse(ex::to_string(t1), kParams);
        INFO(text);
        CHECK(ex::structurally_equal(t1, t2));
    }
}

TEST_CASE("referenced parameters and variable dependence")
{
    const auto a = ex::parse("a*sin(g) + 2", kParams);
    CHECK(ex::referenced_parameters(a) == std::set<std::string, std::less<>>{"a", "g"});
    CHECK_FALSE(ex::depends_on_variable(a));
    CHECK(ex::depends_on_variable(ex::parse("sqrt(x)")));
}
