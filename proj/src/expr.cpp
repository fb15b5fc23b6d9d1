#include "gemo/expr.hpp"

#include "gemo/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace gemo::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"exp", Func::Exp},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"arctan", Func::Arctan},
    {"sqrt", Func::Sqrt},
    {"ln", Func::Ln},
}};

std::optional<Func> lookup_function(std::string_view name)
{
    for (const auto& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

Ast make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Ast binary(Kind k, Ast a, Ast b)
{
    Node n;
    n.kind = k;
    n.children = {std::move(a), std::move(b)};
    return make(std::move(n));
}

bool is_constant(const Ast& a, double v) { return a->kind == Kind::Constant && a->value == v; }

// ---------------------------------------------------------------------------
// Parser

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
    Parser(std::string_view text, const std::set<std::string, std::less<>>& params)
        : text_(text), params_(params) {}

    Ast run()
    {
        for (std::size_t i = 0; i < text_.size(); ++i) {
            const auto c = static_cast<unsigned char>(text_[i]);
            if (c >= 0x80) fail(i, "non-ASCII character");
        }
        skip_ws();
        if (pos_ == text_.size()) fail(pos_, "empty expression");
        Ast result = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return result;
    }

private:
    [[noreturn]] void fail(std::size_t at, const std::string& msg) const { throw ParseError(at + 1, msg); }

    void skip_ws()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ == text_.size()) fail(pos_, std::string("expected '") + c + "' before end of input");
            fail(pos_, std::string("expected '") + c + "'");
        }
    }

    Ast parse_expr()
    {
        Ast lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = add(lhs, parse_term());
            else if (accept('-')) lhs = sub(lhs, parse_term());
            else return lhs;
        }
    }

    // A leading minus negates the whole term: -g*x == -(g*x).
    Ast parse_term()
    {
        if (accept('-')) return neg(parse_term());
        Ast lhs = parse_factor();
        for (;;) {
            if (accept('*')) lhs = mul(lhs, parse_factor());
            else if (accept('/')) lhs = div(lhs, parse_factor());
            else return lhs;
        }
    }

    // After '*' or '/' a minus negates one factor; it still binds looser
    // than '^': 2*-x^2 == 2*(-(x^2)).
    Ast parse_factor()
    {
        if (accept('-')) return neg(parse_factor());
        return parse_power();
    }

    Ast parse_power()
    {
        Ast base = parse_base();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ == digits) fail(pos_, "exponent must be an integer constant");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            fail(pos_, "exponent must be an integer constant");
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) fail(start, "exponent out of range");
        return pow(std::move(base), negative ? -value : value);
    }

    Ast parse_base()
    {
        skip_ws();
        if (pos_ == text_.size()) fail(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Ast inner = parse_expr();
            expect(')');
            return inner;
        }
        if (is_digit(c) || c == '.') return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        fail(pos_, std::string("unexpected '") + c + "'");
    }

    Ast parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                pos_ = look;
                while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) fail(start, "malformed number");
        if (!std::isfinite(value)) fail(start, "number out of range");
        return constant(value);
    }

    Ast parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_ident_start(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            const auto f = lookup_function(name);
            if (!f) fail(start, "unknown function '" + std::string(name) + "'");
            ++pos_;
            Ast arg = parse_expr();
            expect(')');
            return call(*f, std::move(arg));
        }
        if (name == "x") return variable();
        if (name == "pi") return constant(std::numbers::pi);
        if (params_.contains(name)) return parameter(std::string(name));
        if (lookup_function(name)) fail(start, "function '" + std::string(name) + "' requires an argument");
        fail(start, "unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    const std::set<std::string, std::less<>>& params_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

double checked(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError("expr.evaluate", std::string("non-finite result in ") + what);
    return v;
}

double apply(Func f, double a)
{
    switch (f) {
    case Func::Exp: return checked(std::exp(a), "exp");
    case Func::Sin: return checked(std::sin(a), "sin");
    case Func::Cos: return checked(std::cos(a), "cos");
    case Func::Tan: return checked(std::tan(a), "tan");
    case Func::Arctan: return checked(std::atan(a), "arctan");
    case Func::Sqrt:
        if (a < 0.0) throw DomainError("expr.evaluate", "sqrt of negative argument");
        return std::sqrt(a);
    case Func::Ln:
        if (a <= 0.0) throw DomainError("expr.evaluate", "ln of non-positive argument");
        return checked(std::log(a), "ln");
    }
    throw std::logic_error("unhandled function");
}

double eval(const Node& n, const Bindings& b)
{
    switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::Variable: return checked(b.x, "variable binding");
    case Kind::Parameter: {
        if (b.parameters == nullptr) throw DomainError("expr.evaluate", "unbound parameter '" + n.name + "'");
        const auto it = b.parameters->find(n.name);
        if (it == b.parameters->end()) throw DomainError("expr.evaluate", "unbound parameter '" + n.name + "'");
        return checked(it->second, "parameter binding");
    }
    case Kind::Neg: return -eval(*n.children[0], b);
    case Kind::Add: return checked(eval(*n.children[0], b) + eval(*n.children[1], b), "addition");
    case Kind::Sub: return checked(eval(*n.children[0], b) - eval(*n.children[1], b), "subtraction");
    case Kind::Mul: return checked(eval(*n.children[0], b) * eval(*n.children[1], b), "multiplication");
    case Kind::Div: {
        const double num = eval(*n.children[0], b);
        const double den = eval(*n.children[1], b);
        if (den == 0.0) throw DomainError("expr.evaluate", "division by zero");
        return checked(num / den, "division");
    }
    case Kind::Pow: {
        const double base = eval(*n.children[0], b);
        if (base == 0.0 && n.exponent < 0) throw DomainError("expr.evaluate", "division by zero in negative power");
        return checked(std::pow(base, n.exponent), "power");
    }
    case Kind::Call: return apply(n.func, eval(*n.children[0], b));
    }
    throw std::logic_error("unhandled node kind");
}

// ---------------------------------------------------------------------------
// Printing

int precedence(const Node& n)
{
    switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 2;
    case Kind::Pow: return 4;
    case Kind::Constant: return std::signbit(n.value) ? 2 : 5;
    default: return 5;
    }
}

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

bool leading_minus(const Node& n)
{
    return n.kind == Kind::Neg || (n.kind == Kind::Constant && std::signbit(n.value));
}

// `boxed` forces parentheses around a leading minus, which would otherwise
// swallow the rest of the term when parsed back.
void print(const Node& n, int min_prec, std::string& out, bool boxed = false)
{
    const bool parens = precedence(n) < min_prec || (boxed && leading_minus(n));
    if (parens) out += '(';
    switch (n.kind) {
    case Kind::Constant: out += format_number(n.value); break;
    case Kind::Variable: out += 'x'; break;
    case Kind::Parameter: out += n.name; break;
    case Kind::Neg:
        out += '-';
        print(*n.children[0], 2, out);
        break;
    case Kind::Add:
    case Kind::Sub:
        print(*n.children[0], 1, out);
        out += n.kind == Kind::Add ? '+' : '-';
        print(*n.children[1], 2, out, true);
        break;
    case Kind::Mul:
    case Kind::Div:
        print(*n.children[0], 2, out, true);
        out += n.kind == Kind::Mul ? '*' : '/';
        print(*n.children[1], 3, out);
        break;
    case Kind::Pow:
        print(*n.children[0], 5, out);
        out += '^';
        out += std::to_string(n.exponent);
        break;
    case Kind::Call:
        out += function_name(n.func);
        out += '(';
        print(*n.children[0], 0, out);
        out += ')';
        break;
    }
    if (parens) out += ')';
}

// ---------------------------------------------------------------------------
// Differentiation (unsimplified)

Ast derive(const Ast& a)
{
    const Node& n = *a;
    switch (n.kind) {
    case Kind::Constant:
    case Kind::Parameter: return constant(0.0);
    case Kind::Variable: return constant(1.0);
    case Kind::Neg: return neg(derive(n.children[0]));
    case Kind::Add: return add(derive(n.children[0]), derive(n.children[1]));
    case Kind::Sub: return sub(derive(n.children[0]), derive(n.children[1]));
    case Kind::Mul: {
        const Ast& u = n.children[0];
        const Ast& v = n.children[1];
        return add(mul(derive(u), v), mul(u, derive(v)));
    }
    case Kind::Div: {
        const Ast& u = n.children[0];
        const Ast& v = n.children[1];
        return div(sub(mul(derive(u), v), mul(u, derive(v))), pow(v, 2));
    }
    case Kind::Pow: {
        const Ast& u = n.children[0];
        if (n.exponent == 0) return constant(0.0);
        return mul(mul(constant(n.exponent), pow(u, n.exponent - 1)), derive(u));
    }
    case Kind::Call: {
        const Ast& u = n.children[0];
        const Ast du = derive(u);
        switch (n.func) {
        case Func::Exp: return mul(a, du);
        case Func::Sin: return mul(call(Func::Cos, u), du);
        case Func::Cos: return neg(mul(call(Func::Sin, u), du));
        case Func::Tan: return mul(add(constant(1.0), pow(a, 2)), du);
        case Func::Arctan: return div(du, add(constant(1.0), pow(u, 2)));
        case Func::Sqrt: return div(du, mul(constant(2.0), a));
        case Func::Ln: return div(du, u);
        }
    }
    }
    throw std::logic_error("unhandled node kind");
}

// ---------------------------------------------------------------------------
// Simplification

bool all_children_constant(const Node& n)
{
    for (const auto& c : n.children) {
        if (c->kind != Kind::Constant) return false;
    }
    return !n.children.empty();
}

Ast simplify_node(const Ast& a)
{
    const Node& n = *a;
    if (n.children.empty()) return a;

    Node copy = n;
    bool changed = false;
    for (auto& c : copy.children) {
        Ast s = simplify_node(c);
        if (s != c) changed = true;
        c = std::move(s);
    }
    const Ast node = changed ? make(std::move(copy)) : a;
    const auto& ch = node->children;

    if (all_children_constant(*node)) {
        try {
            return constant(eval(*node, Bindings{}));
        } catch (const DomainError&) {
            return node;
        }
    }

    switch (node->kind) {
    case Kind::Neg:
        if (ch[0]->kind == Kind::Neg) return ch[0]->children[0];
        break;
    case Kind::Add:
        if (is_constant(ch[0], 0.0)) return ch[1];
        if (is_constant(ch[1], 0.0)) return ch[0];
        break;
    case Kind::Sub:
        if (is_constant(ch[1], 0.0)) return ch[0];
        if (is_constant(ch[0], 0.0)) return neg(ch[1]);
        break;
    case Kind::Mul:
        if (is_constant(ch[0], 0.0) || is_constant(ch[1], 0.0)) return constant(0.0);
        if (is_constant(ch[0], 1.0)) return ch[1];
        if (is_constant(ch[1], 1.0)) return ch[0];
        if (is_constant(ch[0], -1.0)) return neg(ch[1]);
        if (is_constant(ch[1], -1.0)) return neg(ch[0]);
        break;
    case Kind::Div:
        if (is_constant(ch[1], 1.0)) return ch[0];
        if (is_constant(ch[0], 0.0)) return constant(0.0);
        break;
    case Kind::Pow:
        if (node->exponent == 0) return constant(1.0);
        if (node->exponent == 1) return ch[0];
        break;
    default: break;
    }
    return node;
}

void collect_parameters(const Node& n, std::set<std::string, std::less<>>& out)
{
    if (n.kind == Kind::Parameter) out.insert(n.name);
    for (const auto& c : n.children) collect_parameters(*c, out);
}

} // namespace

Ast constant(double value)
{
    Node n;
    n.kind = Kind::Constant;
    n.value = value;
    return make(std::move(n));
}

Ast variable()
{
    Node n;
    n.kind = Kind::Variable;
    return make(std::move(n));
}

Ast parameter(std::string name)
{
    Node n;
    n.kind = Kind::Parameter;
    n.name = std::move(name);
    return make(std::move(n));
}

Ast neg(Ast a)
{
    Node n;
    n.kind = Kind::Neg;
    n.children = {std::move(a)};
    return make(std::move(n));
}

Ast add(Ast a, Ast b) { return binary(Kind::Add, std::move(a), std::move(b)); }
Ast sub(Ast a, Ast b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
Ast mul(Ast a, Ast b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
Ast div(Ast a, Ast b) { return binary(Kind::Div, std::move(a), std::move(b)); }

Ast pow(Ast base, int exponent)
{
    Node n;
    n.kind = Kind::Pow;
    n.exponent = exponent;
    n.children = {std::move(base)};
    return make(std::move(n));
}

Ast call(Func f, Ast arg)
{
    Node n;
    n.kind = Kind::Call;
    n.func = f;
    n.children = {std::move(arg)};
    return make(std::move(n));
}

Ast parse(std::string_view text, const std::set<std::string, std::less<>>& parameters)
{
    return Parser(text, parameters).run();
}

Ast differentiate(const Ast& a) { return simplify(derive(a)); }

Ast simplify(const Ast& a) { return simplify_node(a); }

double evaluate(const Ast& a, const Bindings& b) { return eval(*a, b); }

std::string to_string(const Ast& a)
{
    std::string out;
    print(*a, 0, out);
    return out;
}

bool structurally_equal(const Ast& a, const Ast& b)
{
    if (a == b) return true;
    if (a->kind != b->kind || a->children.size() != b->children.size()) return false;
    switch (a->kind) {
    case Kind::Constant:
        if (a->value != b->value) return false;
        break;
    case Kind::Parameter:
        if (a->name != b->name) return false;
        break;
    case Kind::Pow:
        if (a->exponent != b->exponent) return false;
        break;
    case Kind::Call:
        if (a->func != b->func) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!structurally_equal(a->children[i], b->children[i])) return false;
    }
    return true;
}

bool depends_on_variable(const Ast& a)
{
    if (a->kind == Kind::Variable) return true;
    for (const auto& c : a->children) {
        if (depends_on_variable(c)) return true;
    }
    return false;
}

std::set<std::string, std::less<>> referenced_parameters(const Ast& a)
{
    std::set<std::string, std::less<>> out;
    collect_parameters(*a, out);
    return out;
}

std::string_view function_name(Func f)
{
    for (const auto& [n, fn] : kFunctions) {
        if (fn == f) return n;
    }
    return "?";
}

} // namespace gemo::expr
