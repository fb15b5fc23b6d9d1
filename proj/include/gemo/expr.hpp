#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gemo::expr {

enum class Kind { Constant, Variable, Parameter, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Exp, Sin, Cos, Tan, Arctan, Sqrt, Ln };

struct Node;

/// Immutable expression tree over the single variable `x` and named parameters.
/// Nodes are shared between trees (derivatives reuse subtrees of their source).
using Ast = std::shared_ptr<const Node>;

struct Node {
    Kind kind = Kind::Constant;
    double value = 0.0;      // Constant
    std::string name;        // Parameter
    Func func = Func::Exp;   // Call
    int exponent = 0;        // Pow (integer exponents only)
    std::vector<Ast> children;
};

using Parameters = std::map<std::string, double, std::less<>>;

struct Bindings {
    double x = 0.0;
    const Parameters* parameters = nullptr;
};

// Builders. They do not simplify.
[[nodiscard]] Ast constant(double value);
[[nodiscard]] Ast variable();
[[nodiscard]] Ast parameter(std::string name);
[[nodiscard]] Ast neg(Ast a);
[[nodiscard]] Ast add(Ast a, Ast b);
[[nodiscard]] Ast sub(Ast a, Ast b);
[[nodiscard]] Ast mul(Ast a, Ast b);
[[nodiscard]] Ast div(Ast a, Ast b);
[[nodiscard]] Ast pow(Ast base, int exponent);
[[nodiscard]] Ast call(Func f, Ast arg);

/// Parse infix text. Identifiers other than `x`, `pi` and function names must
/// appear in `parameters`. Throws ParseError.
[[nodiscard]] Ast parse(std::string_view text, const std::set<std::string, std::less<>>& parameters = {});

/// Exact derivative with respect to `x`, simplified.
[[nodiscard]] Ast differentiate(const Ast& a);

/// Constant folding and identity elimination only; no term collection.
[[nodiscard]] Ast simplify(const Ast& a);

/// IEEE double evaluation. Throws DomainError on division by zero, unknown
/// parameter, or any non-finite intermediate.
[[nodiscard]] double evaluate(const Ast& a, const Bindings& b);

/// Infix text that parses back to the same tree; constants use shortest
/// round-trip formatting.
[[nodiscard]] std::string to_string(const Ast& a);

[[nodiscard]] bool structurally_equal(const Ast& a, const Ast& b);

/// True when the tree references `x`.
[[nodiscard]] bool depends_on_variable(const Ast& a);

/// Names of all parameters referenced by the tree.
[[nodiscard]] std::set<std::string, std::less<>> referenced_parameters(const Ast& a);

[[nodiscard]] std::string_view function_name(Func f);

} // namespace gemo::expr
