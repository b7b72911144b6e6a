#ifndef POLYRED_PARSER_HPP
#define POLYRED_PARSER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "polyred/polynomial.hpp"

namespace polyred {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit { Rational value; };
struct RatLit { Rational value; };
struct Var { char name; };
struct Neg { ExprPtr operand; };
struct Add { ExprPtr lhs, rhs; };
struct Sub { ExprPtr lhs, rhs; };
struct Mul { ExprPtr lhs, rhs; };
struct Pow { ExprPtr base; unsigned long exponent; };

/// Immutable expression tree for a univariate polynomial expression.
struct Expr {
    std::variant<IntLit, RatLit, Var, Neg, Add, Sub, Mul, Pow> node;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

/// Negative, non-integer, non-literal or oversized exponent.
struct UnsupportedExponent : ParseError {
    using ParseError::ParseError;
};

struct MultipleVariables : ParseError {
    using ParseError::ParseError;
};

struct ParseOptions {
    char variable = 'x';
    std::optional<char> alias;
    /// Largest accepted exponent literal.
    unsigned long max_exponent = 4096;
};

/// Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor ("*"? factor)*      juxtaposition multiplies
///   factor := atom ("^" uint)?
///   atom   := int ("/" uint)? | var | "(" expr ")" | "-" factor
ExprPtr parse(std::string_view text, const ParseOptions& options = {});

/// Expands the tree into a canonical polynomial.
Polynomial expand(const Expr& ast);

inline Polynomial parse_polynomial(std::string_view text, const ParseOptions& options = {}) {
    return expand(*parse(text, options));
}

/// Debug form, e.g. "Add(Pow(Add(x,1),4),-50)".
std::string to_sexpr(const Expr& ast);

}  // namespace polyred

#endif  // POLYRED_PARSER_HPP
