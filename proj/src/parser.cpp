#include "polyred/parser.hpp"

#include <cctype>

namespace polyred {

namespace {

template <class Node>
ExprPtr make(Node n) {
    return std::make_shared<const Expr>(Expr{std::move(n)});
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : s_(text), opts_(opts) {}

    ExprPtr run() {
        skip_ws();
        if (at_end()) throw SyntaxError("empty expression", pos_);
        ExprPtr e = expr();
        skip_ws();
        if (!at_end()) {
            if (peek() == '/')
                throw SyntaxError("division is only allowed between integer literals", pos_);
            if (peek() == ')') throw SyntaxError("unbalanced ')'", pos_);
            throw SyntaxError(std::string("unexpected character '") + peek() + "'", pos_);
        }
        return e;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool starts_juxtaposed_atom() const {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            ExprPtr rhs = term();
            lhs = c == '+' ? make(Add{lhs, rhs}) : make(Sub{lhs, rhs});
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
            } else if (!starts_juxtaposed_atom()) {
                return lhs;
            }
            lhs = make(Mul{lhs, factor()});
        }
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        if (peek() == '-') throw UnsupportedExponent("negative exponent", at);
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw UnsupportedExponent("exponent must be a nonnegative integer literal", at);
        std::string digits = read_digits();
        if (peek() == '.' || peek() == '/') throw UnsupportedExponent("non-integer exponent", at);
        if (digits.size() > 9 || std::stoul(digits) > opts_.max_exponent)
            throw UnsupportedExponent("exponent " + digits + " exceeds limit " + std::to_string(opts_.max_exponent), at);
        return make(Pow{base, std::stoul(digits)});
    }

    ExprPtr atom() {
        skip_ws();
        std::size_t at = pos_;
        if (at_end()) throw SyntaxError("unexpected end of expression", at);
        char c = peek();

        if (c == '-') {
            ++pos_;
            return make(Neg{factor()});
        }
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(read_digits(), 10);
            if (peek() == '.') throw SyntaxError("decimal literals are not supported, write p/q", pos_);
            std::size_t save = pos_;
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw SyntaxError("division is only allowed between integer literals", pos_);
                std::size_t den_at = pos_;
                mpz_class den(read_digits(), 10);
                if (den == 0) throw SyntaxError("zero denominator", den_at);
                return make(RatLit{Rational(num, den)});
            }
            pos_ = save;
            return make(IntLit{Rational(num, mpz_class(1))});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            if (c != opts_.variable && (!opts_.alias || c != *opts_.alias))
                throw MultipleVariables(std::string("unexpected variable '") + c + "', only '" + opts_.variable +
                                            "' is allowed",
                                        at);
            return make(Var{c});
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string_view s_;
    const ParseOptions& opts_;
    std::size_t pos_ = 0;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ExprPtr parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

Polynomial expand(const Expr& ast) {
    return std::visit(
        overloaded{
            [](const IntLit& n) { return Polynomial::constant(n.value); },
            [](const RatLit& n) { return Polynomial::constant(n.value); },
            [](const Var&) { return Polynomial::identity(); },
            [](const Neg& n) { return neg(expand(*n.operand)); },
            [](const Add& n) { return add(expand(*n.lhs), expand(*n.rhs)); },
            [](const Sub& n) { return sub(expand(*n.lhs), expand(*n.rhs)); },
            [](const Mul& n) { return mul(expand(*n.lhs), expand(*n.rhs)); },
            [](const Pow& n) { return pow(expand(*n.base), n.exponent); },
        },
        ast.node);
}

std::string to_sexpr(const Expr& ast) {
    auto bin = [](const char* name, const ExprPtr& a, const ExprPtr& b) {
        return std::string(name) + "(" + to_sexpr(*a) + "," + to_sexpr(*b) + ")";
    };
    return std::visit(overloaded{
                          [](const IntLit& n) { return n.value.str(); },
                          [](const RatLit& n) { return n.value.str(); },
                          [](const Var& n) { return std::string(1, n.name); },
                          [](const Neg& n) { return "Neg(" + to_sexpr(*n.operand) + ")"; },
                          [&](const Add& n) { return bin("Add", n.lhs, n.rhs); },
                          [&](const Sub& n) { return bin("Sub", n.lhs, n.rhs); },
                          [&](const Mul& n) { return bin("Mul", n.lhs, n.rhs); },
                          [](const Pow& n) {
                              return "Pow(" + to_sexpr(*n.base) + "," + std::to_string(n.exponent) + ")";
                          },
                      },
                      ast.node);
}

}  // namespace polyred
