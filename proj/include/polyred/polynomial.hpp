#ifndef POLYRED_POLYNOMIAL_HPP
#define POLYRED_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "polyred/rational.hpp"

namespace polyred {

namespace detail {

template <class S>
bool is_zero(const S& v) {
    if constexpr (std::is_same_v<S, Rational>)
        return v.is_zero();
    else
        return v == S{};
}

}  // namespace detail

/// Dense univariate polynomial over a scalar field. Index k of coeffs()
/// holds the coefficient of x^k. The zero polynomial has no coefficients;
/// any other value has a nonzero last coefficient.
template <class Scalar>
class BasicPolynomial {
public:
    using scalar_type = Scalar;

    BasicPolynomial() = default;
    explicit BasicPolynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    BasicPolynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

    static BasicPolynomial constant(Scalar v) { return BasicPolynomial(std::vector<Scalar>{std::move(v)}); }

    static BasicPolynomial monomial(Scalar v, std::size_t power) {
        std::vector<Scalar> c(power + 1, Scalar{});
        c[power] = std::move(v);
        return BasicPolynomial(std::move(c));
    }

    /// The polynomial x.
    static BasicPolynomial identity() { return monomial(Scalar{1}, 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    const std::vector<Scalar>& coeffs() const { return c_; }

    /// Coefficient of x^k, zero beyond the degree.
    Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar{}; }
    const Scalar& leading() const { return c_.back(); }

    friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

using Polynomial = BasicPolynomial<Rational>;

/// f = g*q + r had r != 0 where an exact quotient was required.
struct NonzeroRemainder : Error {
    explicit NonzeroRemainder(Polynomial rem)
        : Error("polynomial division left a nonzero remainder"), remainder(std::move(rem)) {}
    Polynomial remainder;
};

/// deflate_linear was asked to divide by (x - r) where f(r) != 0.
struct NotARoot : Error {
    NotARoot(Rational r, Rational value)
        : Error("value " + r.str() + " is not a root (f = " + value.str() + ")"),
          point(std::move(r)), residual(std::move(value)) {}
    Rational point;
    Rational residual;
};

template <class S>
BasicPolynomial<S> add(const BasicPolynomial<S>& p, const BasicPolynomial<S>& q) {
    std::vector<S> c(std::max(p.size(), q.size()), S{});
    for (std::size_t k = 0; k < p.size(); ++k) c[k] = p.coeffs()[k];
    for (std::size_t k = 0; k < q.size(); ++k) c[k] += q.coeffs()[k];
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
BasicPolynomial<S> neg(const BasicPolynomial<S>& p) {
    std::vector<S> c;
    c.reserve(p.size());
    for (const S& v : p.coeffs()) c.push_back(-v);
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
BasicPolynomial<S> sub(const BasicPolynomial<S>& p, const BasicPolynomial<S>& q) {
    std::vector<S> c(std::max(p.size(), q.size()), S{});
    for (std::size_t k = 0; k < p.size(); ++k) c[k] = p.coeffs()[k];
    for (std::size_t k = 0; k < q.size(); ++k) c[k] -= q.coeffs()[k];
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
BasicPolynomial<S> scale(const BasicPolynomial<S>& p, const S& s) {
    std::vector<S> c;
    c.reserve(p.size());
    for (const S& v : p.coeffs()) c.push_back(v * s);
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
BasicPolynomial<S> mul(const BasicPolynomial<S>& p, const BasicPolynomial<S>& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<S> c(p.size() + q.size() - 1, S{});
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (detail::is_zero(p.coeffs()[i])) continue;
        for (std::size_t j = 0; j < q.size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
    }
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
BasicPolynomial<S> pow(BasicPolynomial<S> base, unsigned long k) {
    auto result = BasicPolynomial<S>::constant(S{1});
    while (k > 0) {
        if (k & 1UL) result = mul(result, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

/// outer(inner(x)) by Horner's scheme.
template <class S>
BasicPolynomial<S> compose(const BasicPolynomial<S>& outer, const BasicPolynomial<S>& inner) {
    BasicPolynomial<S> result;
    for (auto it = outer.coeffs().rbegin(); it != outer.coeffs().rend(); ++it)
        result = add(mul(result, inner), BasicPolynomial<S>::constant(*it));
    return result;
}

/// Horner evaluation; V may be a wider type than the coefficients (e.g. complex).
template <class S, class V>
V eval(const BasicPolynomial<S>& f, const V& v) {
    V acc{};
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * v + V(*it);
    return acc;
}

template <class S>
BasicPolynomial<S> derivative(const BasicPolynomial<S>& f) {
    if (f.size() <= 1) return {};
    std::vector<S> c(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) c[k - 1] = f.coeffs()[k] * S(static_cast<long>(k));
    return BasicPolynomial<S>(std::move(c));
}

template <class S>
struct DivRem {
    BasicPolynomial<S> quotient;
    BasicPolynomial<S> remainder;
};

/// Euclidean division f = g*quotient + remainder with deg(remainder) < deg(g).
template <class S>
DivRem<S> div_rem(const BasicPolynomial<S>& f, const BasicPolynomial<S>& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    if (f.degree() < g.degree()) return {{}, f};

    std::vector<S> r = f.coeffs();
    const std::size_t dg = g.size() - 1;
    std::vector<S> q(f.size() - dg, S{});
    for (std::size_t k = q.size(); k-- > 0;) {
        S t = r[k + dg] / g.leading();
        q[k] = t;
        if (detail::is_zero(t)) continue;
        for (std::size_t j = 0; j <= dg; ++j) r[k + j] -= t * g.coeffs()[j];
    }
    r.resize(dg);
    return {BasicPolynomial<S>(std::move(q)), BasicPolynomial<S>(std::move(r))};
}

/// Quotient f/g; throws NonzeroRemainder if g does not divide f.
inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    auto [q, r] = div_rem(f, g);
    if (!r.is_zero()) throw NonzeroRemainder(std::move(r));
    return q;
}

/// Synthetic division by (x - r) where r is a known exact root.
inline Polynomial deflate_linear(const Polynomial& f, const Rational& r) {
    if (f.is_zero()) return {};
    std::vector<Rational> q(f.size() - 1);
    Rational carry = f.leading();
    for (std::size_t k = f.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = f.coeffs()[k] + r * carry;
    }
    if (!carry.is_zero()) throw NotARoot(r, carry);
    return Polynomial(std::move(q));
}

/// g(y) = f(y + mu), by repeated synthetic division (Taylor shift).
template <class S>
BasicPolynomial<S> shift(const BasicPolynomial<S>& f, const S& mu) {
    std::vector<S> a = f.coeffs();
    if (a.empty() || detail::is_zero(mu)) return f;
    const std::size_t d = a.size() - 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = d; j-- > i;) a[j] += mu * a[j + 1];
    return BasicPolynomial<S>(std::move(a));
}

/// Rational c with f = c * primitive_part(f), signed like the leading
/// coefficient; zero for f = 0.
Rational content(const Polynomial& f);

/// f divided by its content: integer coefficients, gcd 1, positive leading coefficient.
Polynomial primitive_part(const Polynomial& f);

/// Canonical text form, parseable back by the expression parser.
std::string render(const Polynomial& f, char var = 'x');

inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << render(f); }

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator-(const Polynomial& p) { return neg(p); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

/// x - r
inline Polynomial linear_factor(const Rational& r) { return Polynomial{-r, Rational(1)}; }

}  // namespace polyred

#endif  // POLYRED_POLYNOMIAL_HPP
