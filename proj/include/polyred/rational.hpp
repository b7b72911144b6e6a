#ifndef POLYRED_RATIONAL_HPP
#define POLYRED_RATIONAL_HPP

#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polyred {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rational whose magnitude does not fit in a double.
struct CoefficientOverflow : Error {
    using Error::Error;
};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Arbitrary precision through GMP.
class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I v) : q_(static_cast<long>(v)) {}

    template <std::unsigned_integral I>
    Rational(I v) : q_(static_cast<unsigned long>(v)) {}

    Rational(long num, long den);
    explicit Rational(mpq_class q);
    Rational(const mpz_class& num, const mpz_class& den);

    /// Accepts "p" or "p/q" with optional leading sign; throws std::invalid_argument.
    static Rational parse(std::string_view text);

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    /// Round-to-nearest conversion. Throws CoefficientOverflow outside double range.
    double to_double() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

Rational abs(const Rational& r);

/// r^k for any integer k; negative k requires r != 0.
Rational pow(const Rational& r, long k);

/// Rational k-th root of r if one exists. For even k the nonnegative root is returned.
std::optional<Rational> exact_root(const Rational& r, unsigned long k);

}  // namespace polyred

#endif  // POLYRED_RATIONAL_HPP
