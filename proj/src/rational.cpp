#include "polyred/rational.hpp"

#include <cmath>

#include <mpfr.h>

namespace polyred {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();

    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    auto digits = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (!digits(num, true)) throw bad();
    if (slash != std::string_view::npos && !digits(den, false)) throw bad();

    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    mpz_class zn(n, 10);
    mpz_class zd = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (zd == 0) throw bad();
    return Rational(zn, zd);
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

double Rational::to_double() const {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q_.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    if (!std::isfinite(d)) throw CoefficientOverflow("rational " + str() + " overflows double range");
    return d;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& r) { return Rational(mpq_class(::abs(r.value()))); }

Rational pow(const Rational& r, long k) {
    if (k < 0) {
        if (r.is_zero()) throw std::domain_error("Rational: zero to a negative power");
        return Rational(1) / pow(r, -k);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.value().get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(den.get_mpz_t(), r.value().get_den_mpz_t(), static_cast<unsigned long>(k));
    return Rational(num, den);
}

std::optional<Rational> exact_root(const Rational& r, unsigned long k) {
    if (k == 0) return std::nullopt;
    if (k == 1) return r;
    if (r.sign() < 0 && k % 2 == 0) return std::nullopt;

    mpz_class num = ::abs(r.numerator());
    mpz_class den = r.denominator();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return std::nullopt;
    if (r.sign() < 0) rn = -rn;
    return Rational(rn, rd);
}

}  // namespace polyred
