#include "polyred/polynomial.hpp"

namespace polyred {

Rational content(const Polynomial& f) {
    if (f.is_zero()) return Rational(0);
    mpz_class g = 0;
    mpz_class l = 1;
    for (const Rational& c : f.coeffs()) {
        if (c.is_zero()) continue;
        mpz_class num = ::abs(c.numerator());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        mpz_class den = c.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Rational c(g, l);
    return f.leading().sign() < 0 ? -c : c;
}

Polynomial primitive_part(const Polynomial& f) {
    if (f.is_zero()) return f;
    return scale(f, Rational(1) / content(f));
}

std::string render(const Polynomial& f, char var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t k = f.size(); k-- > 0;) {
        const Rational& c = f.coeffs()[k];
        if (c.is_zero()) continue;
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";

        Rational mag = abs(c);
        if (k == 0) {
            out += mag.str();
            continue;
        }
        if (mag != Rational(1)) out += mag.is_integer() ? mag.str() : mag.str() + " ";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace polyred
