#ifndef POLYRED_SYMMETRY_HPP
#define POLYRED_SYMMETRY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyred/polynomial.hpp"

namespace polyred {

namespace finding {

/// Only even powers of x occur.
struct EvenPowers {
    friend bool operator==(const EvenPowers&, const EvenPowers&) = default;
};
/// f(x) = f(lambda - x).
struct ShiftSymmetric {
    Rational lambda;
    friend bool operator==(const ShiftSymmetric&, const ShiftSymmetric&) = default;
};
/// f(x) = -f(lambda - x).
struct ShiftAntisymmetric {
    Rational lambda;
    friend bool operator==(const ShiftAntisymmetric&, const ShiftAntisymmetric&) = default;
};
/// Palindromic coefficient sequence.
struct Reciprocal {
    friend bool operator==(const Reciprocal&, const Reciprocal&) = default;
};
/// c_{n-k} = r^k c_{n+k}; r = gamma/beta with the normalization beta = 1.
struct GeneralizedReciprocal {
    Rational r;
    friend bool operator==(const GeneralizedReciprocal&, const GeneralizedReciprocal&) = default;
};
/// f = P(P(x)) - x.
struct IteratedPolynomial {
    Polynomial inner;
    friend bool operator==(const IteratedPolynomial&, const IteratedPolynomial&) = default;
};
struct NoneFound {
    friend bool operator==(const NoneFound&, const NoneFound&) = default;
};

}  // namespace finding

using SymmetryFinding = std::variant<finding::EvenPowers, finding::ShiftSymmetric, finding::ShiftAntisymmetric,
                                     finding::Reciprocal, finding::GeneralizedReciprocal,
                                     finding::IteratedPolynomial, finding::NoneFound>;

/// "EvenPowers", "ShiftSymmetric", ...
std::string kind_name(const SymmetryFinding& f);

/// Human-readable form, e.g. "ShiftSymmetric(-4)".
std::string describe(const SymmetryFinding& f);

struct OddDegreeInput : Error {
    using Error::Error;
};
struct EvenDegreeInput : Error {
    using Error::Error;
};

bool detect_even(const Polynomial& f);

/// lambda with f(x) = f(lambda - x), if any. Requires even degree >= 2.
std::optional<Rational> detect_shift_symmetry(const Polynomial& f);

/// lambda with f(x) = -f(lambda - x), if any. Requires odd degree.
std::optional<Rational> detect_shift_antisymmetry(const Polynomial& f);

/// Palindromic test; false whenever the degree is odd, below 2, or the constant term is zero.
bool detect_reciprocal(const Polynomial& f);

/// Nonzero rational r with c_{n-k} = r^k c_{n+k} for k = 1..n, if any.
/// When the coefficient pattern fixes only r^2 (all odd pairs vanish) the
/// positive root is returned.
std::optional<Rational> detect_generalized_reciprocal(const Polynomial& f);

/// P of degree inner_degree with P(P(x)) - x = f, searching the shapes
/// a x^n + b and (a x + b)^n.
std::optional<Polynomial> detect_iterated(const Polynomial& f, unsigned inner_degree);

/// Every applicable finding in reduction priority order:
/// IteratedPolynomial, EvenPowers, ShiftSymmetric, ShiftAntisymmetric,
/// Reciprocal, GeneralizedReciprocal. Returns {NoneFound} when none apply.
std::vector<SymmetryFinding> classify(const Polynomial& f);

}  // namespace polyred

#endif  // POLYRED_SYMMETRY_HPP
