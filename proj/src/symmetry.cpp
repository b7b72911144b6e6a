#include "polyred/symmetry.hpp"

#include <cassert>

namespace polyred {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// The only axis that can work: recentering there kills the y^{d-1} term.
Rational candidate_center(const Polynomial& f) {
    const auto d = static_cast<std::size_t>(f.degree());
    return -f.coeffs()[d - 1] / (Rational(static_cast<long>(d)) * f.leading());
}

bool only_parity(const Polynomial& g, std::size_t parity) {
    for (std::size_t k = 0; k < g.size(); ++k)
        if (k % 2 != parity && !g.coeffs()[k].is_zero()) return false;
    return true;
}

bool is_iterate_of(const Polynomial& f, const Polynomial& inner) {
    return sub(compose(inner, inner), Polynomial::identity()) == f;
}

std::vector<Rational> signed_roots(const Rational& value, unsigned long k) {
    std::vector<Rational> out;
    if (auto r = exact_root(value, k)) {
        out.push_back(*r);
        if (k % 2 == 0 && !r->is_zero()) out.push_back(-*r);
    }
    return out;
}

}  // namespace

std::string kind_name(const SymmetryFinding& f) {
    return std::visit(overloaded{
                          [](const finding::EvenPowers&) { return "EvenPowers"; },
                          [](const finding::ShiftSymmetric&) { return "ShiftSymmetric"; },
                          [](const finding::ShiftAntisymmetric&) { return "ShiftAntisymmetric"; },
                          [](const finding::Reciprocal&) { return "Reciprocal"; },
                          [](const finding::GeneralizedReciprocal&) { return "GeneralizedReciprocal"; },
                          [](const finding::IteratedPolynomial&) { return "IteratedPolynomial"; },
                          [](const finding::NoneFound&) { return "NoneFound"; },
                      },
                      f);
}

std::string describe(const SymmetryFinding& f) {
    return std::visit(overloaded{
                          [](const finding::ShiftSymmetric& s) { return "ShiftSymmetric(" + s.lambda.str() + ")"; },
                          [](const finding::ShiftAntisymmetric& s) {
                              return "ShiftAntisymmetric(" + s.lambda.str() + ")";
                          },
                          [](const finding::GeneralizedReciprocal& s) {
                              return "GeneralizedReciprocal(" + s.r.str() + ")";
                          },
                          [](const finding::IteratedPolynomial& s) {
                              return "IteratedPolynomial(" + render(s.inner) + ")";
                          },
                          [&](const auto&) { return kind_name(f); },
                      },
                      f);
}

bool detect_even(const Polynomial& f) { return only_parity(f, 0); }

std::optional<Rational> detect_shift_symmetry(const Polynomial& f) {
    if (f.degree() < 2 || f.degree() % 2 != 0)
        throw OddDegreeInput("shift-symmetry detection needs even degree >= 2, got degree " +
                             std::to_string(f.degree()));
    Rational mu = candidate_center(f);
    if (!only_parity(shift(f, mu), 0)) return std::nullopt;
    return mu * Rational(2);
}

std::optional<Rational> detect_shift_antisymmetry(const Polynomial& f) {
    if (f.degree() < 1 || f.degree() % 2 != 1)
        throw EvenDegreeInput("shift-antisymmetry detection needs odd degree, got degree " +
                              std::to_string(f.degree()));
    Rational mu = candidate_center(f);
    if (!only_parity(shift(f, mu), 1)) return std::nullopt;
    return mu * Rational(2);
}

bool detect_reciprocal(const Polynomial& f) {
    if (f.degree() < 2 || f.degree() % 2 != 0 || f.coeffs().front().is_zero()) return false;
    const auto& c = f.coeffs();
    for (std::size_t k = 0, j = c.size() - 1; k < j; ++k, --j)
        if (c[k] != c[j]) return false;
    return true;
}

std::optional<Rational> detect_generalized_reciprocal(const Polynomial& f) {
    if (f.degree() < 2 || f.degree() % 2 != 0) return std::nullopt;
    const auto n = static_cast<std::size_t>(f.degree() / 2);
    const auto& c = f.coeffs();

    std::size_t k0 = 1;
    while (k0 <= n && c[n + k0].is_zero() && c[n - k0].is_zero()) ++k0;
    assert(k0 <= n);  // c[2n] != 0
    if (c[n + k0].is_zero() || c[n - k0].is_zero()) return std::nullopt;

    for (const Rational& r : signed_roots(c[n - k0] / c[n + k0], k0)) {
        bool ok = true;
        Rational rk = 1;
        for (std::size_t k = 1; k <= n && ok; ++k) {
            rk *= r;
            ok = c[n - k] == rk * c[n + k];
        }
        if (ok) return r;
    }
    return std::nullopt;
}

std::optional<Polynomial> detect_iterated(const Polynomial& f, unsigned inner_degree) {
    const long n = inner_degree;
    if (n < 2 || f.degree() != n * n) return std::nullopt;
    const Rational& lead = f.leading();

    // a x^n + b: lead = a^{n+1}, [x^{n^2-n}] = n a^n b.
    for (const Rational& a : signed_roots(lead, static_cast<unsigned long>(n + 1))) {
        Rational b = f.coeff(static_cast<std::size_t>(n * n - n)) / (Rational(n) * pow(a, n));
        Polynomial inner = add(Polynomial::monomial(a, static_cast<std::size_t>(n)), Polynomial::constant(b));
        if (is_iterate_of(f, inner)) return inner;
    }

    // (a x + b)^n: lead = a^{n(n+1)}, [x^{n^2-1}] = n^2 a^{n^2+n-1} b.
    for (const Rational& a : signed_roots(lead, static_cast<unsigned long>(n * (n + 1)))) {
        Rational b = f.coeff(static_cast<std::size_t>(n * n - 1)) / (Rational(n * n) * pow(a, n * n + n - 1));
        Polynomial inner = pow(Polynomial{b, a}, static_cast<unsigned long>(n));
        if (is_iterate_of(f, inner)) return inner;
    }
    return std::nullopt;
}

std::vector<SymmetryFinding> classify(const Polynomial& f) {
    std::vector<SymmetryFinding> out;
    const int d = f.degree();
    if (d < 1) return {finding::NoneFound{}};

    for (int n = 2; n * n <= d; ++n) {
        if (n * n != d) continue;
        if (auto inner = detect_iterated(f, static_cast<unsigned>(n))) {
            assert(is_iterate_of(f, *inner));
            out.emplace_back(finding::IteratedPolynomial{*inner});
        }
    }
    if (detect_even(f)) out.emplace_back(finding::EvenPowers{});
    if (d % 2 == 0) {
        if (auto lambda = detect_shift_symmetry(f)) out.emplace_back(finding::ShiftSymmetric{*lambda});
    } else {
        if (auto lambda = detect_shift_antisymmetry(f)) out.emplace_back(finding::ShiftAntisymmetric{*lambda});
    }
    if (detect_reciprocal(f)) out.emplace_back(finding::Reciprocal{});
    if (auto r = detect_generalized_reciprocal(f)) out.emplace_back(finding::GeneralizedReciprocal{*r});

    if (out.empty()) out.emplace_back(finding::NoneFound{});
    return out;
}

}  // namespace polyred
