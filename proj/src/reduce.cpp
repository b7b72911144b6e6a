#include "polyred/reduce.hpp"

namespace polyred {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// lambda - x
Polynomial reflection(const Rational& lambda) { return Polynomial{lambda, Rational(-1)}; }

void collect_cores(const ReductionNode& node, std::vector<Polynomial>& out) {
    if (node.is_core()) {
        out.push_back(node.poly);
        return;
    }
    for (const Branch& b : node.step->branches) collect_cores(b.node, out);
}

std::size_t count_steps(const ReductionNode& node) {
    if (node.is_core()) return 0;
    std::size_t n = 1;
    for (const Branch& b : node.step->branches) n += count_steps(b.node);
    return n;
}

ReductionNode build(const Polynomial& f) {
    if (f.degree() <= 2) return {f, nullptr};
    auto findings = classify(f);
    if (std::holds_alternative<finding::NoneFound>(findings.front())) return {f, nullptr};

    ReductionStep step = apply_reduction(f, findings.front());
    for (Branch& b : step.branches) b.node = build(b.node.poly);
    return {f, std::make_shared<const ReductionStep>(std::move(step))};
}

}  // namespace

int multiplier(const BackMap& m) { return std::holds_alternative<backmap::Identity>(m) ? 1 : 2; }

std::string kind_name(const BackMap& m) {
    return std::visit(overloaded{
                          [](const backmap::Square&) { return "Square"; },
                          [](const backmap::MobiusQuad&) { return "MobiusQuad"; },
                          [](const backmap::Identity&) { return "Identity"; },
                      },
                      m);
}

std::string describe(const BackMap& m) {
    return std::visit(overloaded{
                          [](const backmap::Square& s) { return "Square(" + s.center.str() + ")"; },
                          [](const backmap::MobiusQuad& q) {
                              return "MobiusQuad(" + q.beta.str() + "," + q.gamma.str() + ")";
                          },
                          [](const backmap::Identity&) { return std::string("Identity"); },
                      },
                      m);
}

std::vector<Polynomial> ReductionChain::cores() const {
    std::vector<Polynomial> out;
    collect_cores(root, out);
    return out;
}

std::size_t ReductionChain::step_count() const { return count_steps(root); }

Reduced reduce_even(const Polynomial& f) {
    if (f.degree() < 2 || !detect_even(f)) throw NotEven("polynomial " + render(f) + " has odd powers");
    std::vector<Rational> g;
    for (std::size_t k = 0; k < f.size(); k += 2) g.push_back(f.coeffs()[k]);
    return {Polynomial(std::move(g)), backmap::Square{Rational(0)}};
}

Reduced reduce_shift(const Polynomial& f, const Rational& lambda) {
    if (f.degree() < 2 || f.degree() % 2 != 0 || compose(f, reflection(lambda)) != f)
        throw NotShiftSymmetric("polynomial is not symmetric under x -> " + lambda.str() + " - x");
    Rational center = lambda / Rational(2);
    return {reduce_even(shift(f, center)).poly, backmap::Square{center}};
}

AntisymmetricSplit factor_antisymmetric(const Polynomial& f, const Rational& lambda) {
    if (f.degree() < 1 || f.degree() % 2 != 1 || compose(f, reflection(lambda)) != neg(f))
        throw NotAntisymmetric("polynomial is not antisymmetric under x -> " + lambda.str() + " - x");
    Rational root = lambda / Rational(2);
    return {root, deflate_linear(f, root)};
}

Reduced reduce_reciprocal(const Polynomial& f, const Rational& beta, const Rational& gamma) {
    if (beta.is_zero() || gamma.is_zero()) throw NotGeneralizedReciprocal("beta and gamma must be nonzero");
    if (f.degree() < 2 || f.degree() % 2 != 0)
        throw NotGeneralizedReciprocal("generalized reciprocal reduction needs even degree >= 2");

    const auto n = static_cast<std::size_t>(f.degree() / 2);
    const auto& c = f.coeffs();
    Rational bk = 1, gk = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        bk *= beta;
        gk *= gamma;
        if (c[n - k] * bk != c[n + k] * gk)
            throw NotGeneralizedReciprocal("coefficient pair k=" + std::to_string(k) + " violates c[n-k] beta^k = c[n+k] gamma^k");
    }

    // w_k = beta^k x^k + gamma^k x^-k as polynomials in z = beta x + gamma/x:
    // w_0 = 2, w_1 = z, w_{k+1} = z w_k - beta gamma w_{k-1}.
    const Polynomial z = Polynomial::identity();
    const Rational bg = beta * gamma;
    Polynomial w_prev = Polynomial::constant(Rational(2));
    Polynomial w = z;

    Polynomial r = Polynomial::constant(c[n]);
    bk = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        bk *= beta;
        r = add(r, scale(w, c[n + k] / bk));
        Polynomial next = sub(mul(z, w), scale(w_prev, bg));
        w_prev = std::move(w);
        w = std::move(next);
    }
    return {std::move(r), backmap::MobiusQuad{beta, gamma}};
}

IteratedSplit factor_iterated(const Polynomial& f, const Polynomial& inner) {
    if (inner.degree() < 2 || sub(compose(inner, inner), Polynomial::identity()) != f)
        throw NotIterated("polynomial is not P(P(x)) - x for P = " + render(inner));
    Polynomial g = sub(inner, Polynomial::identity());
    Polynomial q = divide_exact(f, g);
    return {std::move(g), std::move(q)};
}

ReductionStep apply_reduction(const Polynomial& f, const SymmetryFinding& which) {
    ReductionStep step{which, {}, {}};
    auto leaf = [](Polynomial p) { return ReductionNode{std::move(p), nullptr}; };

    std::visit(overloaded{
                   [&](const finding::EvenPowers&) {
                       auto [g, m] = reduce_even(f);
                       step.branches.push_back({m, leaf(g)});
                   },
                   [&](const finding::ShiftSymmetric& s) {
                       auto [g, m] = reduce_shift(f, s.lambda);
                       step.branches.push_back({m, leaf(g)});
                   },
                   [&](const finding::ShiftAntisymmetric& s) {
                       auto [root, q] = factor_antisymmetric(f, s.lambda);
                       step.exact_roots.push_back(root);
                       step.branches.push_back({backmap::Identity{}, leaf(q)});
                   },
                   [&](const finding::Reciprocal&) {
                       auto [g, m] = reduce_reciprocal(f, Rational(1), Rational(1));
                       step.branches.push_back({m, leaf(g)});
                   },
                   [&](const finding::GeneralizedReciprocal& s) {
                       auto [g, m] = reduce_reciprocal(f, Rational(1), s.r);
                       step.branches.push_back({m, leaf(g)});
                   },
                   [&](const finding::IteratedPolynomial& s) {
                       auto [g, q] = factor_iterated(f, s.inner);
                       step.branches.push_back({backmap::Identity{}, leaf(g)});
                       step.branches.push_back({backmap::Identity{}, leaf(q)});
                   },
                   [&](const finding::NoneFound&) {
                       throw std::invalid_argument("apply_reduction: no symmetry to apply");
                   },
               },
               which);
    return step;
}

ReductionChain reduce_fully(const Polynomial& f) {
    if (f.degree() < 1) throw std::invalid_argument("reduce_fully: polynomial must have degree >= 1");
    return {f, build(f)};
}

Polynomial lift(const Polynomial& reduced, const BackMap& m) {
    return std::visit(overloaded{
                          [&](const backmap::Square& s) {
                              Polynomial sq = pow(linear_factor(s.center), 2);
                              return compose(reduced, sq);
                          },
                          [&](const backmap::MobiusQuad& q) {
                              // x^n R(beta x + gamma/x) = sum_j R_j x^{n-j} (beta x^2 + gamma)^j
                              const auto n = static_cast<std::size_t>(std::max(reduced.degree(), 0));
                              const Polynomial quad{q.gamma, Rational(0), q.beta};
                              Polynomial out;
                              Polynomial quad_j = Polynomial::constant(Rational(1));
                              for (std::size_t j = 0; j < reduced.size(); ++j) {
                                  out = add(out, mul(Polynomial::monomial(reduced.coeffs()[j], n - j), quad_j));
                                  quad_j = mul(quad_j, quad);
                              }
                              return out;
                          },
                          [&](const backmap::Identity&) { return reduced; },
                      },
                      m);
}

Polynomial replay(const ReductionNode& node) {
    if (node.is_core()) return node.poly;
    Polynomial out = Polynomial::constant(Rational(1));
    for (const Branch& b : node.step->branches) out = mul(out, lift(replay(b.node), b.backmap));
    for (const Rational& r : node.step->exact_roots) out = mul(out, linear_factor(r));
    return out;
}

}  // namespace polyred
