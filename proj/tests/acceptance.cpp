// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "polyred/numroots.hpp"
#include "polyred/reduce.hpp"
#include "polyred/testgen.hpp"
#include "support.hpp"

using namespace polyred;
using polyred::testing::multiset_distance;
using polyred::testing::scale_of;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Instance one(Family f, std::map<std::string, Rational> params, std::uint64_t seed) {
    FamilySpec s;
    s.family = f;
    s.params = std::move(params);
    s.seed = seed;
    return generate(s, 1).at(0);
}

std::vector<Complex> values(const std::vector<ComplexRoot>& roots) {
    std::vector<Complex> out;
    for (const auto& r : roots) out.push_back(r.value);
    return out;
}

Outcome degree_halving() {
    Outcome o;
    auto t0 = Clock::now();
    int count = 0;
    for (Family f : {Family::ShiftPowerSum, Family::ShiftCross, Family::ShiftProduct}) {
        for (int i = 0; i < 200; ++i) {
            long n = 1 + i % 4;
            auto inst = one(f, {{"n", n}}, 1000 + static_cast<std::uint64_t>(i));
            const auto& p = inst.family.params;
            Rational lambda = -p.at("a") - p.at("b");
            auto found = detect_shift_symmetry(inst.expanded);
            if (found != lambda) o.fail(family_name(f) + " " + inst.expression_text + ": wrong axis");
            auto core = reduce_shift(inst.expanded, lambda).poly;
            // The product form carries two extra linear factors, so its degree is 2n + 2.
            int expected = f == Family::ShiftProduct ? static_cast<int>(n) + 1 : static_cast<int>(n);
            if (core.degree() != expected || 2 * core.degree() != inst.expanded.degree())
                o.fail(family_name(f) + " " + inst.expression_text + ": core degree " +
                       std::to_string(core.degree()));
            ++count;
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 5.0) o.fail("took " + std::to_string(secs) + " s");
    if (o.ok) o.detail = std::to_string(count) + " instances, " + std::to_string(secs) + " s";
    return o;
}

Outcome antisymmetric_root() {
    Outcome o;
    for (int i = 0; i < 200; ++i) {
        auto inst = one(Family::AntisymPowerSum, {{"n", 1 + i % 4}}, 2000 + static_cast<std::uint64_t>(i));
        const auto& p = inst.family.params;
        Rational center = -(p.at("a") + p.at("b")) / Rational(2);
        if (!eval(inst.expanded, center).is_zero()) o.fail(inst.expression_text + ": center is not a root");
        auto q = deflate_linear(inst.expanded, center);
        if (detect_shift_symmetry(q) != -p.at("a") - p.at("b"))
            o.fail(inst.expression_text + ": quotient not symmetric about the same axis");
    }
    if (o.ok) o.detail = "200 instances, exact zero at the center";
    return o;
}

Outcome reciprocal_identity() {
    Outcome o;
    for (int i = 0; i < 100; ++i) {
        auto inst = one(Family::GeneralizedReciprocal, {{"n", 1 + i % 4}}, 3000 + static_cast<std::uint64_t>(i));
        const auto& p = inst.family.params;
        Rational beta = p.at("beta"), gamma = p.at("gamma");
        auto r = reduce_reciprocal(inst.expanded, beta, gamma);
        if (lift(r.poly, backmap::MobiusQuad{beta, gamma}) != inst.expanded)
            o.fail(inst.expression_text + ": replay identity fails");
        if (detect_generalized_reciprocal(inst.expanded) != gamma / beta) o.fail(inst.expression_text + ": wrong r");
    }
    for (int i = 0; i < 100; ++i) {
        long n = 1 + i % 4;
        long m = (i / 4) % n;
        auto inst = one(Family::Example5, {{"n", n}, {"m", m}}, 4000 + static_cast<std::uint64_t>(i));
        const auto& p = inst.family.params;
        Rational a = p.at("a"), b = p.at("b"), c = p.at("c");
        auto r = reduce_reciprocal(inst.expanded, Rational(1), a);
        if (lift(r.poly, backmap::MobiusQuad{Rational(1), a}) != inst.expanded)
            o.fail(inst.expression_text + ": replay identity fails");
        auto expected = Polynomial::monomial(Rational(1), static_cast<std::size_t>(n)) +
                        Polynomial::monomial(b, static_cast<std::size_t>(m)) + Polynomial::constant(c);
        if (r.poly != expected) o.fail(inst.expression_text + ": core " + render(r.poly, 'z'));
    }
    if (o.ok) o.detail = "200 instances, exact polynomial identities";
    return o;
}

Outcome iterated_factorization() {
    Outcome o;
    int count = 0;
    for (Family f : {Family::IteratedBinomial, Family::IteratedAffinePower}) {
        for (int i = 0; i < 50; ++i) {
            long n = 2 + i % 2;
            auto inst = one(f, {{"n", n}}, 5000 + static_cast<std::uint64_t>(i));
            const auto& inner = std::get<finding::IteratedPolynomial>(inst.certificate).inner;
            auto g = inner - Polynomial::identity();
            auto [q, rem] = div_rem(inst.expanded, g);
            if (!rem.is_zero()) o.fail(inst.expression_text + ": nonzero remainder");
            if (q.degree() != n * n - n) o.fail(inst.expression_text + ": deg Q = " + std::to_string(q.degree()));
            if (!detect_iterated(inst.expanded, static_cast<unsigned>(n)))
                o.fail(inst.expression_text + ": inner polynomial not recovered");
            ++count;
        }
    }
    polyred::testing::Gen gen(6000);
    for (int i = 0; i < 20; ++i) {
        Rational b = gen.rational(10, true);
        auto inner = Polynomial{b, Rational(0), Rational(1)};
        auto f = compose(inner, inner) - Polynomial::identity();
        auto split = factor_iterated(f, inner);
        if (split.fixed_points != (Polynomial{b, Rational(-1), Rational(1)}) ||
            split.cycles != (Polynomial{b + Rational(1), Rational(1), Rational(1)}))
            o.fail("x^2+" + b.str() + ": factors differ");
    }
    if (o.ok) o.detail = std::to_string(count) + " instances plus 20 worked factorizations";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    auto t0 = Clock::now();
    auto corpus = generate_mixed(20240601, 500);
    double worst_match = 0.0, worst_residual = 0.0;
    for (const auto& inst : corpus) {
        if (inst.expanded.degree() > 16) o.fail(inst.expression_text + ": degree above 16");
        try {
            auto report = solve_chain(reduce_fully(inst.expanded));
            auto direct = values(solve_core(inst.expanded));
            auto ours = values(report.roots);
            double rel = multiset_distance(ours, direct) / scale_of(direct);
            worst_match = std::max(worst_match, rel);
            worst_residual = std::max(worst_residual, report.max_residual);
            if (rel > 1e-8) o.fail(inst.expression_text + ": root sets differ by " + std::to_string(rel));
            if (report.max_residual > 1e-10) o.fail(inst.expression_text + ": residual above 1e-10");
        } catch (const Error& e) {
            o.fail(inst.expression_text + ": " + e.what());
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 60.0) o.fail("took " + std::to_string(secs) + " s");
    std::ostringstream d;
    d << "500 instances, worst match " << worst_match << ", worst residual " << worst_residual << ", " << secs
      << " s";
    if (o.ok) o.detail = d.str();
    else o.detail += " (" + d.str() + ")";
    return o;
}

Outcome pairing() {
    Outcome o;
    double worst = 0.0;
    FamilySpec even;
    even.family = Family::EvenOnly;
    even.seed = 7001;
    for (const auto& inst : generate(even, 200)) {
        auto roots = values(solve_chain(reduce_fully(inst.expanded)).roots);
        std::vector<Complex> neg;
        for (auto z : roots) neg.push_back(-z);
        double d = multiset_distance(roots, neg) / scale_of(roots);
        worst = std::max(worst, d);
        if (d > 1e-9) o.fail(inst.expression_text + ": not closed under negation");
    }
    for (int i = 0; i < 200; ++i) {
        auto inst = one(Family::GeneralizedReciprocal, {{"beta", 1}, {"gamma", 1}}, 7100 + static_cast<std::uint64_t>(i));
        auto roots = values(solve_chain(reduce_fully(inst.expanded)).roots);
        std::vector<Complex> inv;
        for (auto z : roots) inv.push_back(1.0 / z);
        double d = multiset_distance(roots, inv) / scale_of(roots);
        worst = std::max(worst, d);
        if (d > 1e-9) o.fail(inst.expression_text + ": not closed under inversion");
    }
    if (o.ok) o.detail = "400 instances, worst pairing distance " + std::to_string(worst);
    return o;
}

Outcome spot_checks() {
    Outcome o;
    auto a = solve_chain(reduce_fully(Polynomial{Rational(4), Rational(0), Rational(-5), Rational(0), Rational(1)}));
    if (multiset_distance(values(a.roots), {1.0, -1.0, 2.0, -2.0}) != 0.0) o.fail("x^4-5x^2+4: roots not exact");
    for (const auto& r : a.roots)
        if (r.value.imag() != 0.0) o.fail("x^4-5x^2+4: nonzero imaginary part");
    auto b = solve_chain(reduce_fully(Polynomial{Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)}));
    std::vector<Complex> expected;
    for (int k = 1; k < 5; ++k) expected.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 5));
    double d = multiset_distance(values(b.roots), expected);
    if (d > 1e-12) o.fail("x^4+x^3+x^2+x+1: distance " + std::to_string(d));
    if (o.ok) {
        std::ostringstream s;
        s << "roots {+-1, +-2} exact; fifth roots within " << d;
        o.detail = s.str();
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    auto dir = std::filesystem::temp_directory_path();
    auto p1 = dir / "polyred_acceptance_1.jsonl", p2 = dir / "polyred_acceptance_2.jsonl";
    emit_corpus(generate_mixed(424242, 500), p1, CorpusHeader{424242});
    emit_corpus(generate_mixed(424242, 500), p2, CorpusHeader{424242});
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    auto s1 = slurp(p1), s2 = slurp(p2);
    if (s1 != s2) o.fail("corpora differ");
    if (s1.empty()) o.fail("corpus is empty");
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
    if (o.ok) o.detail = std::to_string(s1.size()) + " identical bytes";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"degree halving on shift-symmetric families", degree_halving},
        {"exact root at the antisymmetry center", antisymmetric_root},
        {"generalized reciprocal replay identity", reciprocal_identity},
        {"iterated polynomial factorization", iterated_factorization},
        {"reduced solve matches direct solve", oracle_equivalence},
        {"root pairing under negation and inversion", pairing},
        {"concrete spot checks", spot_checks},
        {"corpus determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << '\n';
    }
    return failures == 0 ? 0 : 1;
}
