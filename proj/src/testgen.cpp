#include "polyred/testgen.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "polyred/parser.hpp"
#include "polyred/reduce.hpp"

namespace polyred {

namespace {

constexpr std::array kFamilies = {
    Family::EvenOnly,         Family::ShiftPowerSum,         Family::ShiftCross,
    Family::ShiftProduct,     Family::AntisymPowerSum,       Family::GeneralizedReciprocal,
    Family::Example5,         Family::IteratedBinomial,      Family::IteratedAffinePower,
};

constexpr int kMaxAttempts = 64;

// ---- expression text helpers ----

// "+3", "-1/2", "" for zero
std::string plus_const(const Rational& r) {
    if (r.is_zero()) return "";
    return (r.sign() > 0 ? "+" : "") + r.str();
}

// Coefficient written in front of a juxtaposed body.
std::string coef_prefix(const Rational& c) {
    if (c == Rational(1)) return "";
    if (c == Rational(-1)) return "-";
    return c.str();
}

// " + c*body" appended to a sum; body may be empty.
std::string signed_term(const Rational& c, const std::string& body) {
    if (c.is_zero()) return "";
    if (body.empty()) return plus_const(c);
    Rational mag = abs(c);
    return (c.sign() > 0 ? "+" : "-") + coef_prefix(mag) + body;
}

std::string pow_text(const std::string& base, long e) {
    if (e == 0) return "";
    if (e == 1) return base;
    return base + "^" + std::to_string(e);
}

std::string shifted_x(const Rational& a) { return "(x" + plus_const(a) + ")"; }

Polynomial x_plus(const Rational& a) { return Polynomial{a, Rational(1)}; }

Polynomial x_pow(long k) { return Polynomial::monomial(Rational(1), static_cast<std::size_t>(k)); }

// ---- parameter resolution ----

class Params {
public:
    Params(const std::map<std::string, Rational>& fixed, CorpusRng& rng, long limit)
        : fixed_(fixed), rng_(rng), limit_(limit) {}

    Rational value(const std::string& name, bool nonzero) {
        Rational v;
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            v = it->second;
            if (nonzero && v.is_zero()) throw InvalidSpec("parameter " + name + " must be nonzero");
        } else {
            v = rng_.rational(limit_, nonzero);
            drawn_ = true;
        }
        resolved_[name] = v;
        return v;
    }

    long degree(const std::string& name, long lo, long hi) {
        long v;
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            if (!it->second.is_integer() || it->second < Rational(lo) || it->second > Rational(hi))
                throw InvalidSpec("parameter " + name + " must be an integer in [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "], got " + it->second.str());
            v = it->second.numerator().get_si();
        } else {
            v = rng_.uniform(lo, hi);
            drawn_ = true;
        }
        resolved_[name] = Rational(v);
        return v;
    }

    bool any_drawn() const { return drawn_; }
    const std::map<std::string, Rational>& resolved() const { return resolved_; }

    void reject_unknown() const {
        for (const auto& [name, _] : fixed_)
            if (!resolved_.count(name)) throw InvalidSpec("unknown parameter '" + name + "' for this family");
    }

private:
    const std::map<std::string, Rational>& fixed_;
    CorpusRng& rng_;
    long limit_;
    bool drawn_ = false;
    std::map<std::string, Rational> resolved_;
};

struct Draft {
    std::string text;
    Polynomial direct;
    SymmetryFinding certificate;
    std::vector<int> degrees;
    std::vector<Rational> roots;
    int degree = 0;
    bool degenerate = false;
};

Draft draft_even(Params& p) {
    long n = p.degree("n", 1, 8);
    std::vector<Rational> c(static_cast<std::size_t>(2 * n + 1));
    for (long k = 0; k <= n; ++k)
        c[static_cast<std::size_t>(2 * k)] = p.value("a" + std::to_string(2 * k), k == 0 || k == n);
    Polynomial f(std::move(c));
    return {render(f), f, finding::EvenPowers{}, {static_cast<int>(n)}, {}, static_cast<int>(2 * n)};
}

Draft draft_shift_power_sum(Params& p) {
    long n = p.degree("n", 1, 8);
    Rational a = p.value("a", false), b = p.value("b", false), c = p.value("c", false);
    Polynomial f = pow(x_plus(a), 2 * n) + pow(x_plus(b), 2 * n) - Polynomial::constant(c);
    std::string text = pow_text(shifted_x(a), 2 * n) + "+" + pow_text(shifted_x(b), 2 * n) + plus_const(-c);
    Draft d{text, f, finding::ShiftSymmetric{-a - b}, {static_cast<int>(n)}, {}, static_cast<int>(2 * n)};
    d.degenerate = a == b;
    return d;
}

Draft draft_shift_cross(Params& p) {
    long n = p.degree("n", 1, 8);
    Rational a = p.value("a", false), b = p.value("b", false), c = p.value("c", false), dd = p.value("d", false);
    Polynomial f = pow(x_plus(a), 2 * n) + pow(x_plus(b), 2 * n) +
                   scale(x_plus(a) * x_plus(b), c) - Polynomial::constant(dd);
    std::string text = pow_text(shifted_x(a), 2 * n) + "+" + pow_text(shifted_x(b), 2 * n) +
                       signed_term(c, shifted_x(a) + shifted_x(b)) + plus_const(-dd);
    Draft d{text, f, finding::ShiftSymmetric{-a - b}, {static_cast<int>(n)}, {}, static_cast<int>(2 * n)};
    d.degenerate = a == b;
    return d;
}

Draft draft_shift_product(Params& p) {
    long n = p.degree("n", 1, 7);
    Rational a = p.value("a", false), b = p.value("b", false), c = p.value("c", false);
    Polynomial f = x_plus(a) * x_plus(b) * (pow(x_plus(a), 2 * n) + pow(x_plus(b), 2 * n)) - Polynomial::constant(c);
    std::string text = shifted_x(a) + shifted_x(b) + "(" + pow_text(shifted_x(a), 2 * n) + "+" +
                       pow_text(shifted_x(b), 2 * n) + ")" + plus_const(-c);
    Draft d{text, f, finding::ShiftSymmetric{-a - b}, {static_cast<int>(n + 1)}, {}, static_cast<int>(2 * n + 2)};
    d.degenerate = a == b;
    return d;
}

Draft draft_antisym(Params& p) {
    long n = p.degree("n", 1, 7);
    Rational a = p.value("a", false), b = p.value("b", false), c = p.value("c", false);
    Polynomial f = pow(x_plus(a), 2 * n + 1) + pow(x_plus(b), 2 * n + 1) + scale(Polynomial{a + b, Rational(2)}, c);
    std::string text = pow_text(shifted_x(a), 2 * n + 1) + "+" + pow_text(shifted_x(b), 2 * n + 1) +
                       signed_term(c, "(2x" + plus_const(a + b) + ")");
    Draft d{text, f, finding::ShiftAntisymmetric{-a - b}, {static_cast<int>(n)}, {-(a + b) / Rational(2)},
            static_cast<int>(2 * n + 1)};
    d.degenerate = a == b;
    return d;
}

Draft draft_generalized_reciprocal(Params& p) {
    long n = p.degree("n", 1, 8);
    std::vector<Rational> a;
    for (long k = 0; k <= n; ++k) a.push_back(p.value("a" + std::to_string(k), k == 0 || k == n - 1));
    Rational beta = p.value("beta", true), gamma = p.value("gamma", true);

    std::vector<Rational> c(static_cast<std::size_t>(2 * n + 1));
    std::vector<std::string> terms;
    auto paren = [](const Rational& r) { return "(" + r.str() + ")"; };
    for (long k = 0; k < n; ++k) {
        c[static_cast<std::size_t>(2 * n - k)] = a[k] * pow(beta, n - k);
        if (!a[k].is_zero())
            terms.push_back(paren(a[k]) + pow_text(paren(beta), n - k) + pow_text("x", 2 * n - k));
    }
    c[static_cast<std::size_t>(n)] = a[n];
    if (!a[n].is_zero()) terms.push_back(paren(a[n]) + pow_text("x", n));
    for (long k = n - 1; k >= 0; --k) {
        c[static_cast<std::size_t>(k)] = pow(gamma, n - k) * a[k];
        if (!a[k].is_zero()) terms.push_back(paren(a[k]) + pow_text(paren(gamma), n - k) + pow_text("x", k));
    }
    std::string text;
    for (const auto& t : terms) text += (text.empty() ? "" : "+") + t;
    return {text, Polynomial(std::move(c)), finding::GeneralizedReciprocal{gamma / beta}, {static_cast<int>(n)}, {},
            static_cast<int>(2 * n)};
}

Draft draft_example5(Params& p) {
    long n = p.degree("n", 1, 8);
    long m = p.degree("m", 0, n - 1);
    Rational a = p.value("a", true), b = p.value("b", false), c = p.value("c", false);
    Polynomial base{a, Rational(0), Rational(1)};
    Polynomial f = pow(base, n) + scale(x_pow(n - m) * pow(base, m), b) + scale(x_pow(n), c);
    std::string base_text = "(x^2" + plus_const(a) + ")";
    std::string text = pow_text(base_text, n) + signed_term(b, pow_text("x", n - m) + pow_text(base_text, m)) +
                       signed_term(c, pow_text("x", n));
    return {text, f, finding::GeneralizedReciprocal{a}, {static_cast<int>(n)}, {}, static_cast<int>(2 * n)};
}

Draft draft_iterated_binomial(Params& p) {
    long n = p.degree("n", 2, 4);
    Rational a = p.value("a", true), b = p.value("b", false);
    Polynomial inner = Polynomial::monomial(a, static_cast<std::size_t>(n)) + Polynomial::constant(b);
    Polynomial f = compose(inner, inner) - Polynomial::identity();
    std::string text = coef_prefix(a) + pow_text("(" + coef_prefix(a) + pow_text("x", n) + plus_const(b) + ")", n) +
                       "-x" + plus_const(b);
    int nn = static_cast<int>(n);
    return {text, f, finding::IteratedPolynomial{inner}, {nn, nn * nn - nn}, {}, nn * nn};
}

Draft draft_iterated_affine(Params& p) {
    long n = p.degree("n", 2, 4);
    Rational a = p.value("a", true), b = p.value("b", false);
    Polynomial inner = pow(Polynomial{b, a}, static_cast<unsigned long>(n));
    Polynomial f = compose(inner, inner) - Polynomial::identity();
    std::string lin = "(" + coef_prefix(a) + "x" + plus_const(b) + ")";
    std::string text = pow_text("(" + coef_prefix(a) + pow_text(lin, n) + plus_const(b) + ")", n) + "-x";
    int nn = static_cast<int>(n);
    return {text, f, finding::IteratedPolynomial{inner}, {nn, nn * nn - nn}, {}, nn * nn};
}

Draft draft(Family family, Params& p) {
    switch (family) {
        case Family::EvenOnly: return draft_even(p);
        case Family::ShiftPowerSum: return draft_shift_power_sum(p);
        case Family::ShiftCross: return draft_shift_cross(p);
        case Family::ShiftProduct: return draft_shift_product(p);
        case Family::AntisymPowerSum: return draft_antisym(p);
        case Family::GeneralizedReciprocal: return draft_generalized_reciprocal(p);
        case Family::Example5: return draft_example5(p);
        case Family::IteratedBinomial: return draft_iterated_binomial(p);
        case Family::IteratedAffinePower: return draft_iterated_affine(p);
    }
    throw InvalidSpec("unknown family");
}

Instance draw_instance(Family family, const std::map<std::string, Rational>& fixed, CorpusRng& rng, long limit,
                       std::uint64_t seed) {
    std::vector<std::string> last_problems;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Params p(fixed, rng, limit);
        Draft d = draft(family, p);
        p.reject_unknown();

        Polynomial expanded = parse_polynomial(d.text);
        if (expanded != d.direct)
            throw std::logic_error("testgen: expression '" + d.text + "' does not expand to the constructed polynomial");

        std::vector<std::string> problems;
        if (d.degenerate) problems.push_back("degenerate draw a = b");
        if (expanded.degree() != d.degree)
            problems.push_back("leading coefficient vanished (degree " + std::to_string(expanded.degree()) + ")");
        if (problems.empty()) problems = check_certificate(expanded, d.certificate, d.degrees, d.roots);

        if (problems.empty()) {
            FamilySpec resolved{family, p.resolved(), seed, limit};
            return {d.text, expanded, resolved, d.certificate, d.degrees, d.roots};
        }
        if (!p.any_drawn()) {
            std::string msg = "parameters do not give a valid " + family_name(family) + " instance:";
            for (const auto& s : problems) msg += " " + s + ";";
            throw InvalidSpec(msg);
        }
        last_problems = std::move(problems);
    }
    throw InvalidSpec("no valid " + family_name(family) + " instance after " + std::to_string(kMaxAttempts) +
                      " draws: " + (last_problems.empty() ? "" : last_problems.front()));
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::EvenOnly: return "EvenOnly";
        case Family::ShiftPowerSum: return "ShiftPowerSum";
        case Family::ShiftCross: return "ShiftCross";
        case Family::ShiftProduct: return "ShiftProduct";
        case Family::AntisymPowerSum: return "AntisymPowerSum";
        case Family::GeneralizedReciprocal: return "GeneralizedReciprocal";
        case Family::Example5: return "Example5";
        case Family::IteratedBinomial: return "IteratedBinomial";
        case Family::IteratedAffinePower: return "IteratedAffinePower";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : kFamilies)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

std::span<const Family> all_families() { return kFamilies; }

std::uint64_t CorpusRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("CorpusRng::below: empty range");
    // largest multiple of bound representable; values at or above it are rejected
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    for (;;) {
        std::uint64_t v = engine_();
        if (v <= limit) return v % bound;
    }
}

long CorpusRng::uniform(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational CorpusRng::rational(long limit, bool nonzero) {
    for (;;) {
        long num = uniform(-limit, limit);
        long den = uniform(1, limit);
        if (nonzero && num == 0) continue;
        return Rational(num, den);
    }
}

std::vector<Instance> generate(const FamilySpec& spec, std::size_t count) {
    if (spec.coeff_limit < 1) throw InvalidSpec("coefficient limit must be >= 1");
    CorpusRng rng(spec.seed);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(draw_instance(spec.family, spec.params, rng, spec.coeff_limit, spec.seed));
    return out;
}

std::vector<Instance> generate_mixed(std::uint64_t seed, std::size_t count, long coeff_limit) {
    if (coeff_limit < 1) throw InvalidSpec("coefficient limit must be >= 1");
    CorpusRng rng(seed);
    const std::map<std::string, Rational> none;
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(draw_instance(kFamilies[i % kFamilies.size()], none, rng, coeff_limit, seed));
    return out;
}

std::vector<std::string> check_certificate(const Polynomial& f, const SymmetryFinding& certificate,
                                           std::span<const int> expected_degrees,
                                           std::span<const Rational> exact_roots) {
    std::vector<std::string> problems;
    if (f.degree() < 1) return {"polynomial has degree < 1"};

    auto findings = classify(f);
    if (std::find(findings.begin(), findings.end(), certificate) == findings.end()) {
        std::string got;
        for (const auto& x : findings) got += (got.empty() ? "" : ", ") + describe(x);
        problems.push_back("certificate " + describe(certificate) + " not detected (found: " + got + ")");
    }

    try {
        ReductionStep step = apply_reduction(f, certificate);
        ReductionNode node{f, std::make_shared<const ReductionStep>(step)};
        if (replay(node) != f) problems.push_back("reduction does not replay to the input");

        std::vector<int> degrees;
        if (auto* anti = std::get_if<finding::ShiftAntisymmetric>(&certificate))
            degrees.push_back(reduce_shift(step.branches.at(0).node.poly, anti->lambda).poly.degree());
        else
            for (const Branch& b : step.branches) degrees.push_back(b.node.poly.degree());

        if (!std::equal(degrees.begin(), degrees.end(), expected_degrees.begin(), expected_degrees.end())) {
            std::string got, want;
            for (int d : degrees) got += " " + std::to_string(d);
            for (int d : expected_degrees) want += " " + std::to_string(d);
            problems.push_back("reduced degrees [" + got + " ] differ from expected [" + want + " ]");
        }
    } catch (const Error& e) {
        problems.push_back(std::string("certified reduction failed: ") + e.what());
    }

    for (const Rational& r : exact_roots)
        if (!eval(f, r).is_zero()) problems.push_back("expected exact root " + r.str() + " is not a root");
    return problems;
}

Json header_to_json(const CorpusHeader& h) {
    Json j;
    j["schema"] = "polyred-corpus-v1";
    j["seed"] = h.seed;
    j["rng"] = h.rng;
    return j;
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["expr"] = inst.expression_text;
    j["family"] = family_name(inst.family.family);
    Json params = Json::object();
    for (const auto& [name, v] : inst.family.params) params[name] = to_json(v);
    j["params"] = std::move(params);
    j["certificate"] = to_json(inst.certificate);
    j["expected_core_degree"] = inst.expected_core_degree();
    if (inst.expected_degrees.size() > 1) j["expected_factor_degrees"] = inst.expected_degrees;
    j["exact_roots"] = Json::array();
    for (const Rational& r : inst.exact_roots) j["exact_roots"].push_back(to_json(r));
    return j;
}

CorpusEntry entry_from_json(const Json& j) {
    CorpusEntry e;
    e.expr = j.at("expr").get<std::string>();
    e.family = j.at("family").get<std::string>();
    for (const auto& [name, v] : j.at("params").items()) e.params[name] = rational_from_json(v);
    e.certificate = finding_from_json(j.at("certificate"));
    if (j.contains("expected_factor_degrees"))
        e.expected_degrees = j.at("expected_factor_degrees").get<std::vector<int>>();
    else
        e.expected_degrees = {j.at("expected_core_degree").get<int>()};
    for (const Json& r : j.at("exact_roots")) e.exact_roots.push_back(rational_from_json(r));
    return e;
}

void write_corpus(std::ostream& os, std::span<const Instance> instances, std::optional<CorpusHeader> header) {
    if (!header && !instances.empty()) header = CorpusHeader{instances.front().family.seed};
    if (!header) return;
    os << header_to_json(*header).dump() << '\n';
    for (const Instance& inst : instances) os << instance_to_json(inst).dump() << '\n';
}

void emit_corpus(std::span<const Instance> instances, const std::filesystem::path& path,
                 std::optional<CorpusHeader> header) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    write_corpus(out, instances, std::move(header));
    out.flush();
    if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace polyred
