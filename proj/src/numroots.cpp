#include "polyred/numroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <mpfr.h>

namespace polyred {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Fixed irrational angular offset of the initial configuration.
const double kAngleOffset = std::numbers::sqrt2 - 1.0;
constexpr int kRefineIterations = 100;

ComplexRoot exact_root_of(const Rational& r, std::string via) {
    ComplexRoot out;
    out.value = Complex(r.to_double(), 0.0);
    out.exact = r;
    out.provenance.push_back({std::move(via), 0});
    return out;
}

// Unique positive root of |a_d| x^d - sum_{k<d} |a_k| x^k: every root lies within it.
// Bisection runs on the form divided by x^d, which is increasing and cannot overflow.
double cauchy_bound(const BasicPolynomial<double>& p) {
    const int d = p.degree();
    const double lead = std::abs(p.leading());
    auto h = [&](double x) {
        double lower = 0.0;
        double inv = 1.0 / x;
        for (int k = 0; k < d; ++k) lower = (lower + std::abs(p.coeffs()[static_cast<std::size_t>(k)])) * inv;
        return lead - lower;
    };
    // Fujiwara: 2 max |a_{d-k} / a_d|^{1/k} bounds the root.
    double hi = 0.0;
    for (int k = 1; k <= d; ++k)
        hi = std::max(hi, std::pow(std::abs(p.coeffs()[static_cast<std::size_t>(d - k)]) / lead, 1.0 / k));
    hi = 2.0 * hi;
    if (hi == 0.0) return 0.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

std::vector<Complex> aberth(const BasicPolynomial<double>& p, double tol, int max_iter) {
    const auto d = static_cast<std::size_t>(p.degree());
    const BasicPolynomial<double> dp = derivative(p);
    const double radius = cauchy_bound(p);
    const double noise_floor = 8.0 * static_cast<double>(d + 1) * kEps;

    std::vector<Complex> z(d);
    for (std::size_t k = 0; k < d; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) +
                                      kAngleOffset);

    std::vector<bool> done(d, false);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            Complex pv = eval(p, z[i]);
            if (pv == Complex{} || relative_residual(p, z[i]) <= noise_floor) {
                done[i] = true;
                continue;
            }
            Complex ratio = pv / eval(dp, z[i]);
            Complex repulsion{};
            for (std::size_t j = 0; j < d; ++j)
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            z[i] -= step;
            if (std::abs(step) <= tol * std::abs(z[i]) || relative_residual(p, z[i]) <= noise_floor)
                done[i] = true;
            else
                all_done = false;
        }
        if (all_done) break;
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
            worst = std::numeric_limits<double>::infinity();
            break;
        }
        if (!done[i]) worst = std::max(worst, relative_residual(p, z[i]));
    }
    if (!(worst <= tol)) throw NoConvergence(iter, worst);
    return z;
}

std::vector<ComplexRoot> solve_leaf(const Polynomial& f, double tol, int max_iter) {
    if (f.degree() == 1) return {exact_root_of(-f.coeffs()[0] / f.coeffs()[1], "core")};
    if (f.degree() == 2) {
        auto roots = solve_quadratic(f.coeffs()[2], f.coeffs()[1], f.coeffs()[0]);
        for (auto& r : roots) r.provenance = {{"core", 0}};
        return roots;
    }
    return solve_core(f, tol, max_iter);
}

// Complex Horner evaluation of an exact polynomial and its derivative in
// 256-bit floating point, used to refine double roots past the accuracy that
// double evaluation allows on badly conditioned inputs.
class PreciseEvaluator {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    explicit PreciseEvaluator(const Polynomial& f) : coeffs_(f.size()) {
        for (std::size_t k = 0; k < f.size(); ++k) mpfr_set_q(coeffs_[k].v, f.coeffs()[k].value().get_mpq_t(), MPFR_RNDN);
    }

    /// Newton correction f(x)/f'(x) rounded to double, and |f(x)| in double
    /// (compared relative to each other, so underflow to 0 is harmless).
    std::pair<Complex, double> newton(Complex x) {
        mpfr_set_d(xr_.v, x.real(), MPFR_RNDN);
        mpfr_set_d(xi_.v, x.imag(), MPFR_RNDN);
        mpfr_set_zero(pr_.v, 1);
        mpfr_set_zero(pi_.v, 1);
        mpfr_set_zero(dr_.v, 1);
        mpfr_set_zero(di_.v, 1);
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            mul_x(dr_, di_);  // d = d * x + p
            mpfr_add(dr_.v, dr_.v, pr_.v, MPFR_RNDN);
            mpfr_add(di_.v, di_.v, pi_.v, MPFR_RNDN);
            mul_x(pr_, pi_);  // p = p * x + c_k
            mpfr_add(pr_.v, pr_.v, coeffs_[k].v, MPFR_RNDN);
        }
        // |p| and p / d
        mpfr_hypot(t1_.v, pr_.v, pi_.v, MPFR_RNDN);
        double magnitude = mpfr_get_d(t1_.v, MPFR_RNDN);
        mpfr_sqr(t1_.v, dr_.v, MPFR_RNDN);
        mpfr_sqr(t2_.v, di_.v, MPFR_RNDN);
        mpfr_add(t1_.v, t1_.v, t2_.v, MPFR_RNDN);  // |d|^2
        if (mpfr_zero_p(t1_.v)) return {Complex{}, magnitude};
        mpfr_mul(t2_.v, pr_.v, dr_.v, MPFR_RNDN);
        mpfr_mul(t3_.v, pi_.v, di_.v, MPFR_RNDN);
        mpfr_add(t2_.v, t2_.v, t3_.v, MPFR_RNDN);
        mpfr_div(t2_.v, t2_.v, t1_.v, MPFR_RNDN);
        double re = mpfr_get_d(t2_.v, MPFR_RNDN);
        mpfr_mul(t2_.v, pi_.v, dr_.v, MPFR_RNDN);
        mpfr_mul(t3_.v, pr_.v, di_.v, MPFR_RNDN);
        mpfr_sub(t2_.v, t2_.v, t3_.v, MPFR_RNDN);
        mpfr_div(t2_.v, t2_.v, t1_.v, MPFR_RNDN);
        return {Complex(re, mpfr_get_d(t2_.v, MPFR_RNDN)), magnitude};
    }

private:
    struct Mp {
        Mp() { mpfr_init2(v, kPrecision); }
        Mp(const Mp&) : Mp() {}
        Mp& operator=(const Mp&) = delete;
        ~Mp() { mpfr_clear(v); }
        mpfr_t v;
    };

    // (a + bi) *= x
    void mul_x(Mp& a, Mp& b) {
        mpfr_mul(t1_.v, a.v, xr_.v, MPFR_RNDN);
        mpfr_mul(t2_.v, b.v, xi_.v, MPFR_RNDN);
        mpfr_mul(t3_.v, a.v, xi_.v, MPFR_RNDN);
        mpfr_mul(b.v, b.v, xr_.v, MPFR_RNDN);
        mpfr_add(b.v, b.v, t3_.v, MPFR_RNDN);
        mpfr_sub(a.v, t1_.v, t2_.v, MPFR_RNDN);
    }

    std::vector<Mp> coeffs_;
    Mp xr_, xi_, pr_, pi_, dr_, di_, t1_, t2_, t3_;
};

// Aberth refinement against the exact polynomial the roots belong to, with
// Newton ratios from the precise evaluator. Exact roots stay fixed but still
// repel their neighbours. Converges quadratically at simple roots and
// linearly at multiple ones, without the double-precision noise floor.
void refine(std::vector<ComplexRoot>& roots, const Polynomial& f) {
    PreciseEvaluator ev(f);
    const std::size_t n = roots.size();
    std::vector<bool> done(n);
    for (std::size_t i = 0; i < n; ++i) done[i] = roots[i].exact.has_value();
    for (int it = 0; it < kRefineIterations; ++it) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            Complex& z = roots[i].value;
            auto [ratio, size] = ev.newton(z);
            if (size == 0.0 || ratio == Complex{} || !std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
                done[i] = true;
                continue;
            }
            Complex repulsion{};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && roots[j].value != z) repulsion += 1.0 / (z - roots[j].value);
            Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            Complex next = z - step;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
                done[i] = true;
                continue;
            }
            if (std::abs(next - z) <= 2.0 * kEps * std::abs(z)) done[i] = true;
            if (next != z) moved = true;
            z = next;
        }
        if (!moved) break;
    }
}

// x = 0 is known exactly when the constant term vanishes; the scale-relative
// residual cannot certify a tiny nonzero approximation of it.
void snap_zero_roots(std::vector<ComplexRoot>& roots, const Polynomial& f) {
    std::size_t zeros = 0;
    while (zeros < f.size() && f.coeffs()[zeros].is_zero()) ++zeros;
    std::size_t known = static_cast<std::size_t>(
        std::count_if(roots.begin(), roots.end(), [](const ComplexRoot& r) { return r.exact && r.exact->is_zero(); }));
    while (known < zeros) {
        auto it = std::min_element(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
            auto key = [](const ComplexRoot& r) {
                return r.exact ? std::numeric_limits<double>::infinity() : std::abs(r.value);
            };
            return key(a) < key(b);
        });
        if (it == roots.end() || it->exact) break;
        it->value = Complex{};
        it->exact = Rational(0);
        ++known;
    }
}

std::vector<ComplexRoot> solve_node(const ReductionNode& node, double tol, int max_iter) {
    if (node.is_core()) return solve_leaf(node.poly, tol, max_iter);
    std::vector<ComplexRoot> out;
    for (const Rational& r : node.step->exact_roots) out.push_back(exact_root_of(r, "exact"));
    for (std::size_t i = 0; i < node.step->branches.size(); ++i) {
        const Branch& b = node.step->branches[i];
        auto lifted = backmap_roots(solve_node(b.node, tol, max_iter), b.backmap);
        if (node.step->branches.size() > 1)
            for (auto& r : lifted) r.provenance.back().via += "[" + std::to_string(i) + "]";
        out.insert(out.end(), std::make_move_iterator(lifted.begin()), std::make_move_iterator(lifted.end()));
    }
    refine(out, node.poly);
    snap_zero_roots(out, node.poly);
    return out;
}

}  // namespace

FloatCoefficients to_floating(const Polynomial& f) {
    FloatCoefficients out;
    std::vector<double> c;
    c.reserve(f.size());
    for (const Rational& v : f.coeffs()) {
        double d = v.to_double();
        c.push_back(d);
        if (!v.is_zero()) {
            Rational err = abs((Rational(mpq_class(d)) - v) / v);
            out.max_relative_error = std::max(out.max_relative_error, err.to_double());
        }
    }
    out.poly = BasicPolynomial<double>(std::move(c));
    return out;
}

double relative_residual(const BasicPolynomial<double>& f, Complex x) {
    const double ax = std::abs(x);
    Complex value{};
    double scale = 0.0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        value = value * x + *it;
        scale = scale * ax + std::abs(*it);
    }
    if (scale == 0.0) return 0.0;
    return std::abs(value) / scale;
}

std::vector<ComplexRoot> solve_quadratic(const Rational& a, const Rational& b, const Rational& c) {
    if (a.is_zero()) throw std::invalid_argument("solve_quadratic: leading coefficient is zero");
    const Rational disc = b * b - Rational(4) * a * c;

    if (auto s = exact_root(disc, 2)) {
        const Rational two_a = Rational(2) * a;
        return {exact_root_of((-b + *s) / two_a, "quadratic"), exact_root_of((-b - *s) / two_a, "quadratic")};
    }

    const BasicPolynomial<double> q = to_floating(Polynomial{c, b, a}).poly;
    const double ad = a.to_double(), bd = b.to_double(), cd = c.to_double();
    const double dd = disc.to_double();
    Complex x1, x2;
    if (disc.sign() >= 0) {
        double t = -0.5 * (bd + std::copysign(std::sqrt(dd), bd));
        x1 = t / ad;
        x2 = cd / t;
    } else {
        double re = -bd / (2.0 * ad);
        double im = std::sqrt(-dd) / (2.0 * std::abs(ad));
        x1 = {re, im};
        x2 = {re, -im};
    }
    std::vector<ComplexRoot> out(2);
    out[0].value = x1;
    out[1].value = x2;
    for (auto& r : out) {
        r.residual = relative_residual(q, r.value);
        r.provenance.push_back({"quadratic", 0});
    }
    return out;
}

std::pair<Complex, Complex> solve_mobius_quadratic(double beta, Complex z, double gamma) {
    Complex s = std::sqrt(z * z - 4.0 * beta * gamma);
    Complex t = std::abs(z + s) >= std::abs(z - s) ? 0.5 * (z + s) : 0.5 * (z - s);
    if (t == Complex{}) return {Complex{}, Complex{}};
    // roots multiply to gamma/beta
    return {t / beta, gamma / t};
}

std::vector<ComplexRoot> solve_core(const Polynomial& f, double tol, int max_iter) {
    if (f.degree() < 1) throw std::invalid_argument("solve_core: polynomial must have degree >= 1");
    if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("solve_core: need tol > 0 and max_iter >= 1");

    std::vector<ComplexRoot> out;
    std::size_t zeros = 0;
    while (f.coeffs()[zeros].is_zero()) ++zeros;
    for (std::size_t k = 0; k < zeros; ++k) out.push_back(exact_root_of(Rational(0), "core"));

    Polynomial g(std::vector<Rational>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), f.coeffs().end()));
    if (g.degree() == 1) out.push_back(exact_root_of(-g.coeffs()[0] / g.coeffs()[1], "core"));
    if (g.degree() < 2) return out;

    const BasicPolynomial<double> p = to_floating(g).poly;
    std::vector<ComplexRoot> found;
    for (Complex z : aberth(p, tol, max_iter)) {
        ComplexRoot r;
        r.value = z;
        r.provenance.push_back({"core", 0});
        found.push_back(std::move(r));
    }
    refine(found, g);
    for (auto& r : found) {
        r.residual = relative_residual(p, r.value);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ComplexRoot> backmap_roots(const std::vector<ComplexRoot>& z_roots, const BackMap& m) {
    std::vector<ComplexRoot> out;
    out.reserve(2 * z_roots.size());

    auto emit = [&](const ComplexRoot& from, Complex x, std::optional<Rational> exact, int branch) {
        ComplexRoot r = from;
        r.value = exact ? Complex(exact->to_double(), 0.0) : x;
        r.exact = std::move(exact);
        r.multiplicity = 1;
        r.provenance.push_back({describe(m), branch});
        out.push_back(std::move(r));
    };

    std::visit(overloaded{
                   [&](const backmap::Square& s) {
                       const double mu = s.center.to_double();
                       for (const ComplexRoot& z : z_roots) {
                           Complex root = std::sqrt(z.value);
                           std::optional<Rational> exact_sqrt;
                           if (z.exact) exact_sqrt = exact_root(*z.exact, 2);
                           for (int sign : {+1, -1}) {
                               std::optional<Rational> ex;
                               if (exact_sqrt) ex = s.center + Rational(sign) * *exact_sqrt;
                               emit(z, mu + static_cast<double>(sign) * root, ex, sign);
                           }
                       }
                   },
                   [&](const backmap::MobiusQuad& q) {
                       const double beta = q.beta.to_double(), gamma = q.gamma.to_double();
                       for (const ComplexRoot& z : z_roots) {
                           auto [x1, x2] = solve_mobius_quadratic(beta, z.value, gamma);
                           std::optional<Rational> e1, e2;
                           if (z.exact) {
                               Rational disc = *z.exact * *z.exact - Rational(4) * q.beta * q.gamma;
                               if (auto s = exact_root(disc, 2)) {
                                   e1 = (*z.exact + *s) / (Rational(2) * q.beta);
                                   e2 = (*z.exact - *s) / (Rational(2) * q.beta);
                               }
                           }
                           emit(z, x1, e1, +1);
                           emit(z, x2, e2, -1);
                       }
                   },
                   [&](const backmap::Identity&) {
                       for (const ComplexRoot& z : z_roots) emit(z, z.value, z.exact, 0);
                   },
               },
               m);
    return out;
}

void estimate_multiplicities(std::vector<ComplexRoot>& roots) {
    for (ComplexRoot& r : roots) {
        const double radius = kClusterRadius * std::max(1.0, std::abs(r.value));
        r.multiplicity = static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](const ComplexRoot& o) {
            return std::abs(o.value - r.value) <= radius;
        }));
    }
}

RootReport solve_chain(const ReductionChain& chain, double tol, int max_iter) {
    RootReport report;
    report.original = chain.original;
    report.tolerance = tol;
    report.roots = solve_node(chain.root, tol, max_iter);

    const FloatCoefficients fl = to_floating(chain.original);
    report.conversion_error = fl.max_relative_error;
    for (ComplexRoot& r : report.roots) {
        if (r.exact && eval(chain.original, *r.exact).is_zero())
            r.residual = 0.0;
        else
            r.residual = relative_residual(fl.poly, r.value);
        report.max_residual = std::max(report.max_residual, r.residual);
        if (!(r.residual <= tol)) throw VerificationFailure(r.value, r.residual);
    }
    if (static_cast<int>(report.roots.size()) != chain.original.degree())
        throw std::logic_error("solve_chain: root count does not match degree");
    estimate_multiplicities(report.roots);
    return report;
}

}  // namespace polyred
