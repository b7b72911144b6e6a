// Shared test helpers: seeded generators and oracles that do not go through
// the code paths they are used to check.
#ifndef POLYRED_TESTS_SUPPORT_HPP
#define POLYRED_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "polyred/polynomial.hpp"

namespace polyred::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

    Rational rational(long limit = 9, bool nonzero = false) {
        for (;;) {
            long num = integer(-limit, limit);
            if (nonzero && num == 0) continue;
            return Rational(num, integer(1, limit));
        }
    }

    /// Random polynomial of exact degree d (d = -1 gives zero).
    Polynomial poly(int d, long limit = 9) {
        if (d < 0) return {};
        std::vector<Rational> c;
        for (int k = 0; k < d; ++k) c.push_back(rational(limit));
        c.push_back(rational(limit, true));
        return Polynomial(std::move(c));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// C(n, k) from Pascal's triangle.
inline Rational binomial(long n, long k) {
    std::vector<Rational> row{Rational(1)};
    for (long i = 1; i <= n; ++i) {
        std::vector<Rational> next(static_cast<std::size_t>(i + 1), Rational(1));
        for (long j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

/// (x + a)^n by the binomial theorem.
inline Polynomial binomial_power(const Rational& a, long n) {
    std::vector<Rational> c(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = binomial(n, k) * pow(a, n - k);
    return Polynomial(std::move(c));
}

/// Straight power-sum evaluation, no Horner.
inline Rational eval_naive(const Polynomial& f, const Rational& t) {
    Rational acc = 0;
    for (std::size_t k = 0; k < f.size(); ++k) acc += f.coeffs()[k] * pow(t, static_cast<long>(k));
    return acc;
}

/// Sample points used for "equal as polynomials" checks via evaluation.
inline std::vector<Rational> sample_points(std::size_t count) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
        long k = static_cast<long>(i);
        out.push_back(Rational(k % 2 ? -(k + 1) : k + 2, (k % 3) + 1));
    }
    return out;
}

inline double scale_of(const std::vector<std::complex<double>>& roots) {
    double m = 1.0;
    for (auto r : roots) m = std::max(m, std::abs(r));
    return m;
}

/// Greedy nearest matching of two root multisets; returns the largest
/// matched distance (infinity on size mismatch).
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (auto x : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(x - b[j]) < bd) {
                bd = std::abs(x - b[j]);
                best = j;
            }
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

}  // namespace polyred::testing

#endif  // POLYRED_TESTS_SUPPORT_HPP
