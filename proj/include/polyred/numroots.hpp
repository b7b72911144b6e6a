#ifndef POLYRED_NUMROOTS_HPP
#define POLYRED_NUMROOTS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "polyred/polynomial.hpp"
#include "polyred/reduce.hpp"

namespace polyred {

using Complex = std::complex<double>;

/// One hop of a root's path from a core up to the original polynomial.
struct ProvenanceHop {
    std::string via;  ///< e.g. "core", "exact", "Square(-2)", "Identity"
    int branch = 0;   ///< +1 / -1 for the two back-map branches, 0 otherwise
};

struct ComplexRoot {
    Complex value;
    double residual = 0.0;
    std::optional<Rational> exact;  ///< set when the root is known exactly
    int multiplicity = 1;           ///< heuristic cluster count
    std::vector<ProvenanceHop> provenance;
};

struct NoConvergence : Error {
    NoConvergence(int iters, double worst)
        : Error("root finder did not converge after " + std::to_string(iters) +
                " iterations (worst residual " + std::to_string(worst) + ")"),
          iterations(iters), worst_residual(worst) {}
    int iterations;
    double worst_residual;
};

struct VerificationFailure : Error {
    VerificationFailure(Complex r, double res)
        : Error("root (" + std::to_string(r.real()) + ", " + std::to_string(r.imag()) +
                ") has residual " + std::to_string(res) + " against the original polynomial"),
          root(r), residual(res) {}
    Complex root;
    double residual;
};

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kDefaultMaxIter = 200;
/// Roots closer than this (relative to max(1, |x|)) count toward the same multiplicity.
inline constexpr double kClusterRadius = 1e-6;

/// Double coefficients with the largest relative rounding error of the conversion.
struct FloatCoefficients {
    BasicPolynomial<double> poly;
    double max_relative_error = 0.0;
};

/// Round-to-nearest conversion; throws CoefficientOverflow.
FloatCoefficients to_floating(const Polynomial& f);

/// |f(x)| / sum |c_k| |x|^k; zero when the scale vanishes.
double relative_residual(const BasicPolynomial<double>& f, Complex x);

/// Both roots of a x^2 + b x + c, avoiding cancellation.
std::vector<ComplexRoot> solve_quadratic(const Rational& a, const Rational& b, const Rational& c);

/// Both roots of beta x^2 - z x + gamma for complex z.
std::pair<Complex, Complex> solve_mobius_quadratic(double beta, Complex z, double gamma);

/// All roots with multiplicity by Aberth-Ehrlich simultaneous iteration in
/// double, refined with Newton ratios evaluated in 256-bit arithmetic.
std::vector<ComplexRoot> solve_core(const Polynomial& f, double tol = kDefaultTolerance,
                                    int max_iter = kDefaultMaxIter);

/// Lifts roots in z to roots in x through the inverse substitution; output size 2n for
/// Square / MobiusQuad, n for Identity.
std::vector<ComplexRoot> backmap_roots(const std::vector<ComplexRoot>& z_roots, const BackMap& m);

struct RootReport {
    Polynomial original;
    std::vector<ComplexRoot> roots;
    double tolerance = kDefaultTolerance;
    double max_residual = 0.0;
    double conversion_error = 0.0;
};

/// Solves every core, back-maps through the tree and verifies each root
/// against the original polynomial. Throws VerificationFailure.
RootReport solve_chain(const ReductionChain& chain, double tol = kDefaultTolerance,
                       int max_iter = kDefaultMaxIter);

/// Fills ComplexRoot::multiplicity by clustering within kClusterRadius.
void estimate_multiplicities(std::vector<ComplexRoot>& roots);

}  // namespace polyred

#endif  // POLYRED_NUMROOTS_HPP
