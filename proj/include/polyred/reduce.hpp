#ifndef POLYRED_REDUCE_HPP
#define POLYRED_REDUCE_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "polyred/polynomial.hpp"
#include "polyred/symmetry.hpp"

namespace polyred {

namespace backmap {

/// z = (x - center)^2; x = center +- sqrt(z).
struct Square {
    Rational center;
    friend bool operator==(const Square&, const Square&) = default;
};
/// z = beta x + gamma / x; x solves beta x^2 - z x + gamma = 0.
struct MobiusQuad {
    Rational beta;
    Rational gamma;
    friend bool operator==(const MobiusQuad&, const MobiusQuad&) = default;
};
/// The produced polynomial is a factor in the same variable.
struct Identity {
    friend bool operator==(const Identity&, const Identity&) = default;
};

}  // namespace backmap

using BackMap = std::variant<backmap::Square, backmap::MobiusQuad, backmap::Identity>;

/// Roots of the original per root of the produced polynomial: 2 or 1.
int multiplier(const BackMap& m);
std::string kind_name(const BackMap& m);
std::string describe(const BackMap& m);

struct ReductionStep;

struct ReductionNode {
    Polynomial poly;
    std::shared_ptr<const ReductionStep> step;  ///< null for a core

    bool is_core() const { return step == nullptr; }
};

struct Branch {
    BackMap backmap;
    ReductionNode node;
};

/// One applied reduction. Invariant:
/// deg(input) = sum(deg(branch.node.poly) * multiplier(branch.backmap)) + exact_roots.size().
struct ReductionStep {
    SymmetryFinding finding;
    std::vector<Rational> exact_roots;
    std::vector<Branch> branches;
};

struct ReductionChain {
    Polynomial original;
    ReductionNode root;

    /// Leaves of the tree, depth first.
    std::vector<Polynomial> cores() const;
    std::size_t step_count() const;
};

struct NotEven : Error {
    using Error::Error;
};
struct NotShiftSymmetric : Error {
    using Error::Error;
};
struct NotAntisymmetric : Error {
    using Error::Error;
};
struct NotGeneralizedReciprocal : Error {
    using Error::Error;
};
struct NotIterated : Error {
    using Error::Error;
};

struct Reduced {
    Polynomial poly;
    BackMap backmap;
};

/// g with g(x^2) = f(x).
Reduced reduce_even(const Polynomial& f);

/// g with g((x - lambda/2)^2) = f(x).
Reduced reduce_shift(const Polynomial& f, const Rational& lambda);

struct AntisymmetricSplit {
    Rational root;        ///< lambda/2
    Polynomial quotient;  ///< f / (x - lambda/2), symmetric about lambda/2
};

AntisymmetricSplit factor_antisymmetric(const Polynomial& f, const Rational& lambda);

/// R of degree n with x^n R(beta x + gamma/x) = f(x), deg f = 2n.
Reduced reduce_reciprocal(const Polynomial& f, const Rational& beta, const Rational& gamma);

struct IteratedSplit {
    Polynomial fixed_points;  ///< P(x) - x
    Polynomial cycles;        ///< (P(P(x)) - x) / (P(x) - x), degree n^2 - n
};

IteratedSplit factor_iterated(const Polynomial& f, const Polynomial& inner);

/// Applies the reduction certified by `finding` once; produced polynomials are left as cores.
ReductionStep apply_reduction(const Polynomial& f, const SymmetryFinding& finding);

/// Reduces recursively by the highest-priority finding until every leaf has
/// degree <= 2 or no detected symmetry.
ReductionChain reduce_fully(const Polynomial& f);

/// Inverse substitution: the polynomial in x whose reduction produced `reduced`.
Polynomial lift(const Polynomial& reduced, const BackMap& m);

/// Rebuilds a node's polynomial from its children alone.
Polynomial replay(const ReductionNode& node);

}  // namespace polyred

#endif  // POLYRED_REDUCE_HPP
