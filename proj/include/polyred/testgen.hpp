#ifndef POLYRED_TESTGEN_HPP
#define POLYRED_TESTGEN_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyred/polynomial.hpp"
#include "polyred/serialize.hpp"
#include "polyred/symmetry.hpp"

namespace polyred {

/// Parametric equation families with a known symmetry.
enum class Family {
    EvenOnly,               ///< sum a_{2k} x^{2k}
    ShiftPowerSum,          ///< (x+a)^{2n} + (x+b)^{2n} - c
    ShiftCross,             ///< (x+a)^{2n} + (x+b)^{2n} + c(x+a)(x+b) - d
    ShiftProduct,           ///< (x+a)(x+b)[(x+a)^{2n} + (x+b)^{2n}] - c
    AntisymPowerSum,        ///< (x+a)^{2n+1} + (x+b)^{2n+1} + c(2x+a+b)
    GeneralizedReciprocal,  ///< a_k beta^{n-k} x^{2n-k} + a_n x^n + gamma^{n-k} a_k x^k
    Example5,               ///< (x^2+a)^n + b x^{n-m} (x^2+a)^m + c x^n
    IteratedBinomial,       ///< a(a x^n + b)^n - x + b
    IteratedAffinePower,    ///< (a(a x + b)^n + b)^n - x
};

std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
std::span<const Family> all_families();

struct FamilySpec {
    Family family = Family::EvenOnly;
    /// Fixed parameters (including degrees "n", "m"); anything absent is drawn.
    std::map<std::string, Rational> params;
    std::uint64_t seed = 0;
    /// Bound on numerators and denominators of drawn rationals.
    long coeff_limit = 10;
};

struct Instance {
    std::string expression_text;
    Polynomial expanded;
    /// The spec with every parameter resolved.
    FamilySpec family;
    SymmetryFinding certificate;
    /// Degree of the polynomial produced by the certified reduction; for the
    /// iterated families the two factor degrees n and n^2 - n.
    std::vector<int> expected_degrees;
    std::vector<Rational> exact_roots;

    int expected_core_degree() const { return expected_degrees.front(); }
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct IoFailure : Error {
    using Error::Error;
};

/// mt19937_64 with unbiased bounded draws by rejection, so that corpora are
/// reproducible across standard libraries and languages.
class CorpusRng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/rejection-v1";

    explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    long uniform(long lo, long hi);
    /// p/q with |p| <= limit, 1 <= q <= limit.
    Rational rational(long limit, bool nonzero);

private:
    std::mt19937_64 engine_;
};

/// `count` deterministic instances of one family. Throws InvalidSpec.
std::vector<Instance> generate(const FamilySpec& spec, std::size_t count);

/// Instances cycling through every family, drawn from one stream seeded by `seed`.
std::vector<Instance> generate_mixed(std::uint64_t seed, std::size_t count, long coeff_limit = 10);

/// Problems found when re-deriving the certificate of a polynomial; empty means it holds.
std::vector<std::string> check_certificate(const Polynomial& f, const SymmetryFinding& certificate,
                                           std::span<const int> expected_degrees,
                                           std::span<const Rational> exact_roots);

struct CorpusHeader {
    std::uint64_t seed = 0;
    std::string rng{CorpusRng::kAlgorithm};
};

Json header_to_json(const CorpusHeader& h);
Json instance_to_json(const Instance& inst);

/// One corpus line as read back.
struct CorpusEntry {
    std::string expr;
    std::string family;
    std::map<std::string, Rational> params;
    SymmetryFinding certificate;
    std::vector<int> expected_degrees;
    std::vector<Rational> exact_roots;
};

CorpusEntry entry_from_json(const Json& j);

/// Header line followed by one line per instance. The header seed defaults to
/// the first instance's seed; an empty list without a header writes an empty file.
void write_corpus(std::ostream& os, std::span<const Instance> instances,
                  std::optional<CorpusHeader> header = std::nullopt);

/// write_corpus to a file. Throws IoFailure.
void emit_corpus(std::span<const Instance> instances, const std::filesystem::path& path,
                 std::optional<CorpusHeader> header = std::nullopt);

}  // namespace polyred

#endif  // POLYRED_TESTGEN_HPP
