#ifndef POLYRED_SERIALIZE_HPP
#define POLYRED_SERIALIZE_HPP

#include <json.hpp>

#include "polyred/numroots.hpp"
#include "polyred/polynomial.hpp"
#include "polyred/reduce.hpp"
#include "polyred/symmetry.hpp"

// JSON forms. Rationals are strings ("p" or "p/q"), polynomials are arrays of
// coefficient strings in ascending powers, complex roots are objects with
// numeric "re"/"im"/"residual".

namespace polyred {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json to_json(const SymmetryFinding& f);
SymmetryFinding finding_from_json(const Json& j);

Json to_json(const BackMap& m);
BackMap backmap_from_json(const Json& j);

/// {"original", "original_text", "tree", "cores"}; each tree node is
/// {"poly", "text", "step"} with step null for cores.
Json to_json(const ReductionChain& chain);
ReductionChain chain_from_json(const Json& j);

Json to_json(const ComplexRoot& r);
Json to_json(const RootReport& report);

}  // namespace polyred

#endif  // POLYRED_SERIALIZE_HPP
