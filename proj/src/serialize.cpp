#include "polyred/serialize.hpp"

namespace polyred {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

char variable_for(const BackMap& m) { return std::holds_alternative<backmap::Identity>(m) ? 'x' : 'z'; }

Json node_to_json(const ReductionNode& node, char var) {
    Json j;
    j["poly"] = to_json(node.poly);
    j["text"] = render(node.poly, var);
    if (node.is_core()) {
        j["step"] = nullptr;
        return j;
    }
    Json step;
    step["finding"] = to_json(node.step->finding);
    step["exact_roots"] = Json::array();
    for (const Rational& r : node.step->exact_roots) step["exact_roots"].push_back(to_json(r));
    step["branches"] = Json::array();
    for (const Branch& b : node.step->branches) {
        Json bj;
        bj["backmap"] = to_json(b.backmap);
        bj["node"] = node_to_json(b.node, variable_for(b.backmap));
        step["branches"].push_back(std::move(bj));
    }
    j["step"] = std::move(step);
    return j;
}

ReductionNode node_from_json(const Json& j) {
    ReductionNode node{polynomial_from_json(j.at("poly")), nullptr};
    const Json& sj = j.at("step");
    if (sj.is_null()) return node;
    ReductionStep step{finding_from_json(sj.at("finding")), {}, {}};
    for (const Json& r : sj.at("exact_roots")) step.exact_roots.push_back(rational_from_json(r));
    for (const Json& b : sj.at("branches"))
        step.branches.push_back({backmap_from_json(b.at("backmap")), node_from_json(b.at("node"))});
    node.step = std::make_shared<const ReductionStep>(std::move(step));
    return node;
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return Rational::parse(j.get<std::string>());
}

Json to_json(const Polynomial& p) {
    Json j = Json::array();
    for (const Rational& c : p.coeffs()) j.push_back(to_json(c));
    return j;
}

Polynomial polynomial_from_json(const Json& j) {
    std::vector<Rational> c;
    for (const Json& v : j) c.push_back(rational_from_json(v));
    return Polynomial(std::move(c));
}

Json to_json(const SymmetryFinding& f) {
    Json j;
    j["kind"] = kind_name(f);
    std::visit(overloaded{
                   [&](const finding::ShiftSymmetric& s) { j["lambda"] = to_json(s.lambda); },
                   [&](const finding::ShiftAntisymmetric& s) { j["lambda"] = to_json(s.lambda); },
                   [&](const finding::GeneralizedReciprocal& s) { j["r"] = to_json(s.r); },
                   [&](const finding::IteratedPolynomial& s) { j["inner"] = to_json(s.inner); },
                   [](const auto&) {},
               },
               f);
    return j;
}

SymmetryFinding finding_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "EvenPowers") return finding::EvenPowers{};
    if (kind == "ShiftSymmetric") return finding::ShiftSymmetric{rational_from_json(j.at("lambda"))};
    if (kind == "ShiftAntisymmetric") return finding::ShiftAntisymmetric{rational_from_json(j.at("lambda"))};
    if (kind == "Reciprocal") return finding::Reciprocal{};
    if (kind == "GeneralizedReciprocal") return finding::GeneralizedReciprocal{rational_from_json(j.at("r"))};
    if (kind == "IteratedPolynomial") return finding::IteratedPolynomial{polynomial_from_json(j.at("inner"))};
    if (kind == "NoneFound") return finding::NoneFound{};
    throw std::invalid_argument("unknown symmetry kind '" + kind + "'");
}

Json to_json(const BackMap& m) {
    Json j;
    j["kind"] = kind_name(m);
    std::visit(overloaded{
                   [&](const backmap::Square& s) { j["center"] = to_json(s.center); },
                   [&](const backmap::MobiusQuad& q) {
                       j["beta"] = to_json(q.beta);
                       j["gamma"] = to_json(q.gamma);
                   },
                   [](const backmap::Identity&) {},
               },
               m);
    return j;
}

BackMap backmap_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Square") return backmap::Square{rational_from_json(j.at("center"))};
    if (kind == "MobiusQuad")
        return backmap::MobiusQuad{rational_from_json(j.at("beta")), rational_from_json(j.at("gamma"))};
    if (kind == "Identity") return backmap::Identity{};
    throw std::invalid_argument("unknown back-map kind '" + kind + "'");
}

Json to_json(const ReductionChain& chain) {
    Json j;
    j["original"] = to_json(chain.original);
    j["original_text"] = render(chain.original);
    j["tree"] = node_to_json(chain.root, 'x');
    j["cores"] = Json::array();
    for (const Polynomial& c : chain.cores()) j["cores"].push_back(to_json(c));
    return j;
}

ReductionChain chain_from_json(const Json& j) {
    return {polynomial_from_json(j.at("original")), node_from_json(j.at("tree"))};
}

Json to_json(const ComplexRoot& r) {
    Json j;
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["residual"] = r.residual;
    j["multiplicity"] = r.multiplicity;
    if (r.exact) j["exact"] = to_json(*r.exact);
    j["provenance"] = Json::array();
    for (const ProvenanceHop& h : r.provenance) j["provenance"].push_back({{"via", h.via}, {"branch", h.branch}});
    return j;
}

Json to_json(const RootReport& report) {
    Json j;
    j["degree"] = report.original.degree();
    j["tolerance"] = report.tolerance;
    j["max_residual"] = report.max_residual;
    j["conversion_error"] = report.conversion_error;
    j["roots"] = Json::array();
    for (const ComplexRoot& r : report.roots) j["roots"].push_back(to_json(r));
    return j;
}

}  // namespace polyred
