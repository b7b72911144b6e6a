#include "polyred/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "polyred/numroots.hpp"
#include "polyred/parser.hpp"
#include "polyred/reduce.hpp"
#include "polyred/serialize.hpp"
#include "polyred/symmetry.hpp"
#include "polyred/testgen.hpp"

namespace polyred::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    double tol = kDefaultTolerance;
    int max_iter = kDefaultMaxIter;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::string family = "all";
    std::size_t count = 10;
    long limit = 10;
    std::vector<std::string> params;
    bool check = false;
};

/// A failure that maps onto an exit code and a JSON error object.
struct Failure {
    int code;
    std::string kind;
    std::string message;
    std::optional<std::size_t> position;
};

void report_failure(const Failure& f, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format == "json") {
        Json j;
        j["error"]["kind"] = f.kind;
        j["error"]["message"] = f.message;
        if (f.position) j["error"]["position"] = *f.position;
        j["error"]["exit_code"] = f.code;
        out << j.dump(2) << '\n';
    } else {
        err << "error (" << f.kind << "): " << f.message << '\n';
    }
}

std::string complex_text(Complex z) {
    std::ostringstream os;
    os << std::setprecision(17) << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

void print_node_text(const ReductionNode& node, char var, int depth, std::ostream& out) {
    std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    out << pad << render(node.poly, var);
    if (node.is_core()) {
        out << "  [core]\n";
        return;
    }
    out << "\n" << pad << "  step: " << describe(node.step->finding) << '\n';
    for (const Rational& r : node.step->exact_roots) out << pad << "  exact root: " << r << '\n';
    for (const Branch& b : node.step->branches) {
        out << pad << "  via " << describe(b.backmap) << ":\n";
        print_node_text(b.node, std::holds_alternative<backmap::Identity>(b.backmap) ? var : 'z', depth + 2, out);
    }
}

void print_roots_text(const RootReport& report, std::ostream& out) {
    out << "roots (" << report.roots.size() << "), max residual " << report.max_residual << ":\n";
    for (const ComplexRoot& r : report.roots) {
        out << "  x = " << (r.exact ? r.exact->str() : complex_text(r.value)) << "  residual " << r.residual;
        if (r.multiplicity > 1) out << "  multiplicity ~" << r.multiplicity;
        out << '\n';
    }
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    Polynomial f = equation_to_polynomial(cfg.input);
    if (f.degree() < 1) throw Failure{kUsage, "DegreeTooLow", "equation must have degree >= 1", std::nullopt};
    auto findings = classify(f);
    if (cfg.format == "json") {
        Json j;
        j["command"] = "classify";
        j["input"] = cfg.input;
        j["polynomial"] = to_json(f);
        j["text"] = render(f);
        j["findings"] = Json::array();
        for (const auto& x : findings) j["findings"].push_back(to_json(x));
        out << j.dump(2) << '\n';
    } else {
        out << "polynomial: " << render(f) << "\nfindings:\n";
        for (const auto& x : findings) out << "  " << describe(x) << '\n';
    }
    return kOk;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
    Polynomial f = equation_to_polynomial(cfg.input);
    if (f.degree() < 1) throw Failure{kUsage, "DegreeTooLow", "equation must have degree >= 1", std::nullopt};
    ReductionChain chain = reduce_fully(f);
    Json chain_json = to_json(chain);

    std::optional<bool> replay_ok;
    if (cfg.check) {
        ReductionChain back = chain_from_json(Json::parse(chain_json.dump()));
        replay_ok = replay(back.root) == back.original && back.original == f;
    }

    if (cfg.format == "json") {
        Json j;
        j["command"] = "reduce";
        j["input"] = cfg.input;
        j["chain"] = chain_json;
        if (replay_ok) j["check"] = {{"replay_equal", *replay_ok}};
        out << j.dump(2) << '\n';
    } else {
        print_node_text(chain.root, 'x', 0, out);
        out << "cores:\n";
        for (const Polynomial& c : chain.cores()) out << "  " << render(c, 'z') << '\n';
        if (replay_ok) out << "check: replay " << (*replay_ok ? "reproduces" : "DOES NOT reproduce") << " the input\n";
    }
    if (replay_ok && !*replay_ok)
        throw Failure{kVerification, "ReplayMismatch", "serialized chain does not replay to the input", std::nullopt};
    return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    Polynomial f = equation_to_polynomial(cfg.input);
    if (f.degree() < 1) throw Failure{kUsage, "DegreeTooLow", "equation must have degree >= 1", std::nullopt};
    ReductionChain chain = reduce_fully(f);
    RootReport report = solve_chain(chain, cfg.tol, cfg.max_iter);
    if (cfg.format == "json") {
        Json j;
        j["command"] = "solve";
        j["input"] = cfg.input;
        j["chain"] = to_json(chain);
        j["report"] = to_json(report);
        out << j.dump(2) << '\n';
    } else {
        print_node_text(chain.root, 'x', 0, out);
        print_roots_text(report, out);
    }
    return kOk;
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, Rational> out;
    for (const std::string& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Failure{kUsage, "UsageError", "--param expects name=value, got '" + item + "'", std::nullopt};
        try {
            out[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw Failure{kUsage, "UsageError", e.what(), std::nullopt};
        }
    }
    return out;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    std::vector<Instance> instances;
    try {
        if (cfg.family == "all") {
            if (!cfg.params.empty())
                throw Failure{kUsage, "UsageError", "--param needs a single --family", std::nullopt};
            instances = generate_mixed(cfg.seed, cfg.count, cfg.limit);
        } else {
            auto fam = family_from_name(cfg.family);
            if (!fam) throw Failure{kUsage, "UsageError", "unknown family '" + cfg.family + "'", std::nullopt};
            instances = generate(FamilySpec{*fam, parse_params(cfg.params), cfg.seed, cfg.limit}, cfg.count);
        }
    } catch (const InvalidSpec& e) {
        throw Failure{kUsage, "InvalidSpec", e.what(), std::nullopt};
    }

    CorpusHeader header{cfg.seed};
    if (cfg.input == "-") {
        write_corpus(out, instances, header);
        return kOk;
    }
    try {
        emit_corpus(instances, cfg.input, header);
    } catch (const IoFailure& e) {
        throw Failure{kUsage, "IoFailure", e.what(), std::nullopt};
    }
    if (cfg.format == "json") {
        Json j;
        j["command"] = "generate";
        j["path"] = cfg.input;
        j["family"] = cfg.family;
        j["seed"] = cfg.seed;
        j["count"] = instances.size();
        out << j.dump(2) << '\n';
    } else {
        out << "wrote " << instances.size() << " instances to " << cfg.input << '\n';
    }
    return kOk;
}

Json verify_line(const std::string& line, const RunConfig& cfg) {
    Json result;
    std::vector<std::string> problems;
    try {
        CorpusEntry e = entry_from_json(Json::parse(line));
        result["family"] = e.family;
        result["expr"] = e.expr;
        Polynomial f = parse_polynomial(e.expr);
        problems = check_certificate(f, e.certificate, e.expected_degrees, e.exact_roots);

        ReductionChain chain = reduce_fully(f);
        if (replay(chain.root) != f) problems.push_back("reduction chain does not replay to the input");
        RootReport report = solve_chain(chain, cfg.tol, cfg.max_iter);
        result["roots"] = report.roots.size();
        result["max_residual"] = report.max_residual;

        for (const Rational& r : e.exact_roots) {
            const bool present = std::any_of(report.roots.begin(), report.roots.end(), [&](const ComplexRoot& x) {
                return x.exact ? *x.exact == r
                               : std::abs(x.value - Complex(r.to_double(), 0.0)) <=
                                     1e-9 * std::max(1.0, std::abs(r.to_double()));
            });
            if (!present) problems.push_back("exact root " + r.str() + " missing from the solved roots");
        }
    } catch (const std::exception& ex) {
        problems.push_back(ex.what());
    }
    result["ok"] = problems.empty();
    result["problems"] = problems;
    return result;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POLYRED_JOBS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) n = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    std::ifstream in(cfg.input);
    if (!in) throw Failure{kUsage, "IoFailure", "cannot open corpus " + cfg.input, std::nullopt};

    std::vector<std::string> lines;
    std::optional<Json> header;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        if (!header && lines.empty()) {
            Json j = Json::parse(line, nullptr, false);
            if (j.is_object() && j.contains("schema")) {
                header = std::move(j);
                continue;
            }
        }
        lines.push_back(std::move(line));
    }

    std::vector<Json> results(lines.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) {
            results[i] = verify_line(lines[i], cfg);
            results[i]["index"] = i;
        }
    };
    std::vector<std::thread> pool;
    const std::size_t workers = worker_count(lines.size());
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::size_t failed = 0;
    for (const Json& r : results)
        if (!r["ok"].get<bool>()) ++failed;

    if (cfg.format == "json") {
        Json j;
        j["command"] = "verify";
        j["path"] = cfg.input;
        if (header) j["header"] = *header;
        j["instances"] = results.size();
        j["passed"] = results.size() - failed;
        j["failed"] = failed;
        j["results"] = results;
        out << j.dump(2) << '\n';
    } else {
        for (const Json& r : results) {
            out << "[" << r["index"].get<std::size_t>() << "] " << (r["ok"].get<bool>() ? "ok  " : "FAIL")
                << "  " << r.value("family", "?") << "  " << r.value("expr", "") << '\n';
            for (const auto& p : r["problems"]) out << "      " << p.get<std::string>() << '\n';
        }
        out << results.size() - failed << "/" << results.size() << " instances verified\n";
    }
    return failed == 0 ? kOk : kVerification;
}

}  // namespace

Polynomial equation_to_polynomial(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) return parse_polynomial(text);
    if (text.find('=', eq + 1) != std::string_view::npos)
        throw SyntaxError("more than one '=' in equation", text.find('=', eq + 1));
    Polynomial lhs = parse_polynomial(text.substr(0, eq));
    Polynomial rhs;
    try {
        rhs = parse_polynomial(text.substr(eq + 1));
    } catch (const SyntaxError& e) {
        throw SyntaxError(std::string("right-hand side: ") + e.what(), eq + 1 + e.position);
    }
    return sub(lhs, rhs);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Symmetry detection, degree reduction and root finding for univariate polynomial equations",
                 "polyred"};
    app.add_option("command", cfg.command, "classify | reduce | solve | generate | verify")
        ->required()
        ->check(CLI::IsMember({"classify", "reduce", "solve", "generate", "verify"}));
    app.add_option("input", cfg.input, "equation text, or corpus path for generate/verify ('-' = stdout)")
        ->required();
    app.add_option("--tol", cfg.tol, "root residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.max_iter, "root finder iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", cfg.seed, "corpus seed (generate)");
    app.add_option("--family", cfg.family, "family name or 'all' (generate)");
    app.add_option("--count", cfg.count, "number of instances (generate)");
    app.add_option("--limit", cfg.limit, "numerator/denominator bound of drawn parameters (generate)")
        ->check(CLI::PositiveNumber);
    app.add_option("--param", cfg.params, "fixed parameter name=value (generate, repeatable)");
    app.add_flag("--check", cfg.check, "replay the serialized chain and compare with the input (reduce)");

    std::vector<const char*> argv{"polyred"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_failure({kUsage, "UsageError", e.what(), std::nullopt}, cfg, out, err);
        if (cfg.format != "json") err << app.help();
        return kUsage;
    }

    try {
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "reduce") return cmd_reduce(cfg, out);
        if (cfg.command == "solve") return cmd_solve(cfg, out);
        if (cfg.command == "generate") return cmd_generate(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const Failure& f) {
        report_failure(f, cfg, out, err);
        return f.code;
    } catch (const SyntaxError& e) {
        report_failure({kParse, "SyntaxError", e.what(), e.position}, cfg, out, err);
        return kParse;
    } catch (const UnsupportedExponent& e) {
        report_failure({kParse, "UnsupportedExponent", e.what(), e.position}, cfg, out, err);
        return kParse;
    } catch (const MultipleVariables& e) {
        report_failure({kParse, "MultipleVariables", e.what(), e.position}, cfg, out, err);
        return kParse;
    } catch (const NoConvergence& e) {
        report_failure({kNoConvergence, "NoConvergence", e.what(), std::nullopt}, cfg, out, err);
        return kNoConvergence;
    } catch (const CoefficientOverflow& e) {
        report_failure({kNoConvergence, "CoefficientOverflow", e.what(), std::nullopt}, cfg, out, err);
        return kNoConvergence;
    } catch (const VerificationFailure& e) {
        report_failure({kVerification, "VerificationFailure", e.what(), std::nullopt}, cfg, out, err);
        return kVerification;
    } catch (const Json::exception& e) {
        report_failure({kUsage, "JsonError", e.what(), std::nullopt}, cfg, out, err);
        return kUsage;
    }
}

}  // namespace polyred::cli
