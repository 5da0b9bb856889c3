// dalg — command-line front end for the differential-algebra engine.
//
// Subcommands
//   arith           ADE for an arithmetic/rational combination of solutions
//   compose         ADE for outer∘inner
//   unary           ADE for a rational expression of one solution (model method)
//   inverse         ADE for the compositional inverse
//   derivative      ADE for the derivative of a solution
//   antiderivative  ADE for an antiderivative of a solution
//   sys2min         minimal ADE for the output of a dynamical model (JSON file)
//   prove           decide whether two expressions of the same inputs agree
//   verify          oracle-check a candidate ADE against a relation
//
// Exit codes: 0 success (computed, and verified when requested); 1 computation
// failure (no ADE within limits); 2 parse/usage error; 3 timeout; 4 oracle
// failure (the result is still emitted, flagged as unverified).

#include <dalg/dalg.hpp>
#include <dalg/modeljson.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using dalg::AdeResult;
using dalg::JobConfig;
using dalg::Problem;
using dalg::ProveReport;
using dalg::Rat;
using dalg::UsageError;

struct Common {
    std::vector<std::string> equations;
    std::string rel;
    std::string method = "II";
    std::string indep = "x";
    std::string paramsCsv;
    std::string format = "text";
    std::string jetCsv;
    std::string outPath;
    int maxJ = 6;
    double timeout = 120.0;
    bool continuePastFirst = false;
    bool noVerify = false;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> splitCsv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// An equation argument is either literal grammar text or the path of a .ade
// file (plain-text grammar, '#' starts a comment).
std::string loadEquationArg(const std::string& arg) {
    if (arg.size() <= 4 || arg.substr(arg.size() - 4) != ".ade") return arg;
    if (!std::filesystem::exists(arg))
        throw UsageError("equation file '" + arg + "' does not exist");
    std::string text = readFile(arg);
    std::string joined;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!joined.empty()) joined += ' ';
        joined += line;
    }
    if (joined.empty()) throw UsageError("equation file '" + arg + "' holds no equation");
    return joined;
}

std::vector<Rat> parseJets(const std::string& csv) {
    std::vector<Rat> jets;
    for (const std::string& tok : splitCsv(csv)) {
        try {
            jets.push_back(Rat(tok));
        } catch (const std::exception&) {
            throw UsageError("--jet: cannot parse '" + tok + "' as a rational number");
        }
    }
    return jets;
}

JobConfig makeConfig(const Common& c) {
    JobConfig cfg;
    cfg.method = c.method;
    cfg.maxJ = c.maxJ;
    cfg.timeoutSec = c.timeout;
    cfg.continuePastFirst = c.continuePastFirst;
    cfg.verify = !c.noVerify;
    cfg.jet = parseJets(c.jetCsv);
    return cfg;
}

std::string renderText(const AdeResult& r) {
    std::ostringstream os;
    os << r.ade.str() << "\n";
    os << "order: " << r.order << "\n";
    os << "degree: " << r.degree << "\n";
    os << "method: " << r.method << "\n";
    os << "elapsed_ms: " << r.elapsedMs << "\n";
    os << "bound: " << (r.bound ? std::to_string(*r.bound) : std::string("-")) << "\n";
    os << "verified: " << (r.verified ? (*r.verified ? "true" : "false") : std::string("-"))
       << "\n";
    os << "saturation_denominator: "
       << (r.saturationDenominator ? *r.saturationDenominator : std::string("-")) << "\n";
    if (!r.oracleDetail.empty()) os << "note: " << r.oracleDetail << "\n";
    return os.str();
}

nlohmann::ordered_json resultJson(const AdeResult& r) {
    nlohmann::ordered_json j;
    j["ade"] = r.ade.str();
    j["order"] = r.order;
    j["degree"] = r.degree;
    j["method"] = r.method;
    j["elapsed_ms"] = r.elapsedMs;
    if (r.bound)
        j["bound"] = *r.bound;
    else
        j["bound"] = nullptr;
    if (r.verified)
        j["verified"] = *r.verified;
    else
        j["verified"] = nullptr;
    if (r.saturationDenominator)
        j["saturation_denominator"] = *r.saturationDenominator;
    else
        j["saturation_denominator"] = nullptr;
    return j;
}

void writeOutput(const std::string& body, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw UsageError("cannot write to '" + outPath + "'");
    out << body;
}

// Emit the result and return the process exit code.  `strict` (the verify
// subcommand) demands a positive oracle check; elsewhere only an explicit
// oracle FAILURE flags the result (exit 4) — a documented skip does not.
int finishResult(const AdeResult& r, const Common& c, bool strict = false) {
    std::string body = c.format == "json" ? resultJson(r).dump(2) + "\n" : renderText(r);
    writeOutput(body, c.outPath);
    if (r.verified && !*r.verified) {
        std::cerr << "oracle check failed: " << r.oracleDetail << "\n";
        return 4;
    }
    if (strict && !(r.verified && *r.verified)) {
        std::cerr << "candidate not confirmed: "
                  << (r.oracleDetail.empty() ? "oracle check did not run" : r.oracleDetail)
                  << "\n";
        return 4;
    }
    return 0;
}

int finishProve(const ProveReport& rep, const Common& c) {
    std::string body;
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["proved"] = rep.proved;
        j["level"] = rep.level;
        j["detail"] = rep.detail;
        j["lhs"] = resultJson(rep.lhs);
        j["rhs"] = resultJson(rep.rhs);
        body = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "proved: " << (rep.proved ? "true" : "false") << "\n";
        os << "level: " << rep.level << "\n";
        os << "detail: " << rep.detail << "\n";
        os << "lhs_ade: " << rep.lhs.ade.str() << "\n";
        os << "rhs_ade: " << rep.rhs.ade.str() << "\n";
        body = os.str();
    }
    writeOutput(body, c.outPath);
    return rep.proved ? 0 : 4;
}

void addProblemFlags(CLI::App* sub, Common& c, bool withRel, bool withMethod = true) {
    sub->add_option("-e,--equation", c.equations,
                    "input ADE in the expression grammar, or a .ade file path (repeatable)")
        ->required();
    if (withRel)
        sub->add_option("--rel", c.rel, "output relation \"name = expression\"");
    if (withMethod)
        sub->add_option("--method", c.method, "computation method")
            ->check(CLI::IsMember({"I", "II", "both"}))
            ->capture_default_str();
    sub->add_option("--indep", c.indep, "independent variable name")->capture_default_str();
    sub->add_option("--params", c.paramsCsv, "comma-separated symbolic parameter names");
    sub->add_option("--max-j", c.maxJ, "truncation-level cap for method I")
        ->capture_default_str();
    sub->add_option("--timeout", c.timeout, "time budget in seconds")->capture_default_str();
    sub->add_flag("--continue-past-first", c.continuePastFirst,
                  "method I: keep raising the truncation level past the first hit");
    sub->add_flag("--no-verify", c.noVerify, "skip the power-series oracle check");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--jet", c.jetCsv,
                    "comma-separated rational initial jet for the first input's oracle check");
    sub->add_option("--out", c.outPath, "write the result to this file instead of stdout");
}

Problem problemFrom(const Common& c, const std::string& relOverride = "") {
    std::vector<std::string> eqs;
    for (const std::string& e : c.equations) eqs.push_back(loadEquationArg(e));
    std::string rel = relOverride.empty() ? c.rel : relOverride;
    return dalg::parseProblem(eqs, rel, c.indep, splitCsv(c.paramsCsv));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dalg — exact ADEs for arithmetic, composition, inversion and calculus "
        "of differentially algebraic functions"};
    app.require_subcommand(1);

    double defaultTimeout = 120.0;
    if (const char* env = std::getenv("DALG_TIMEOUT")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) defaultTimeout = v;
    }

    Common c;
    c.timeout = defaultTimeout;

    CLI::App* arith = app.add_subcommand(
        "arith", "ADE for a rational combination of input solutions (--rel required)");
    addProblemFlags(arith, c, /*withRel=*/true);

    CLI::App* compose =
        app.add_subcommand("compose", "ADE for outer∘inner (two -e equations, outer first)");
    addProblemFlags(compose, c, /*withRel=*/false);

    CLI::App* unary = app.add_subcommand(
        "unary", "ADE for a rational expression of one solution via the model method");
    addProblemFlags(unary, c, /*withRel=*/true, /*withMethod=*/false);

    CLI::App* inverse =
        app.add_subcommand("inverse", "ADE for the compositional inverse of the solution");
    addProblemFlags(inverse, c, /*withRel=*/false, /*withMethod=*/false);

    CLI::App* derivative =
        app.add_subcommand("derivative", "ADE for the derivative of the solution");
    addProblemFlags(derivative, c, /*withRel=*/false, /*withMethod=*/false);

    CLI::App* antiderivative =
        app.add_subcommand("antiderivative", "ADE for an antiderivative of the solution");
    addProblemFlags(antiderivative, c, /*withRel=*/false, /*withMethod=*/false);

    CLI::App* sys2min = app.add_subcommand(
        "sys2min", "minimal ADE for the observed output of a dynamical model");
    std::string modelFile, target = "z";
    sys2min->add_option("modelfile", modelFile, "model description (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sys2min->add_option("target", target, "name of the output function in the result")
        ->capture_default_str();
    sys2min->add_option("--timeout", c.timeout, "time budget in seconds")
        ->capture_default_str();
    sys2min->add_flag("--no-verify", c.noVerify, "skip the power-series oracle check");
    sys2min->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sys2min->add_option("--out", c.outPath, "write the result to this file instead of stdout");

    CLI::App* prove = app.add_subcommand(
        "prove", "decide whether two expressions of the input solutions agree");
    std::string lhsExpr, rhsExpr;
    addProblemFlags(prove, c, /*withRel=*/false);
    prove->add_option("--lhs", lhsExpr, "left expression")->required();
    prove->add_option("--rhs", rhsExpr, "right expression")->required();

    CLI::App* verify = app.add_subcommand(
        "verify", "oracle-check a candidate ADE for the relation's output");
    std::string candidate;
    verify->add_option("candidate", candidate,
                       "candidate ADE in the expression grammar, or a .ade file path")
        ->required();
    addProblemFlags(verify, c, /*withRel=*/true, /*withMethod=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*arith) {
            if (c.rel.empty())
                throw UsageError("arith requires --rel \"name = expression\"");
            return finishResult(dalg::runArith(problemFrom(c), makeConfig(c)), c);
        }
        if (*compose)
            return finishResult(dalg::runCompose(problemFrom(c), makeConfig(c)), c);
        if (*unary) {
            if (c.rel.empty())
                throw UsageError("unary requires --rel \"name = expression\"");
            Common cu = c;
            cu.method = "II";
            return finishResult(dalg::runUnary(problemFrom(cu), makeConfig(cu)), cu);
        }
        if (*inverse)
            return finishResult(dalg::runInverse(problemFrom(c), makeConfig(c)), c);
        if (*derivative)
            return finishResult(dalg::runDerivative(problemFrom(c), makeConfig(c)), c);
        if (*antiderivative)
            return finishResult(
                dalg::runDerivative(problemFrom(c), makeConfig(c), /*anti=*/true), c);
        if (*sys2min) {
            dalg::DynModel model = dalg::modelFromJsonText(readFile(modelFile), target);
            return finishResult(dalg::runSys2Min(model, makeConfig(c)), c);
        }
        if (*prove) {
            std::vector<std::string> eqs;
            for (const std::string& e : c.equations) eqs.push_back(loadEquationArg(e));
            return finishProve(dalg::runProve(eqs, lhsExpr, rhsExpr, c.indep,
                                              splitCsv(c.paramsCsv), makeConfig(c)),
                               c);
        }
        if (*verify) {
            AdeResult r = dalg::runVerifyCandidate(problemFrom(c),
                                                   loadEquationArg(candidate), makeConfig(c));
            return finishResult(r, c, /*strict=*/true);
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const dalg::JobTimeout& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return 3;
    } catch (const dalg::GBLimitExceeded& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return 3;
    } catch (const dalg::NoAdeFound& e) {
        std::cerr << "no ADE found: " << e.what() << "\n";
        return 1;
    } catch (const dalg::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
