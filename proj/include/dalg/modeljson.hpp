// JSON file format for first-order dynamical models:
//
//   {"indep": "t",
//    "params": ["beta", "gamma"],          (optional, default none)
//    "states": ["S", "T", "R"],
//    "rhs": ["-beta*S*T", "...", "..."],   (one expression per state)
//    "output": "R",
//    "constraints": ["..."]}               (optional extension)
//
// rhs / output / constraints use the equation grammar extended with '/'.
// This header is not part of the umbrella include: it pulls in the vendored
// JSON parser, which only the tools and tests link against.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "method2.hpp"

namespace dalg {

inline DynModel modelFromJsonText(const std::string& text, const std::string& outName = "z") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::domain_error(std::string("model JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::domain_error("model JSON: top level must be an object");

    auto stringField = [&](const char* key, const char* fallback) -> std::string {
        if (!j.contains(key)) {
            if (fallback) return fallback;
            throw std::domain_error(std::string("model JSON: missing \"") + key + "\"");
        }
        if (!j[key].is_string())
            throw std::domain_error(std::string("model JSON: \"") + key + "\" must be a string");
        return j[key].get<std::string>();
    };
    auto stringList = [&](const char* key, bool required) -> std::vector<std::string> {
        if (!j.contains(key)) {
            if (required)
                throw std::domain_error(std::string("model JSON: missing \"") + key + "\"");
            return {};
        }
        if (!j[key].is_array())
            throw std::domain_error(std::string("model JSON: \"") + key +
                                    "\" must be an array of strings");
        std::vector<std::string> out;
        for (const auto& e : j[key]) {
            if (!e.is_string())
                throw std::domain_error(std::string("model JSON: \"") + key +
                                        "\" must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    };

    std::string indep = stringField("indep", "x");
    std::vector<std::string> params = stringList("params", false);
    std::vector<std::string> states = stringList("states", true);
    std::vector<std::string> rhs = stringList("rhs", true);
    std::vector<std::string> constraints = stringList("constraints", false);
    std::string output = stringField("output", nullptr);

    if (states.empty()) throw std::domain_error("model JSON: at least one state is required");
    if (states.size() != rhs.size())
        throw std::domain_error("model JSON: \"states\" and \"rhs\" must have the same length");
    for (const std::string& s : states)
        if (s == outName)
            throw std::domain_error("model JSON: output name '" + outName +
                                    "' collides with a state");

    std::vector<std::string> fns = states;
    fns.push_back(outName);
    CtxPtr ctx = Context::make(fns, indep, params);
    ExprParser P(ctx, /*allowDivision=*/true);

    DynModel m;
    m.ctx = ctx;
    m.outFn = (int)states.size();
    for (int i = 0; i < (int)states.size(); ++i) m.stateFns.push_back(i);
    for (const std::string& r : rhs) m.rhs.push_back(P.parse(r).reduced());
    m.output = P.parse(output).reduced();
    for (const std::string& c : constraints) m.constraints.push_back(clearDenominators(P.parse(c)));
    validateModel(m);
    return m;
}

}  // namespace dalg
