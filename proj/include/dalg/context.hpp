// Variable registry for differential polynomial rings.
//
// A Context declares the differential function names (y, z, w, ...), the
// independent variable (x by default), and the constant parameters (g2, ...).
// Concrete ring variables — x, y, y', y'', parameters, auxiliary elimination
// variables — are registered on demand and identified by a dense integer id.
//
// Ids depend on creation order, so they are never used for canonical
// decisions directly; `rankPositions` exposes a canonical significance
// ranking (auxiliaries > differential variables (function index ascending,
// derivative order descending) > independent variable > parameters) that is
// stable across construction paths and makes printing and Gröbner runs
// deterministic.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dalg {

enum class VarKind : std::uint8_t { Aux = 0, Diff = 1, Indep = 2, Param = 3 };

struct VarInfo {
    VarKind kind;
    std::int32_t fn;     // Diff: function index; Param: parameter index; Aux: aux index
    std::int32_t deriv;  // Diff: derivative order; otherwise 0
};

class Context;
using CtxPtr = std::shared_ptr<Context>;

class Context : public std::enable_shared_from_this<Context> {
public:
    static CtxPtr make(std::vector<std::string> fns, std::string indep = "x",
                       std::vector<std::string> params = {}) {
        auto c = std::make_shared<Context>();
        c->fns_ = std::move(fns);
        c->indep_ = std::move(indep);
        c->params_ = std::move(params);
        c->indepVar_ = c->registerVar({VarKind::Indep, 0, 0});
        for (std::size_t k = 0; k < c->params_.size(); ++k)
            c->paramVars_.push_back(c->registerVar({VarKind::Param, (std::int32_t)k, 0}));
        return c;
    }

    const std::vector<std::string>& fns() const { return fns_; }
    const std::string& indep() const { return indep_; }
    const std::vector<std::string>& params() const { return params_; }

    int fnIndex(const std::string& name) const {
        for (std::size_t i = 0; i < fns_.size(); ++i)
            if (fns_[i] == name) return (int)i;
        return -1;
    }
    int paramIndex(const std::string& name) const {
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i] == name) return (int)i;
        return -1;
    }

    // Get-or-create variable ids.
    int diffVar(int fn, int deriv) {
        if (fn < 0 || fn >= (int)fns_.size() || deriv < 0)
            throw std::domain_error("Context: bad differential variable request");
        auto key = std::make_pair(fn, deriv);
        auto it = diffLookup_.find(key);
        if (it != diffLookup_.end()) return it->second;
        int id = registerVar({VarKind::Diff, fn, deriv});
        diffLookup_.emplace(key, id);
        return id;
    }
    int indepVar() const { return indepVar_; }
    int paramVar(int k) const {
        if (k < 0 || k >= (int)paramVars_.size())
            throw std::domain_error("Context: bad parameter index");
        return paramVars_[k];
    }
    int auxVar(int k) {
        while ((int)auxVars_.size() <= k)
            auxVars_.push_back(registerVar({VarKind::Aux, (std::int32_t)auxVars_.size(), 0}));
        return auxVars_[k];
    }

    int varCount() const { return (int)vars_.size(); }
    const VarInfo& info(int v) const { return vars_.at(v); }

    std::string varName(int v) const {
        const VarInfo& i = vars_.at(v);
        switch (i.kind) {
            case VarKind::Indep: return indep_;
            case VarKind::Param: return params_.at(i.fn);
            case VarKind::Aux: return "~t" + std::to_string(i.fn);
            case VarKind::Diff: {
                std::string s = fns_.at(i.fn);
                if (i.deriv >= 1 && i.deriv <= 2)
                    s.append((std::size_t)i.deriv, '\'');
                else if (i.deriv >= 3)
                    s += "^(" + std::to_string(i.deriv) + ")";
                return s;
            }
        }
        return "?";
    }

    // Canonical significance key; lexicographically smaller = more significant.
    std::array<std::int64_t, 3> rankKey(int v) const {
        const VarInfo& i = vars_.at(v);
        switch (i.kind) {
            case VarKind::Aux: return {0, i.fn, 0};
            case VarKind::Diff: return {1, i.fn, -(std::int64_t)i.deriv};
            case VarKind::Indep: return {2, 0, 0};
            case VarKind::Param: return {3, i.fn, 0};
        }
        return {9, 0, 0};
    }

    // pos[id] = canonical significance position (0 = most significant),
    // recomputed when variables were added since the last call.
    const std::vector<int>& rankPositions() const {
        if (rankPos_.size() != vars_.size()) {
            std::vector<int> ids(vars_.size());
            for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = (int)i;
            std::sort(ids.begin(), ids.end(), [&](int a, int b) { return rankKey(a) < rankKey(b); });
            rankPos_.assign(vars_.size(), 0);
            for (std::size_t p = 0; p < ids.size(); ++p) rankPos_[ids[p]] = (int)p;
        }
        return rankPos_;
    }

private:
    std::vector<std::string> fns_;
    std::string indep_;
    std::vector<std::string> params_;

    std::vector<VarInfo> vars_;
    std::map<std::pair<int, int>, int> diffLookup_;
    int indepVar_ = -1;
    std::vector<int> paramVars_;
    std::vector<int> auxVars_;
    mutable std::vector<int> rankPos_;

    int registerVar(VarInfo vi) {
        vars_.push_back(vi);
        return (int)vars_.size() - 1;
    }
};

}  // namespace dalg
