#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ilp/canonical.hpp"
#include "ilp/term.hpp"

namespace ilp {

enum class Direction : uint8_t { in, out };

struct PredicateKey {
    SymbolId pred = 0;
    size_t arity = 0;
    friend bool operator<(const PredicateKey& a, const PredicateKey& b) {
        return std::tie(a.pred, a.arity) < std::tie(b.pred, b.arity);
    }
    friend bool operator==(const PredicateKey& a, const PredicateKey& b) {
        return a.pred == b.pred && a.arity == b.arity;
    }
};

struct SearchLimits {
    size_t max_vars = 5;
    size_t max_clauses = 4;
    size_t max_body = 5;
};

/// Head/body predicate declarations, per-argument types and directions,
/// plus the size limits that shape the hypothesis space.
struct LanguageBias {
    std::vector<PredicateKey> head_decls;  // declaration order preserved
    std::vector<PredicateKey> body_decls;
    std::map<PredicateKey, std::vector<SymbolId>> type_decls;
    std::map<PredicateKey, std::vector<Direction>> direction_decls;
    SearchLimits limits;
    bool recursion_enabled = false;

    bool is_head_pred(SymbolId pred, size_t arity) const {
        return std::find(head_decls.begin(), head_decls.end(), PredicateKey{pred, arity}) !=
               head_decls.end();
    }
    bool is_body_pred(SymbolId pred, size_t arity) const {
        return std::find(body_decls.begin(), body_decls.end(), PredicateKey{pred, arity}) !=
               body_decls.end();
    }
    const std::vector<SymbolId>* types_of(SymbolId pred, size_t arity) const {
        auto it = type_decls.find({pred, arity});
        return it == type_decls.end() ? nullptr : &it->second;
    }
    const std::vector<Direction>* directions_of(SymbolId pred, size_t arity) const {
        auto it = direction_decls.find({pred, arity});
        return it == direction_decls.end() ? nullptr : &it->second;
    }
    size_t max_declared_arity() const {
        size_t a = 0;
        for (const auto& d : head_decls) a = std::max(a, d.arity);
        for (const auto& d : body_decls) a = std::max(a, d.arity);
        return a;
    }
};

/// A candidate program: a set of clauses with a cached literal count.
struct Hypothesis {
    std::vector<Clause> clauses;
    size_t literal_count = 0;

    static Hypothesis of(std::vector<Clause> cs) {
        Hypothesis h;
        h.clauses = std::move(cs);
        for (const auto& c : h.clauses) h.literal_count += c.literal_count();
        return h;
    }
    bool empty() const { return clauses.empty(); }
};

/// True when some body literal shares the head's predicate symbol and arity.
inline bool is_recursive_clause(const Clause& c) {
    if (!c.head) return false;
    for (const auto& b : c.body)
        if (b.pred == c.head->pred && b.arity() == c.head->arity()) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Bias consistency. Directions follow the in/out chaining reading: a body
// literal's in-variables must be bound by head in-variables or by the
// out-variables of body literals schedulable before it; head out-variables
// must equal a head in-variable or be produced by some body literal.

struct BiasCheck {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string why) {
        ok = false;
        violations.push_back(std::move(why));
    }
};

inline BiasCheck is_bias_consistent_clause(const Clause& c, const LanguageBias& L) {
    BiasCheck out;
    if (!c.head) {
        out.fail("clause has no head");
        return out;
    }
    const Atom& h = *c.head;
    if (!L.is_head_pred(h.pred, h.arity()))
        out.fail("head predicate " + symbol_name(h.pred) + "/" + std::to_string(h.arity()) +
                 " not declared");
    for (const auto& b : c.body) {
        bool allowed = L.is_body_pred(b.pred, b.arity()) ||
                       (L.recursion_enabled && L.is_head_pred(b.pred, b.arity()));
        if (!allowed)
            out.fail("body predicate " + symbol_name(b.pred) + "/" + std::to_string(b.arity()) +
                     " not declared");
    }

    // All arguments must be (distinctly typed) variables.
    auto all_vars = [&](const Atom& a) {
        for (const auto& t : a.args)
            if (!t.is_var()) return false;
        return true;
    };
    if (!all_vars(h)) out.fail("head contains a non-variable argument");
    for (const auto& b : c.body)
        if (!all_vars(b)) out.fail("body literal " + to_string(b) + " has a non-variable argument");
    if (!out.ok) return out;

    // Types must agree across all occurrences of a shared variable.
    std::map<SymbolId, SymbolId> var_type;
    auto check_types = [&](const Atom& a) {
        const auto* types = L.types_of(a.pred, a.arity());
        if (!types) return;
        for (size_t i = 0; i < a.args.size(); ++i) {
            SymbolId v = a.args[i].sym;
            auto it = var_type.find(v);
            if (it == var_type.end()) {
                var_type[v] = (*types)[i];
            } else if (it->second != (*types)[i]) {
                out.fail("type clash on " + symbol_name(v) + ": " + symbol_name(it->second) +
                         " vs " + symbol_name((*types)[i]));
            }
        }
    };
    check_types(h);
    for (const auto& b : c.body) check_types(b);

    // Direction chaining. Head in-variables are given; body literals become
    // schedulable once their in-variables are bound, releasing their outs.
    const auto* hdirs = L.directions_of(h.pred, h.arity());
    std::set<SymbolId> bound;
    if (hdirs) {
        for (size_t i = 0; i < h.args.size(); ++i)
            if ((*hdirs)[i] == Direction::in) bound.insert(h.args[i].sym);
    } else {
        for (const auto& t : h.args) bound.insert(t.sym);
    }

    std::vector<bool> scheduled(c.body.size(), false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < c.body.size(); ++i) {
            if (scheduled[i]) continue;
            const Atom& b = c.body[i];
            const auto* dirs = L.directions_of(b.pred, b.arity());
            bool ready = true;
            if (dirs) {
                for (size_t j = 0; j < b.args.size(); ++j)
                    if ((*dirs)[j] == Direction::in && !bound.count(b.args[j].sym)) ready = false;
            }
            if (!ready) continue;
            scheduled[i] = true;
            progress = true;
            if (dirs) {
                for (size_t j = 0; j < b.args.size(); ++j)
                    if ((*dirs)[j] == Direction::out) bound.insert(b.args[j].sym);
            } else {
                for (const auto& t : b.args) bound.insert(t.sym);
            }
        }
    }
    for (size_t i = 0; i < c.body.size(); ++i)
        if (!scheduled[i])
            out.fail("in-variable of " + to_string(c.body[i]) + " is never bound");

    // Head out-variables must equal a head in-variable or be produced in the body.
    if (hdirs) {
        for (size_t i = 0; i < h.args.size(); ++i) {
            if ((*hdirs)[i] != Direction::out) continue;
            SymbolId v = h.args[i].sym;
            bool satisfied = false;
            for (size_t j = 0; j < h.args.size(); ++j)
                if ((*hdirs)[j] == Direction::in && h.args[j].sym == v) satisfied = true;
            for (const auto& b : c.body) {
                const auto* dirs = L.directions_of(b.pred, b.arity());
                if (!dirs) continue;
                for (size_t j = 0; j < b.args.size(); ++j)
                    if ((*dirs)[j] == Direction::out && b.args[j].sym == v) satisfied = true;
            }
            if (!satisfied)
                out.fail("head out-variable " + symbol_name(v) + " is never produced");
        }
    }
    return out;
}

inline bool is_bias_consistent_hypothesis(const Hypothesis& h, const LanguageBias& L) {
    if (h.clauses.size() > L.limits.max_clauses) return false;
    for (const auto& c : h.clauses) {
        if (c.body.size() > L.limits.max_body) return false;
        if (clause_vars(c).size() > L.limits.max_vars) return false;
        if (!is_bias_consistent_clause(c, L).ok) return false;
        if (is_recursive_clause(c) && !L.recursion_enabled) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Variable depth: 0 for head variables, otherwise 1 + the minimum depth of a
// co-occurring distinct variable, to fixpoint. Variables whose literals have
// no other variables sit at depth 1.

inline std::map<SymbolId, size_t> variable_depths(const Clause& c) {
    constexpr size_t kInf = std::numeric_limits<size_t>::max();
    std::map<SymbolId, size_t> depth;
    std::vector<SymbolId> vars = clause_vars(c);
    for (SymbolId v : vars) depth[v] = kInf;
    if (c.head) {
        std::vector<SymbolId> hv;
        collect_vars(*c.head, hv);
        for (SymbolId v : hv) depth[v] = 0;
    }

    // Co-occurrence sets over all atoms (head included).
    std::vector<std::vector<SymbolId>> groups;
    if (c.head) {
        std::vector<SymbolId> g;
        collect_vars(*c.head, g);
        groups.push_back(std::move(g));
    }
    for (const auto& b : c.body) {
        std::vector<SymbolId> g;
        collect_vars(b, g);
        groups.push_back(std::move(g));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (SymbolId v : vars) {
            if (depth[v] == 0) continue;
            size_t best = kInf;
            bool occurs_alone = false;
            bool occurs_at_all = false;
            for (const auto& g : groups) {
                if (std::find(g.begin(), g.end(), v) == g.end()) continue;
                occurs_at_all = true;
                bool has_other = false;
                for (SymbolId u : g) {
                    if (u == v) continue;
                    has_other = true;
                    best = std::min(best, depth[u]);
                }
                if (!has_other) occurs_alone = true;
            }
            size_t d;
            if (best != kInf) {
                d = best + 1;
            } else if (occurs_at_all && occurs_alone) {
                d = 1;  // no co-occurring variable anywhere
            } else {
                continue;
            }
            if (d < depth[v]) {
                depth[v] = d;
                changed = true;
            }
        }
    }
    return depth;
}

inline size_t max_variable_depth(const Clause& c) {
    size_t m = 0;
    for (const auto& [v, d] : variable_depths(c))
        if (d != std::numeric_limits<size_t>::max()) m = std::max(m, d);
    return m;
}

}  // namespace ilp
