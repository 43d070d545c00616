#pragma once

#include <optional>

#include "ilp/term.hpp"

namespace ilp {

inline bool occurs_in(SymbolId var, const Term& t) {
    if (t.kind == Term::Kind::variable) return t.sym == var;
    for (const auto& a : t.args)
        if (occurs_in(var, a)) return true;
    return false;
}

inline bool unify_terms(const Term& a, const Term& b, Substitution& s) {
    Term x = apply_substitution(a, s);
    Term y = apply_substitution(b, s);
    if (x.is_var() && y.is_var() && x.sym == y.sym) return true;
    if (x.is_var()) {
        if (occurs_in(x.sym, y)) return false;
        Substitution step;
        step.bind(x.sym, y);
        s = compose(s, step);
        return true;
    }
    if (y.is_var()) {
        if (occurs_in(y.sym, x)) return false;
        Substitution step;
        step.bind(y.sym, x);
        s = compose(s, step);
        return true;
    }
    if (x.kind != y.kind || x.sym != y.sym || x.value != y.value ||
        x.args.size() != y.args.size())
        return false;
    for (size_t i = 0; i < x.args.size(); ++i)
        if (!unify_terms(x.args[i], y.args[i], s)) return false;
    return true;
}

/// Most general unifier with occurs-check, or nullopt when none exists.
inline std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
    Substitution s;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!unify_terms(a.args[i], b.args[i], s)) return std::nullopt;
    return s;
}

}  // namespace ilp
