#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/canonical.hpp"
#include "ilp/term.hpp"
#include "ilp/variants.hpp"

namespace ilp {

struct SubsumeBudgetError : std::runtime_error {
    SubsumeBudgetError() : std::runtime_error("subsumption node budget exhausted") {}
};

enum class GeneralizationMode : uint8_t { oracle, variant_subset, recursion_loosened };

struct GeneralizationVerdict {
    bool holds = false;
    std::optional<Substitution> witness;
    std::optional<std::string> witness_variant;
    GeneralizationMode mode = GeneralizationMode::oracle;
};

namespace detail {

// One-way matching: variables of the candidate bind to terms of the target;
// target variables are treated as opaque constants.
inline bool match_term(const Term& pat, const Term& target, Substitution& s, size_t& budget) {
    if (budget == 0) throw SubsumeBudgetError{};
    --budget;
    if (pat.is_var()) {
        if (const Term* bound = s.lookup(pat.sym)) return *bound == target;
        // record self-mappings too: a matched variable must stay fixed
        s.bindings[pat.sym] = target;
        return true;
    }
    if (pat.kind != target.kind || pat.sym != target.sym || pat.value != target.value ||
        pat.args.size() != target.args.size())
        return false;
    for (size_t i = 0; i < pat.args.size(); ++i)
        if (!match_term(pat.args[i], target.args[i], s, budget)) return false;
    return true;
}

inline bool match_atom(const Atom& pat, const Atom& target, Substitution& s, size_t& budget) {
    if (pat.pred != target.pred || pat.args.size() != target.args.size()) return false;
    for (size_t i = 0; i < pat.args.size(); ++i)
        if (!match_term(pat.args[i], target.args[i], s, budget)) return false;
    return true;
}

}  // namespace detail

/// Exact theta-subsumption: does a substitution map c1 into a subset of c2?
/// Backtracking literal matching, most-constrained literal first. Throws
/// SubsumeBudgetError instead of guessing when the node budget runs out.
inline GeneralizationVerdict theta_subsumes(const Clause& c1, const Clause& c2,
                                            size_t budget = 2000000) {
    GeneralizationVerdict out;
    out.mode = GeneralizationMode::oracle;

    // Heads must match as the positive literal of each clause.
    Substitution base;
    if (c1.head && c2.head) {
        if (!detail::match_atom(*c1.head, *c2.head, base, budget)) return out;
    } else if (c1.head || c2.head) {
        return out;
    }

    // Order candidate literals by how many target literals they could match.
    std::vector<const Atom*> body;
    for (const auto& b : c1.body) body.push_back(&b);
    auto candidate_count = [&](const Atom& pat) {
        size_t n = 0;
        for (const auto& t : c2.body)
            if (t.pred == pat.pred && t.args.size() == pat.args.size()) ++n;
        return n;
    };
    std::stable_sort(body.begin(), body.end(), [&](const Atom* a, const Atom* b) {
        return candidate_count(*a) < candidate_count(*b);
    });

    std::function<bool(size_t, Substitution&)> search = [&](size_t i, Substitution& s) -> bool {
        if (i == body.size()) return true;
        for (const auto& target : c2.body) {
            if (budget == 0) throw SubsumeBudgetError{};
            Substitution trial = s;
            if (detail::match_atom(*body[i], target, trial, budget)) {
                if (search(i + 1, trial)) {
                    s = std::move(trial);
                    return true;
                }
            }
        }
        return false;
    };

    Substitution s = base;
    if (search(0, s)) {
        out.holds = true;
        out.witness = std::move(s);
    }
    return out;
}

/// T1 subsumes T2 iff every clause of T2 is theta-subsumed by some clause of T1.
inline bool theory_subsumes(const ClausalTheory& t1, const ClausalTheory& t2,
                            size_t budget = 2000000) {
    for (const auto& c2 : t2) {
        bool found = false;
        for (const auto& c1 : t1) {
            if (theta_subsumes(c1, c2, budget).holds) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline bool theory_subsumes(const Hypothesis& h1, const Hypothesis& h2,
                            size_t budget = 2000000) {
    return theory_subsumes(h1.clauses, h2.clauses, budget);
}

/// Substitution-free fast path: c generalizes the source bottom clause when
/// some variant shares c's head literal and contains every body literal of c.
inline GeneralizationVerdict generalizes_via_variants(const Clause& c, const VariantSet& vs) {
    GeneralizationVerdict out;
    out.mode = GeneralizationMode::variant_subset;
    for (const auto& v : vs.variants) {
        if (!c.head || !v.head || !(*c.head == *v.head)) continue;
        bool subset = true;
        for (const auto& lit : c.body) {
            if (!std::binary_search(v.body.begin(), v.body.end(), lit)) {
                subset = false;
                break;
            }
        }
        if (subset) {
            out.holds = true;
            out.witness_variant = to_string(v);
            return out;
        }
    }
    return out;
}

/// Body literals that feed, directly or transitively, the in-variables of a
/// recursive body literal (one sharing the head's predicate and arity).
/// Empty for non-recursive clauses.
inline std::vector<Atom> precedes_recursion_literals(const Clause& c, const LanguageBias& L) {
    std::vector<Atom> out;
    if (!c.head || !is_recursive_clause(c)) return out;

    auto dirs_of = [&](const Atom& a) { return L.directions_of(a.pred, a.arity()); };

    // in-variables of the already-reached literals drive the chain.
    auto in_vars_of = [&](const Atom& a) {
        std::set<SymbolId> vars;
        const auto* dirs = dirs_of(a);
        for (size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_var() && dirs && (*dirs)[i] == Direction::in)
                vars.insert(a.args[i].sym);
        return vars;
    };

    std::set<SymbolId> wanted;  // in-variables whose producers precede recursion
    for (const auto& b : c.body)
        if (b.pred == c.head->pred && b.arity() == c.head->arity())
            for (SymbolId v : in_vars_of(b)) wanted.insert(v);

    std::set<size_t> reached;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < c.body.size(); ++i) {
            if (reached.count(i)) continue;
            const Atom& b = c.body[i];
            const auto* dirs = dirs_of(b);
            if (!dirs) continue;
            bool produces_wanted = false;
            for (size_t j = 0; j < b.args.size(); ++j)
                if ((*dirs)[j] == Direction::out && b.args[j].is_var() &&
                    wanted.count(b.args[j].sym))
                    produces_wanted = true;
            if (!produces_wanted) continue;
            reached.insert(i);
            changed = true;
            for (SymbolId v : in_vars_of(b)) wanted.insert(v);
        }
    }
    for (size_t i = 0; i < c.body.size(); ++i)
        if (reached.count(i)) out.push_back(c.body[i]);
    return out;
}

/// Hypothesis-level generalization test against one variant set. For positive
/// bottom clauses with recursion enabled, recursive clauses are judged only
/// on their precedes-recursion literal subset.
inline bool hypothesis_generalizes_bottom(const Hypothesis& h, const VariantSet& vs,
                                          bool recursion_enabled, const LanguageBias& L) {
    for (const auto& c : h.clauses) {
        if (generalizes_via_variants(c, vs).holds) return true;
        if (vs.polarity == Polarity::positive && recursion_enabled && is_recursive_clause(c)) {
            std::vector<Atom> pre = precedes_recursion_literals(c, L);
            for (const auto& v : vs.variants) {
                bool subset = true;
                for (const auto& lit : pre)
                    if (!std::binary_search(v.body.begin(), v.body.end(), lit)) {
                        subset = false;
                        break;
                    }
                if (subset) return true;
            }
        }
    }
    return false;
}

}  // namespace ilp
