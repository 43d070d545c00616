#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/evaluator.hpp"
#include "ilp/modes.hpp"
#include "ilp/term.hpp"

namespace ilp {

enum class Polarity : uint8_t { positive, negative };

/// Bias-consistent bottom clause of one example, with its pre-lifting ground
/// witness. `truncated` marks constructions cut short by a resource bound.
struct BottomClause {
    Atom example;
    Polarity polarity = Polarity::positive;
    Clause clause;
    Clause ground_witness;
    size_t depth_used = 0;
    bool truncated = false;
};

struct BottomConfig {
    size_t answer_budget = 100;   // ground answers per scheme query
    size_t literal_cap = 10000;   // abort threshold for runaway constructions
};

inline size_t default_variable_depth(const LanguageBias& L) {
    return L.limits.max_vars == 0 ? 0 : L.limits.max_vars - 1;
}

namespace detail {

// Shared lifting table: identical ground terms lift to the same variable.
// Variable names follow creation order A, B, C, ...
struct LiftTable {
    std::map<Term, SymbolId> mapping;
    size_t next = 0;

    SymbolId lift(const Term& ground) {
        auto it = mapping.find(ground);
        if (it != mapping.end()) return it->second;
        SymbolId v = intern(canonical_var_name(next++));
        mapping.emplace(ground, v);
        return v;
    }
    bool known(const Term& ground) const { return mapping.count(ground) > 0; }
};

}  // namespace detail

/// Mode-guided, variable-depth-bounded saturation. Layer 0 lifts the example
/// head; each later layer queries every body scheme over all type-compatible
/// combinations of terms first seen at earlier layers, adding one lifted
/// literal per distinct ground answer. Schemes run in declaration order;
/// in-term tuples are enumerated in term-creation order.
inline BottomClause build_bottom_clause_ie(const ClausalTheory& B, const LanguageBias& L,
                                           const Atom& e, Polarity polarity, size_t depth,
                                           const EvalLimits& lim,
                                           const BottomConfig& cfg = {},
                                           const Builtins& builtins = {}) {
    if (!L.is_head_pred(e.pred, e.arity()))
        throw std::runtime_error("example predicate not head-declared: " + to_string(e));
    std::vector<ModeDeclaration> modes = to_mode_declarations(L);
    const ModeDeclaration* modeh = nullptr;
    std::vector<const ModeDeclaration*> modebs;
    for (const auto& m : modes) {
        if (m.kind == ModeDeclaration::Kind::modeh && m.pred == e.pred &&
            m.arity() == e.arity())
            modeh = &m;
        if (m.kind == ModeDeclaration::Kind::modeb) modebs.push_back(&m);
    }
    if (!modeh) throw std::runtime_error("no usable head scheme for " + to_string(e));

    BottomClause out;
    out.example = e;
    out.polarity = polarity;
    out.depth_used = depth;

    detail::LiftTable lift;
    // Terms seen so far, in creation order, each with the type of the first
    // argument position it appeared at and the layer it was first seen.
    struct SeenTerm {
        Term ground;
        SymbolId type;
        size_t layer;
    };
    std::vector<SeenTerm> seen;
    auto see = [&](const Term& g, SymbolId type, size_t layer) {
        for (const auto& s : seen)
            if (s.ground == g) return;
        seen.push_back({g, type, layer});
        lift.lift(g);
    };

    // Layer 0: head arguments.
    std::vector<Term> head_vars;
    for (size_t i = 0; i < e.args.size(); ++i) {
        see(e.args[i], modeh->args[i].type, 0);
        head_vars.push_back(Term::var(lift.lift(e.args[i])));
    }
    out.clause.head = Atom{e.pred, head_vars};
    out.ground_witness.head = e;

    std::set<Atom> ground_body;  // dedup of ground instances
    std::set<Atom> lifted_body;

    Evaluator ev(B, lim, builtins);
    for (size_t layer = 1; layer <= depth && !out.truncated; ++layer) {
        // Snapshot: this layer draws in-terms only from earlier layers.
        size_t snapshot = seen.size();
        for (const ModeDeclaration* mb : modebs) {
            if (out.truncated) break;
            // Candidate terms per in-position, restricted by type.
            std::vector<size_t> in_positions;
            for (size_t i = 0; i < mb->args.size(); ++i)
                if (mb->args[i].direction == Direction::in) in_positions.push_back(i);
            std::vector<std::vector<const Term*>> candidates(in_positions.size());
            for (size_t k = 0; k < in_positions.size(); ++k) {
                SymbolId want = mb->args[in_positions[k]].type;
                for (size_t si = 0; si < snapshot; ++si)
                    if (seen[si].type == want) candidates[k].push_back(&seen[si].ground);
                if (candidates[k].empty()) break;
            }
            bool feasible = true;
            for (const auto& c : candidates)
                if (c.empty()) feasible = false;
            if (!feasible && !in_positions.empty()) continue;

            // Enumerate in-term tuples lexicographically in creation order.
            std::vector<size_t> idx(in_positions.size(), 0);
            while (true) {
                // Build the query with fresh variables at out positions.
                std::vector<Term> args(mb->args.size());
                size_t fresh = 0;
                for (size_t i = 0; i < mb->args.size(); ++i) {
                    if (mb->args[i].direction == Direction::out)
                        args[i] = Term::var(intern("_q#" + std::to_string(fresh++)));
                }
                for (size_t k = 0; k < in_positions.size(); ++k)
                    args[in_positions[k]] = *candidates[k][idx[k]];
                Atom goal{mb->pred, args};

                size_t answers = 0;
                Evaluator one(B, lim, builtins);
                one.enumerate_answers(goal, [&](const Atom& ans) {
                    if (!ans.is_ground()) return true;  // skip non-ground answers
                    if (answers >= cfg.answer_budget) return false;
                    if (!ground_body.insert(ans).second) {
                        ++answers;
                        return answers < cfg.answer_budget;
                    }
                    ++answers;
                    // Record new out-terms with their declared types.
                    for (size_t i = 0; i < ans.args.size(); ++i)
                        if (mb->args[i].direction == Direction::out)
                            see(ans.args[i], mb->args[i].type, layer);
                    // Lift and record the literal.
                    std::vector<Term> largs;
                    for (const auto& g : ans.args) largs.push_back(Term::var(lift.lift(g)));
                    Atom lifted_atom{ans.pred, largs};
                    if (lifted_body.insert(lifted_atom).second)
                        out.clause.body.push_back(lifted_atom);
                    out.ground_witness.body.push_back(ans);
                    if (out.clause.body.size() > cfg.literal_cap) {
                        out.truncated = true;
                        return false;
                    }
                    return answers < cfg.answer_budget;
                });
                if (out.truncated) break;

                // Advance the in-tuple odometer.
                if (in_positions.empty()) break;
                size_t k = idx.size();
                while (k > 0) {
                    if (++idx[k - 1] < candidates[k - 1].size()) break;
                    idx[k - 1] = 0;
                    --k;
                }
                if (k == 0) break;
            }
        }
    }
    (void)ev;

    // Contract check: the clause must let B prove the example back.
    if (!out.truncated) {
        ClausalTheory with_bottom = B;
        with_bottom.push_back(out.clause);
        EvalLimits relaxed = lim;
        relaxed.per_query_timeout = std::max(lim.per_query_timeout,
                                             Duration(std::chrono::milliseconds(100)));
        if (query(with_bottom, e, relaxed, builtins) == QueryResult::resource_exhausted)
            out.truncated = true;
    }
    return out;
}

/// Lift a ground clause: co-occurring ground terms share one fresh variable;
/// literals that violate the bias (undeclared predicate, type clash,
/// unsatisfiable direction) are dropped until the result is bias consistent.
inline Clause lift(const Clause& ground, const LanguageBias& L) {
    if (!ground.head) throw std::runtime_error("lift: clause has no head");
    if (!L.is_head_pred(ground.head->pred, ground.head->arity()))
        throw std::runtime_error("lift: head predicate undeclared: " + to_string(*ground.head));

    detail::LiftTable table;
    auto lift_atom = [&](const Atom& a) {
        std::vector<Term> args;
        for (const auto& g : a.args) args.push_back(Term::var(table.lift(g)));
        return Atom{a.pred, args};
    };

    Clause out;
    out.head = lift_atom(*ground.head);
    for (const auto& b : ground.body) {
        if (!L.is_body_pred(b.pred, b.arity())) continue;
        if (!b.is_ground()) continue;
        out.body.push_back(lift_atom(b));
    }

    // Type agreement: drop body literals clashing with already-typed variables,
    // head types first.
    std::map<SymbolId, SymbolId> var_type;
    if (const auto* types = L.types_of(out.head->pred, out.head->arity()))
        for (size_t i = 0; i < out.head->args.size(); ++i)
            var_type[out.head->args[i].sym] = (*types)[i];
    std::vector<Atom> typed;
    for (const auto& b : out.body) {
        const auto* types = L.types_of(b.pred, b.arity());
        bool ok = true;
        if (types) {
            for (size_t i = 0; i < b.args.size(); ++i) {
                auto it = var_type.find(b.args[i].sym);
                if (it != var_type.end() && it->second != (*types)[i]) ok = false;
            }
        }
        if (!ok) continue;
        if (types)
            for (size_t i = 0; i < b.args.size(); ++i)
                var_type.emplace(b.args[i].sym, (*types)[i]);
        typed.push_back(b);
    }
    out.body = std::move(typed);

    // Direction repair: drop literals whose in-variables are never produced,
    // to fixpoint.
    while (true) {
        BiasCheck check = is_bias_consistent_clause(out, L);
        if (check.ok) break;
        std::set<SymbolId> bound;
        if (const auto* hdirs = L.directions_of(out.head->pred, out.head->arity())) {
            for (size_t i = 0; i < out.head->args.size(); ++i)
                if ((*hdirs)[i] == Direction::in) bound.insert(out.head->args[i].sym);
        } else {
            for (const auto& t : out.head->args) bound.insert(t.sym);
        }
        std::vector<Atom> keep;
        bool progress = true;
        std::vector<Atom> pending = out.body;
        while (progress) {
            progress = false;
            std::vector<Atom> still;
            for (const auto& b : pending) {
                const auto* dirs = L.directions_of(b.pred, b.arity());
                bool ready = true;
                if (dirs) {
                    for (size_t j = 0; j < b.args.size(); ++j)
                        if ((*dirs)[j] == Direction::in && !bound.count(b.args[j].sym))
                            ready = false;
                }
                if (ready) {
                    keep.push_back(b);
                    if (dirs) {
                        for (size_t j = 0; j < b.args.size(); ++j)
                            if ((*dirs)[j] == Direction::out) bound.insert(b.args[j].sym);
                    } else {
                        for (const auto& t : b.args) bound.insert(t.sym);
                    }
                    progress = true;
                } else {
                    still.push_back(b);
                }
            }
            pending = std::move(still);
        }
        if (keep.size() == out.body.size()) break;  // nothing droppable: give up
        out.body = std::move(keep);
    }
    return out;
}

/// Forward-chaining construction for function-free, range-restricted BK:
/// the ground witness is e with the entire least model as its body.
inline BottomClause build_bottom_clause_fc(const ClausalTheory& B, const LanguageBias& L,
                                           const Atom& e, Polarity polarity,
                                           size_t max_model_size = 1000000) {
    BottomClause out;
    out.example = e;
    out.polarity = polarity;
    out.ground_witness.head = e;
    for (const auto& f : least_model(B, max_model_size)) out.ground_witness.body.push_back(f);
    std::sort(out.ground_witness.body.begin(), out.ground_witness.body.end());
    out.clause = lift(out.ground_witness, L);
    out.depth_used = max_variable_depth(out.clause);
    return out;
}

}  // namespace ilp
