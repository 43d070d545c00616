#pragma once

#include <set>
#include <string>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/evaluator.hpp"
#include "ilp/parser.hpp"
#include "ilp/term.hpp"

namespace ilp {

/// A full problem: background knowledge, bias, examples and the (initially
/// empty) constraint store. Built from the three-file layout bias/bk/exs.
struct ProblemInput {
    ClausalTheory bk;
    LanguageBias bias;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    Builtins builtins;

    /// Enable integer builtins for declared predicates the BK leaves undefined.
    void autodetect_builtins() {
        std::set<SymbolId> defined;
        for (const auto& c : bk)
            if (c.head) defined.insert(c.head->pred);
        for (const auto& d : bias.body_decls) {
            const std::string& name = symbol_name(d.pred);
            if (!defined.count(d.pred) && Builtins::is_known_name(name)) builtins.enable(name);
        }
    }
};

inline ProblemInput make_problem(std::string_view bias_text, std::string_view bk_text,
                                 std::string_view exs_text) {
    ProblemInput p;
    p.bias = parse_bias(bias_text);
    p.bk = parse_bk(bk_text);
    ExampleSets ex = parse_examples(exs_text);
    p.pos = std::move(ex.pos);
    p.neg = std::move(ex.neg);
    p.autodetect_builtins();
    return p;
}

/// Checks the problem-input restrictions: examples are ground facts over a
/// declared head predicate, pos and neg are disjoint, no head predicate
/// appears in a BK clause body, and B does not entail any example (within
/// evaluator limits; a timeout makes that example "unverifiable").
inline std::vector<std::string> validate_problem(const ProblemInput& p, const EvalLimits& lim) {
    std::vector<std::string> violations;

    std::set<Atom> pos_set(p.pos.begin(), p.pos.end());
    for (const auto& e : p.neg)
        if (pos_set.count(e))
            violations.push_back("example " + to_string(e) + " is both positive and negative");

    for (const auto& e : p.pos) {
        if (!e.is_ground()) violations.push_back("positive example not ground: " + to_string(e));
        if (!p.bias.is_head_pred(e.pred, e.arity()))
            violations.push_back("positive example predicate not head-declared: " + to_string(e));
    }
    for (const auto& e : p.neg) {
        if (!e.is_ground()) violations.push_back("negative example not ground: " + to_string(e));
        if (!p.bias.is_head_pred(e.pred, e.arity()))
            violations.push_back("negative example predicate not head-declared: " + to_string(e));
    }

    for (const auto& c : p.bk)
        for (const auto& b : c.body)
            if (p.bias.is_head_pred(b.pred, b.arity()))
                violations.push_back("head predicate in BK body: " + to_string(c));

    Evaluator ev(p.bk, lim, p.builtins);
    auto check_not_entailed = [&](const Atom& e, const char* kind) {
        Evaluator each(p.bk, lim, p.builtins);
        switch (each.query(e)) {
            case QueryResult::proven:
                violations.push_back(std::string("B entails ") + kind + " example " +
                                     to_string(e));
                break;
            case QueryResult::resource_exhausted:
                violations.push_back("unverifiable: evaluation limit reached on " + to_string(e));
                break;
            case QueryResult::not_proven:
                break;
        }
    };
    (void)ev;
    for (const auto& e : p.pos) check_not_entailed(e, "positive");
    for (const auto& e : p.neg) check_not_entailed(e, "negative");
    return violations;
}

}  // namespace ilp
