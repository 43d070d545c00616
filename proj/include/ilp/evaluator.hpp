#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/term.hpp"
#include "ilp/unify.hpp"

namespace ilp {

using Duration = std::chrono::steady_clock::duration;
using Clock = std::chrono::steady_clock;

struct EvalLimits {
    size_t max_resolution_depth = 500;
    Duration per_query_timeout = std::chrono::milliseconds(1);
    size_t max_model_size = 1000000;
};

enum class QueryResult : uint8_t { proven, not_proven, resource_exhausted };

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Fresh runtime variables use '#' in their names, which the clause grammar
// cannot produce, so they never collide with parsed variables.
inline SymbolId fresh_var_symbol(size_t i) {
    static std::vector<SymbolId> pool;
    static std::mutex mu;
    std::lock_guard lock(mu);
    while (pool.size() <= i) pool.push_back(intern("_g#" + std::to_string(pool.size())));
    return pool[i];
}

inline Term rename_fresh(const Term& t, std::map<SymbolId, SymbolId>& map, size_t& counter) {
    switch (t.kind) {
        case Term::Kind::variable: {
            auto it = map.find(t.sym);
            if (it == map.end()) it = map.emplace(t.sym, fresh_var_symbol(counter++)).first;
            return Term::var(it->second);
        }
        case Term::Kind::compound: {
            Term out = t;
            for (auto& a : out.args) a = rename_fresh(a, map, counter);
            return out;
        }
        default:
            return t;
    }
}

inline Atom rename_fresh(const Atom& a, std::map<SymbolId, SymbolId>& map, size_t& counter) {
    Atom out = a;
    for (auto& t : out.args) t = rename_fresh(t, map, counter);
    return out;
}

}  // namespace detail

/// Built-in integer relations, enabled per problem for predicates the BK
/// leaves undefined: increment/2, decrement/2, succ/2, geq/2, zero/1, one/1,
/// even/1, odd/1, sum/3.
class Builtins {
public:
    Builtins() = default;

    void enable(std::string_view name) { enabled_.insert(intern(name)); }
    bool handles(SymbolId pred) const { return enabled_.count(pred) > 0; }

    static bool is_known_name(const std::string& name) {
        return name == "increment" || name == "decrement" || name == "succ" || name == "geq" ||
               name == "zero" || name == "one" || name == "even" || name == "odd" ||
               name == "sum";
    }

    /// Solutions for a builtin goal; empty when the instantiation is
    /// insufficient or the relation does not hold.
    std::vector<Substitution> solve(const Atom& goal) const {
        const std::string& name = symbol_name(goal.pred);
        std::vector<Substitution> out;
        auto as_int = [](const Term& t, int64_t& v) {
            if (t.kind != Term::Kind::integer) return false;
            v = t.value;
            return true;
        };
        auto bind_or_check = [&](const Term& t, int64_t v) -> bool {
            // Appends a solution when t is a variable; checks equality otherwise.
            if (t.is_var()) {
                Substitution s;
                s.bind(t.sym, Term::integer(v));
                out.push_back(std::move(s));
                return true;
            }
            int64_t got;
            if (as_int(t, got) && got == v) {
                out.emplace_back();
                return true;
            }
            return false;
        };

        if ((name == "increment" || name == "succ") && goal.args.size() == 2) {
            int64_t a, b;
            if (as_int(goal.args[0], a)) bind_or_check(goal.args[1], a + 1);
            else if (as_int(goal.args[1], b)) bind_or_check(goal.args[0], b - 1);
        } else if (name == "decrement" && goal.args.size() == 2) {
            int64_t a, b;
            if (as_int(goal.args[0], a)) bind_or_check(goal.args[1], a - 1);
            else if (as_int(goal.args[1], b)) bind_or_check(goal.args[0], b + 1);
        } else if (name == "geq" && goal.args.size() == 2) {
            int64_t a, b;
            if (as_int(goal.args[0], a) && as_int(goal.args[1], b) && a >= b) out.emplace_back();
        } else if (name == "zero" && goal.args.size() == 1) {
            bind_or_check(goal.args[0], 0);
        } else if (name == "one" && goal.args.size() == 1) {
            bind_or_check(goal.args[0], 1);
        } else if (name == "even" && goal.args.size() == 1) {
            int64_t a;
            if (as_int(goal.args[0], a) && a % 2 == 0) out.emplace_back();
        } else if (name == "odd" && goal.args.size() == 1) {
            int64_t a;
            if (as_int(goal.args[0], a) && a % 2 != 0) out.emplace_back();
        } else if (name == "sum" && goal.args.size() == 3) {
            int64_t a, b, c;
            bool ha = as_int(goal.args[0], a), hb = as_int(goal.args[1], b),
                 hc = as_int(goal.args[2], c);
            if (ha && hb) bind_or_check(goal.args[2], a + b);
            else if (ha && hc) bind_or_check(goal.args[1], c - a);
            else if (hb && hc) bind_or_check(goal.args[0], c - b);
        }
        return out;
    }

private:
    std::set<SymbolId> enabled_;
};

/// Depth- and time-limited top-down SLD resolution with leftmost literal
/// selection and textual clause order. Single-use per query; instances are
/// cheap and hold no shared mutable state.
class Evaluator {
public:
    Evaluator(const ClausalTheory& program, EvalLimits limits, Builtins builtins = {})
        : limits_(limits), builtins_(std::move(builtins)) {
        for (const auto& c : program) {
            if (!c.head) continue;
            by_pred_[{c.head->pred, c.head->arity()}].push_back(c);
        }
    }

    QueryResult query(const Atom& goal) {
        start_ = Clock::now();
        exhausted_ = false;
        timed_out_ = false;
        steps_ = 0;
        fresh_counter_ = 0;
        bool found = false;
        try {
            found = prove({goal}, 0, nullptr);
        } catch (const TimeoutSignal&) {
            return QueryResult::resource_exhausted;
        }
        if (found) return QueryResult::proven;
        return exhausted_ ? QueryResult::resource_exhausted : QueryResult::not_proven;
    }

    /// Enumerate ground solutions for a goal with variables. Each answer is
    /// the goal instance under the solution substitution. Returns false from
    /// the callback to stop early. Deterministic in program order.
    QueryResult enumerate_answers(const Atom& goal, const std::function<bool(const Atom&)>& emit) {
        start_ = Clock::now();
        exhausted_ = false;
        timed_out_ = false;
        steps_ = 0;
        fresh_counter_ = 0;
        answer_goal_ = goal;
        try {
            prove({goal}, 0, &emit);
        } catch (const TimeoutSignal&) {
            return QueryResult::resource_exhausted;
        } catch (const StopSignal&) {
            return QueryResult::proven;
        }
        return exhausted_ ? QueryResult::resource_exhausted : QueryResult::proven;
    }

private:
    struct TimeoutSignal {};
    struct StopSignal {};

    void tick() {
        if (++steps_ % 128 == 0) {
            if (Clock::now() - start_ > limits_.per_query_timeout) {
                timed_out_ = true;
                throw TimeoutSignal{};
            }
        }
    }

    bool prove(std::vector<Atom> goals, size_t depth,
               const std::function<bool(const Atom&)>* emit) {
        tick();
        if (goals.empty()) {
            if (emit) {
                if (!(*emit)(answer_goal_)) throw StopSignal{};
                return false;  // keep searching for further answers
            }
            return true;
        }
        if (depth >= limits_.max_resolution_depth) {
            exhausted_ = true;
            return false;
        }
        Atom goal = goals.front();
        std::vector<Atom> rest(goals.begin() + 1, goals.end());

        if (builtins_.handles(goal.pred)) {
            for (const auto& s : builtins_.solve(goal)) {
                std::vector<Atom> next;
                next.reserve(rest.size());
                for (const auto& g : rest) next.push_back(apply_substitution(g, s));
                Atom saved = answer_goal_;
                if (emit) answer_goal_ = apply_substitution(answer_goal_, s);
                bool ok = prove(std::move(next), depth + 1, emit);
                answer_goal_ = saved;
                if (ok) return true;
            }
            return false;
        }

        auto it = by_pred_.find({goal.pred, goal.arity()});
        if (it == by_pred_.end()) return false;
        for (const Clause& c : it->second) {
            std::map<SymbolId, SymbolId> renaming;
            Atom head = detail::rename_fresh(*c.head, renaming, fresh_counter_);
            auto mgu = unify(head, goal);
            if (!mgu) continue;
            std::vector<Atom> next;
            next.reserve(c.body.size() + rest.size());
            for (const auto& b : c.body) {
                Atom rb = detail::rename_fresh(b, renaming, fresh_counter_);
                next.push_back(apply_substitution(rb, *mgu));
            }
            for (const auto& g : rest) next.push_back(apply_substitution(g, *mgu));
            Atom saved = answer_goal_;
            if (emit) answer_goal_ = apply_substitution(answer_goal_, *mgu);
            bool ok = prove(std::move(next), depth + 1, emit);
            answer_goal_ = saved;
            if (ok) return true;
        }
        return false;
    }

    std::map<PredicateKey, std::vector<Clause>> by_pred_;
    EvalLimits limits_;
    Builtins builtins_;
    Clock::time_point start_;
    bool exhausted_ = false;
    bool timed_out_ = false;
    size_t steps_ = 0;
    size_t fresh_counter_ = 0;
    Atom answer_goal_;
};

inline QueryResult query(const ClausalTheory& program, const Atom& goal, const EvalLimits& lim,
                         const Builtins& builtins = {}) {
    Evaluator ev(program, lim, builtins);
    return ev.query(goal);
}

struct CoverResult {
    bool covered = false;
    bool timed_out = false;
};

/// Does B together with the hypothesis prove the example? Resource
/// exhaustion counts as not-covered but is reported separately.
inline CoverResult covers(const ClausalTheory& B, const Hypothesis& H, const Atom& e,
                          const EvalLimits& lim, const Builtins& builtins = {}) {
    ClausalTheory program = B;
    for (const auto& c : H.clauses) program.push_back(c);
    QueryResult r = query(program, e, lim, builtins);
    return {r == QueryResult::proven, r == QueryResult::resource_exhausted};
}

struct TestOutcome {
    std::vector<Atom> uncovered_pos;
    std::vector<Atom> covered_neg;
    std::vector<Atom> timed_out;

    bool is_solution() const {
        return uncovered_pos.empty() && covered_neg.empty() && timed_out.empty();
    }
    bool is_failure() const { return !is_solution(); }
};

inline TestOutcome test_hypothesis(const ClausalTheory& B, const Hypothesis& H,
                                   const std::vector<Atom>& pos, const std::vector<Atom>& neg,
                                   const EvalLimits& lim, const Builtins& builtins = {}) {
    TestOutcome out;
    ClausalTheory program = B;
    for (const auto& c : H.clauses) program.push_back(c);
    for (const auto& e : pos) {
        QueryResult r = query(program, e, lim, builtins);
        if (r == QueryResult::resource_exhausted) out.timed_out.push_back(e);
        else if (r != QueryResult::proven) out.uncovered_pos.push_back(e);
    }
    for (const auto& e : neg) {
        QueryResult r = query(program, e, lim, builtins);
        if (r == QueryResult::resource_exhausted) out.timed_out.push_back(e);
        else if (r == QueryResult::proven) out.covered_neg.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forward-chaining least Herbrand model for function-free, range-restricted
// programs.

inline std::unordered_set<Atom, AtomHash> least_model(const ClausalTheory& B,
                                                      size_t max_model_size = 1000000) {
    // Validate preconditions.
    auto term_ok = [](const Term& t) {
        return t.kind != Term::Kind::compound;
    };
    for (const auto& c : B) {
        if (!c.head) throw EvalError("least_model: headless clause");
        for (const auto& t : c.head->args)
            if (!term_ok(t)) throw EvalError("least_model: program is not function-free");
        for (const auto& b : c.body)
            for (const auto& t : b.args)
                if (!term_ok(t)) throw EvalError("least_model: program is not function-free");
        std::vector<SymbolId> hv, bv;
        collect_vars(*c.head, hv);
        for (const auto& b : c.body) collect_vars(b, bv);
        for (SymbolId v : hv)
            if (std::find(bv.begin(), bv.end(), v) == bv.end())
                throw EvalError("least_model: clause is not range-restricted: " + to_string(c));
    }

    std::unordered_set<Atom, AtomHash> facts;
    std::unordered_map<SymbolId, std::vector<Atom>> by_pred;
    auto add = [&](const Atom& a) {
        if (facts.insert(a).second) {
            by_pred[a.pred].push_back(a);
            if (facts.size() > max_model_size)
                throw EvalError("least_model: model size limit exceeded");
            return true;
        }
        return false;
    };

    for (const auto& c : B)
        if (c.body.empty() && c.head->is_ground()) add(*c.head);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : B) {
            if (c.body.empty()) continue;
            // Join body literals left to right against the current facts.
            std::function<void(size_t, const Substitution&)> join = [&](size_t i,
                                                                        const Substitution& s) {
                if (i == c.body.size()) {
                    Atom h = apply_substitution(*c.head, s);
                    if (add(h)) changed = true;
                    return;
                }
                Atom g = apply_substitution(c.body[i], s);
                auto it = by_pred.find(g.pred);
                if (it == by_pred.end()) return;
                // Iterate over a snapshot: facts added this round are picked
                // up on the next outer iteration.
                size_t n = it->second.size();
                for (size_t k = 0; k < n; ++k) {
                    const Atom& f = it->second[k];
                    if (f.args.size() != g.args.size()) continue;
                    auto mgu = unify(g, f);
                    if (mgu) join(i + 1, compose(s, *mgu));
                }
            };
            join(0, Substitution{});
        }
    }
    return facts;
}

}  // namespace ilp
