#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ilp/bigint.hpp"
#include "ilp/learner.hpp"
#include "ilp/problem.hpp"
#include "ilp/stats.hpp"

namespace ilp {

// ---------------------------------------------------------------------------
// Hypothesis-space bound.

/// Sum over hypothesis sizes j of C(|Lh| v^a * Sum_i C(|Lb| v^a, i), j)
/// with v = max_vars, m = max_body, n = max_clauses, a = max declared arity.
inline BigInt hypothesis_space_bound(const LanguageBias& L) {
    BigInt v = L.limits.max_vars;
    size_t a = L.max_declared_arity();
    BigInt va = 1;
    for (size_t i = 0; i < a; ++i) va *= v;
    BigInt head_forms = BigInt(L.head_decls.size()) * va;
    BigInt body_forms = BigInt(L.body_decls.size()) * va;
    BigInt bodies = 0;
    for (size_t i = 1; i <= L.limits.max_body; ++i) bodies += binomial(body_forms, BigInt(i));
    BigInt clauses = head_forms * bodies;
    BigInt total = 0;
    for (size_t j = 1; j <= L.limits.max_clauses; ++j) total += binomial(clauses, BigInt(j));
    return total;
}

// ---------------------------------------------------------------------------
// Synthetic trains problems.

struct TrainsSpec {
    size_t n_trains = 100;
    uint64_t seed = 0;
    Clause hidden_rule;  // labeling rule over the trains vocabulary
    size_t n_pos = 5;
    size_t n_neg = 5;
};

namespace bench_detail {

struct TrainsVocabulary {
    // 22 body predicates: structural links plus car and load attributes.
    static const std::vector<std::string>& car_attrs() {
        static const std::vector<std::string> v = {
            "short",     "long",       "two_wheels", "three_wheels", "roof_open",
            "roof_closed", "roof_flat", "roof_peaked", "zero_loads",  "one_load",
            "two_loads", "three_loads"};
        return v;
    }
    static const std::vector<std::string>& load_shapes() {
        static const std::vector<std::string> v = {"circle",  "triangle", "rectangle",
                                                   "square",  "diamond",  "hexagon",
                                                   "u_shaped"};
        return v;
    }
};

inline std::string trains_bias_text() {
    std::string out;
    out += "head_pred(f,1).\n";
    out += "body_pred(train,1).\nbody_pred(has_car,2).\nbody_pred(has_load,2).\n";
    for (const auto& a : TrainsVocabulary::car_attrs()) out += "body_pred(" + a + ",1).\n";
    for (const auto& s : TrainsVocabulary::load_shapes()) out += "body_pred(" + s + ",1).\n";
    out += "type(f,(train,)).\ntype(train,(train,)).\n";
    out += "type(has_car,(train,car)).\ntype(has_load,(car,load)).\n";
    for (const auto& a : TrainsVocabulary::car_attrs()) out += "type(" + a + ",(car,)).\n";
    for (const auto& s : TrainsVocabulary::load_shapes()) out += "type(" + s + ",(load,)).\n";
    out += "direction(f,(in,)).\ndirection(train,(in,)).\n";
    out += "direction(has_car,(in,out)).\ndirection(has_load,(in,out)).\n";
    for (const auto& a : TrainsVocabulary::car_attrs()) out += "direction(" + a + ",(in,)).\n";
    for (const auto& s : TrainsVocabulary::load_shapes())
        out += "direction(" + s + ",(in,)).\n";
    out += "max_vars(5).\nmax_clauses(4).\nmax_body(5).\n";
    return out;
}

inline std::string trains_bk_text(size_t n_trains, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string out;
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    for (size_t t = 1; t <= n_trains; ++t) {
        std::string train = "t" + std::to_string(t);
        out += "train(" + train + ").\n";
        size_t cars = 1 + rng() % 4;
        for (size_t c = 1; c <= cars; ++c) {
            std::string car = train + "_c" + std::to_string(c);
            out += "has_car(" + train + "," + car + ").\n";
            out += std::string(rng() % 2 ? "short(" : "long(") + car + ").\n";
            out += std::string(rng() % 2 ? "two_wheels(" : "three_wheels(") + car + ").\n";
            const char* roofs[] = {"roof_open", "roof_closed", "roof_flat", "roof_peaked"};
            out += std::string(roofs[rng() % 4]) + "(" + car + ").\n";
            size_t loads = rng() % 4;
            const char* counts[] = {"zero_loads", "one_load", "two_loads", "three_loads"};
            out += std::string(counts[loads]) + "(" + car + ").\n";
            for (size_t l = 1; l <= loads; ++l) {
                std::string load = car + "_l" + std::to_string(l);
                out += "has_load(" + car + "," + load + ").\n";
                out += pick(TrainsVocabulary::load_shapes()) + "(" + load + ").\n";
            }
        }
    }
    return out;
}

}  // namespace bench_detail

inline Clause default_trains_rule() {
    detail::Lexer lx("f(A):-has_car(A,B),has_load(B,C),rectangle(C).");
    return detail::parse_clause(lx);
}

/// Deterministically generate a trains problem: seeded trains with 1-4 cars,
/// car attributes and loads over the 22-predicate vocabulary, labeled by the
/// hidden rule, with disjoint positive/negative example samples.
inline ProblemInput gen_trains_problem(const TrainsSpec& spec) {
    ProblemInput p;
    p.bias = parse_bias(bench_detail::trains_bias_text());
    std::string bk_text = bench_detail::trains_bk_text(spec.n_trains, spec.seed);
    p.bk = parse_bk(bk_text);

    Clause rule = spec.hidden_rule.head ? spec.hidden_rule : default_trains_rule();
    Hypothesis h = Hypothesis::of({rule});
    EvalLimits lim;
    lim.per_query_timeout = std::chrono::milliseconds(100);

    std::vector<std::string> pos_trains, neg_trains;
    for (size_t t = 1; t <= spec.n_trains; ++t) {
        std::string name = "t" + std::to_string(t);
        Atom goal{intern("f"), {Term::constant(name)}};
        if (covers(p.bk, h, goal, lim).covered) pos_trains.push_back(name);
        else neg_trains.push_back(name);
    }
    if (pos_trains.size() < spec.n_pos || neg_trains.size() < spec.n_neg)
        throw std::runtime_error(
            "trains seed yields too few trains of one label; increase n_trains");

    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(pos_trains.begin(), pos_trains.end(), rng);
    std::shuffle(neg_trains.begin(), neg_trains.end(), rng);
    for (size_t i = 0; i < spec.n_pos; ++i)
        p.pos.push_back(Atom{intern("f"), {Term::constant(pos_trains[i])}});
    for (size_t i = 0; i < spec.n_neg; ++i)
        p.neg.push_back(Atom{intern("f"), {Term::constant(neg_trains[i])}});
    return p;
}

// ---------------------------------------------------------------------------
// Irrelevant-BK injection.

/// Add i dyadic predicates has_useless_k(train,car), each with one fact over
/// a train absent from every example.
inline ProblemInput inject_irrelevant_dyadic(const ProblemInput& p, size_t i) {
    ProblemInput out = p;
    for (size_t k = 1; k <= i; ++k) {
        std::string name = "has_useless_" + std::to_string(k);
        PredicateKey key{intern(name), 2};
        out.bias.body_decls.push_back(key);
        out.bias.type_decls[key] = {intern("train"), intern("car")};
        out.bias.direction_decls[key] = {Direction::in, Direction::out};
        Clause fact;
        fact.head = Atom{key.pred,
                         {Term::constant("t_unused"), Term::constant("t_unused_c1")}};
        out.bk.push_back(fact);
    }
    return out;
}

/// Add i monadic constant-surrogate predicates c_k(load). The default
/// placement puts the fact on a load of the unused train; shared placement
/// reuses one load constant reachable from the examples.
inline ProblemInput inject_irrelevant_monadic(const ProblemInput& p, size_t i,
                                              bool shared_constant = false) {
    ProblemInput out = p;
    std::string target = "t_unused_c1_l1";
    if (shared_constant) {
        // first load constant mentioned in the BK, so it reaches bottom clauses
        for (const auto& c : out.bk) {
            if (c.head && symbol_name(c.head->pred) == "has_load") {
                target = symbol_name(c.head->args[1].sym);
                break;
            }
        }
    }
    for (size_t k = 1; k <= i; ++k) {
        std::string name = "c_" + std::to_string(k);
        PredicateKey key{intern(name), 1};
        out.bias.body_decls.push_back(key);
        out.bias.type_decls[key] = {intern("load")};
        out.bias.direction_decls[key] = {Direction::out};
        Clause fact;
        fact.head = Atom{key.pred, {Term::constant(target)}};
        out.bk.push_back(fact);
    }
    return out;
}

// ---------------------------------------------------------------------------
// List manipulation tasks.

enum class ListTask : uint8_t {
    dropk,
    droplast,
    evens,
    finddup,
    last,
    len,
    member,
    sorted,
    sumlist
};

inline const char* to_string(ListTask t) {
    switch (t) {
        case ListTask::dropk: return "dropk";
        case ListTask::droplast: return "droplast";
        case ListTask::evens: return "evens";
        case ListTask::finddup: return "finddup";
        case ListTask::last: return "last";
        case ListTask::len: return "len";
        case ListTask::member: return "member";
        case ListTask::sorted: return "sorted";
        case ListTask::sumlist: return "sumlist";
    }
    return "?";
}

inline std::optional<ListTask> parse_list_task(const std::string& s) {
    for (ListTask t : {ListTask::dropk, ListTask::droplast, ListTask::evens, ListTask::finddup,
                       ListTask::last, ListTask::len, ListTask::member, ListTask::sorted,
                       ListTask::sumlist})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

namespace bench_detail {

// Reference implementations of the nine target relations.
struct ListOracle {
    using List = std::vector<int64_t>;

    static bool holds(ListTask task, const List& a, int64_t k, const List& b, int64_t n) {
        switch (task) {
            case ListTask::dropk: {
                if (k < 1 || size_t(k) > a.size()) return false;
                List want(a.begin() + k, a.end());
                return want == b;
            }
            case ListTask::droplast: {
                if (a.empty()) return false;
                List want(a.begin(), a.end() - 1);
                return want == b;
            }
            case ListTask::evens: {
                for (int64_t x : a)
                    if (x % 2 != 0) return false;
                return true;
            }
            case ListTask::finddup: {
                std::map<int64_t, int> counts;
                for (int64_t x : a) counts[x]++;
                return counts.count(n) && counts[n] >= 2;
            }
            case ListTask::last: return !a.empty() && a.back() == n;
            case ListTask::len: return int64_t(a.size()) == n;
            case ListTask::member: {
                return std::find(a.begin(), a.end(), n) != a.end();
            }
            case ListTask::sorted: {
                for (size_t i = 1; i < a.size(); ++i)
                    if (a[i - 1] > a[i]) return false;
                return true;
            }
            case ListTask::sumlist: {
                int64_t s = 0;
                for (int64_t x : a) s += x;
                return s == n;
            }
        }
        return false;
    }
};

inline std::string list_term(const std::vector<int64_t>& xs) {
    std::string out = "[";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    out += "]";
    return out;
}

inline std::string lists_bias_text(ListTask task) {
    std::string out;
    bool dyadic_out = task == ListTask::dropk || task == ListTask::droplast ||
                      task == ListTask::evens;
    // head declaration per task
    switch (task) {
        case ListTask::dropk:
            out += "head_pred(f,3).\ntype(f,(list,int,list)).\ndirection(f,(in,in,out)).\n";
            break;
        case ListTask::droplast:
            out += "head_pred(f,2).\ntype(f,(list,list)).\ndirection(f,(in,out)).\n";
            break;
        case ListTask::evens:
        case ListTask::sorted:
            out += "head_pred(f,1).\ntype(f,(list,)).\ndirection(f,(in,)).\n";
            break;
        default:
            out += "head_pred(f,2).\ntype(f,(list,int)).\ndirection(f,(in,out)).\n";
            break;
    }
    (void)dyadic_out;
    out += R"(body_pred(head,2).
body_pred(tail,2).
body_pred(geq,2).
body_pred(empty,1).
body_pred(even,1).
body_pred(odd,1).
body_pred(one,1).
body_pred(zero,1).
body_pred(decrement,2).
type(head,(list,int)).
type(tail,(list,list)).
type(geq,(int,int)).
type(empty,(list,)).
type(even,(int,)).
type(odd,(int,)).
type(one,(int,)).
type(zero,(int,)).
type(decrement,(int,int)).
direction(head,(in,out)).
direction(tail,(in,out)).
direction(geq,(in,in)).
direction(empty,(in,)).
direction(even,(in,)).
direction(odd,(in,)).
direction(one,(out,)).
direction(zero,(out,)).
direction(decrement,(in,out)).
max_vars(5).
max_clauses(2).
max_body(5).
enable_recursion.
)";
    if (task == ListTask::droplast)
        out += "body_pred(cons,3).\ntype(cons,(int,list,list)).\ndirection(cons,(in,in,out)).\n";
    if (task == ListTask::finddup)
        out += "body_pred(element,2).\ntype(element,(list,int)).\ndirection(element,(in,out)).\n";
    if (task == ListTask::len)
        out +=
            "body_pred(increment,2).\ntype(increment,(int,int)).\ndirection(increment,(in,out))"
            ".\n";
    if (task == ListTask::sumlist)
        out += "body_pred(sum,3).\ntype(sum,(int,int,int)).\ndirection(sum,(in,in,out)).\n";
    return out;
}

inline std::string lists_bk_text() {
    std::string out = R"(head([H|_],H).
tail([_|T],T).
empty([]).
cons(H,T,[H|T]).
element([H|_],H).
element([_|T],X):-element(T,X).
)";
    // pure integer relations over the bounded element domain
    for (int i = -1; i <= 60; ++i) {
        out += "increment(" + std::to_string(i) + "," + std::to_string(i + 1) + ").\n";
        out += "decrement(" + std::to_string(i + 1) + "," + std::to_string(i) + ").\n";
    }
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= i; ++j)
            out += "geq(" + std::to_string(i) + "," + std::to_string(j) + ").\n";
    for (int i = 0; i <= 60; ++i) {
        if (i % 2 == 0) out += "even(" + std::to_string(i) + ").\n";
        else out += "odd(" + std::to_string(i) + ").\n";
    }
    out += "zero(0).\none(1).\n";
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j)
            if (i + j <= 60) out += "sum(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(i + j) + ").\n";
    return out;
}

struct ListExample {
    std::string rendered;  // the f(...) atom text
    bool positive;
};

// Sample one labeled example for a task; negatives corrupt a positive answer.
inline ListExample sample_list_example(ListTask task, std::mt19937_64& rng, bool want_positive) {
    using List = std::vector<int64_t>;
    auto rand_list = [&](size_t min_len, size_t max_len) {
        size_t len = min_len + rng() % (max_len - min_len + 1);
        List xs;
        for (size_t i = 0; i < len; ++i) xs.push_back(int64_t(rng() % 10));
        return xs;
    };
    ListExample out;
    out.positive = want_positive;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        switch (task) {
            case ListTask::dropk: {
                List a = rand_list(1, 10);
                int64_t k = 1 + int64_t(rng() % a.size());
                List b(a.begin() + k, a.end());
                if (!want_positive) {
                    if (rng() % 2 && !b.empty()) b[rng() % b.size()] = int64_t(rng() % 10);
                    else b.push_back(int64_t(rng() % 10));
                    if (ListOracle::holds(task, a, k, b, 0)) continue;
                }
                out.rendered = "f(" + list_term(a) + "," + std::to_string(k) + "," +
                               list_term(b) + ")";
                return out;
            }
            case ListTask::droplast: {
                List a = rand_list(1, 10);
                List b(a.begin(), a.end() - 1);
                if (!want_positive) {
                    if (rng() % 2 && !b.empty()) b[rng() % b.size()] = int64_t(rng() % 10);
                    else b.push_back(int64_t(rng() % 10));
                    if (ListOracle::holds(task, a, 0, b, 0)) continue;
                }
                out.rendered = "f(" + list_term(a) + "," + list_term(b) + ")";
                return out;
            }
            case ListTask::evens: {
                List a = rand_list(0, 10);
                if (want_positive)
                    for (auto& x : a) x = (x / 2) * 2;
                bool ok = ListOracle::holds(task, a, 0, {}, 0);
                if (ok != want_positive) continue;
                out.rendered = "f(" + list_term(a) + ")";
                return out;
            }
            case ListTask::finddup: {
                List a = rand_list(2, 10);
                int64_t n;
                if (want_positive) {
                    n = a[rng() % a.size()];
                    a.push_back(n);
                    std::shuffle(a.begin(), a.end(), rng);
                } else {
                    n = int64_t(rng() % 10);
                }
                if (ListOracle::holds(task, a, 0, {}, n) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + "," + std::to_string(n) + ")";
                return out;
            }
            case ListTask::last: {
                List a = rand_list(1, 10);
                int64_t n = want_positive ? a.back() : int64_t(rng() % 10);
                if (ListOracle::holds(task, a, 0, {}, n) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + "," + std::to_string(n) + ")";
                return out;
            }
            case ListTask::len: {
                List a = rand_list(0, 10);
                int64_t n = want_positive ? int64_t(a.size()) : int64_t(rng() % 11);
                if (ListOracle::holds(task, a, 0, {}, n) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + "," + std::to_string(n) + ")";
                return out;
            }
            case ListTask::member: {
                List a = rand_list(1, 10);
                int64_t n = want_positive ? a[rng() % a.size()] : int64_t(rng() % 10);
                if (ListOracle::holds(task, a, 0, {}, n) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + "," + std::to_string(n) + ")";
                return out;
            }
            case ListTask::sorted: {
                List a = rand_list(1, 10);
                if (want_positive) std::sort(a.begin(), a.end());
                if (ListOracle::holds(task, a, 0, {}, 0) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + ")";
                return out;
            }
            case ListTask::sumlist: {
                List a = rand_list(0, 6);
                int64_t s = 0;
                for (int64_t x : a) s += x;
                int64_t n = want_positive ? s : int64_t(rng() % 40);
                if (ListOracle::holds(task, a, 0, {}, n) != want_positive) continue;
                out.rendered = "f(" + list_term(a) + "," + std::to_string(n) + ")";
                return out;
            }
        }
    }
    throw std::runtime_error("could not sample a list example");
}

}  // namespace bench_detail

/// Seeded list-task problem: n_pos/n_neg sampled examples over integer lists
/// of length 0-10 with elements 0-9, labeled by the reference relations.
inline ProblemInput gen_list_problem(ListTask task, uint64_t seed, size_t n_pos = 10,
                                     size_t n_neg = 10) {
    std::mt19937_64 rng(seed);
    std::string exs;
    std::set<std::string> used;
    size_t got_pos = 0, got_neg = 0;
    while (got_pos < n_pos || got_neg < n_neg) {
        bool want_pos = got_pos < n_pos;
        auto ex = bench_detail::sample_list_example(task, rng, want_pos);
        if (!used.insert(ex.rendered).second) continue;
        exs += (ex.positive ? "pos(" : "neg(") + ex.rendered + ").\n";
        (ex.positive ? got_pos : got_neg)++;
    }
    return make_problem(bench_detail::lists_bias_text(task), bench_detail::lists_bk_text(), exs);
}

/// Held-out accuracy of a hypothesis on freshly sampled examples.
inline double heldout_accuracy(ListTask task, const ProblemInput& p, const Hypothesis& h,
                               uint64_t seed, size_t n_each = 200) {
    std::mt19937_64 rng(seed ^ 0xabcdef1234567890ULL);
    EvalLimits lim;
    lim.per_query_timeout = std::chrono::milliseconds(5);
    size_t correct = 0, total = 0;
    for (bool positive : {true, false}) {
        for (size_t i = 0; i < n_each; ++i) {
            auto ex = bench_detail::sample_list_example(task, rng, positive);
            detail::Lexer lx(ex.rendered);
            Atom goal = detail::parse_atom(lx);
            bool covered = covers(p.bk, h, goal, lim, p.builtins).covered;
            if (covered == positive) ++correct;
            ++total;
        }
    }
    return double(correct) / double(total);
}

// ---------------------------------------------------------------------------
// Benchmark orchestration.

struct BenchResult {
    std::string task;
    SearchMode mode = SearchMode::baseline;
    uint64_t seed = 0;
    SearchStats stats;
    std::optional<bool> non_optimal;      // solution longer than baseline's
    std::optional<double> accuracy;       // list tasks only
    std::optional<std::string> solution;  // rendered program
};

struct BenchOptions {
    std::vector<SearchMode> modes = {SearchMode::baseline, SearchMode::both};
    Duration timeout = std::chrono::seconds(300);
    EvalLimits limits;
    size_t heldout = 200;
    size_t jobs = std::max(1u, std::thread::hardware_concurrency());
};

namespace bench_detail {

inline BenchResult run_one(const ProblemInput& p, const std::string& task, SearchMode mode,
                           uint64_t seed, const BenchOptions& opt,
                           std::optional<ListTask> list_task) {
    SearchConfig cfg;
    cfg.mode = mode;
    cfg.limits = opt.limits;
    cfg.overall_timeout = opt.timeout;
    cfg.seed = seed;
    BenchResult r;
    r.task = task;
    r.mode = mode;
    r.seed = seed;
    try {
        SolveResult sr = solve(p, cfg);
        r.stats = sr.stats;
        if (sr.solution) {
            std::string rendered;
            for (const auto& c : sr.solution->clauses) rendered += to_string(c) + " ";
            r.solution = rendered;
            if (list_task)
                r.accuracy = heldout_accuracy(*list_task, p, *sr.solution, seed, opt.heldout);
        }
    } catch (const std::exception& e) {
        // individual run failures are recorded, never abort the suite
        r.stats.solved = false;
    }
    return r;
}

}  // namespace bench_detail

/// Run each (problem, mode) pair in a worker pool with isolated state and
/// merge results deterministically by (task, seed, mode).
class BenchHarness {
public:
    explicit BenchHarness(BenchOptions opt) : opt_(std::move(opt)) {}

    using ProblemFactory = std::function<ProblemInput()>;

    void add(const std::string& task, uint64_t seed, ProblemFactory factory,
             std::optional<ListTask> list_task = std::nullopt) {
        jobs_.push_back({task, seed, std::move(factory), list_task});
    }

    std::vector<BenchResult> run() {
        struct Work {
            size_t job;
            SearchMode mode;
        };
        std::vector<Work> work;
        for (size_t j = 0; j < jobs_.size(); ++j)
            for (SearchMode m : opt_.modes) work.push_back({j, m});

        std::vector<BenchResult> results(work.size());
        std::atomic<size_t> cursor{0};
        auto worker = [&]() {
            while (true) {
                size_t i = cursor.fetch_add(1);
                if (i >= work.size()) return;
                const auto& w = work[i];
                const auto& job = jobs_[w.job];
                ProblemInput p = job.factory();
                results[i] = bench_detail::run_one(p, job.task, w.mode, job.seed, opt_,
                                                   job.list_task);
            }
        };
        std::vector<std::thread> pool;
        size_t n = std::min(opt_.jobs, work.size());
        for (size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();

        // Deterministic order and non-optimality flags relative to baseline.
        std::stable_sort(results.begin(), results.end(),
                         [](const BenchResult& a, const BenchResult& b) {
                             return std::tie(a.task, a.seed, a.mode) <
                                    std::tie(b.task, b.seed, b.mode);
                         });
        std::map<std::pair<std::string, uint64_t>, size_t> baseline_size;
        for (const auto& r : results)
            if (r.mode == SearchMode::baseline && r.stats.solved)
                baseline_size[{r.task, r.seed}] = r.stats.solution_literals;
        for (auto& r : results) {
            if (r.mode == SearchMode::baseline || !r.stats.solved) continue;
            auto it = baseline_size.find({r.task, r.seed});
            if (it != baseline_size.end()) r.non_optimal = r.stats.solution_literals > it->second;
        }
        return results;
    }

private:
    struct Job {
        std::string task;
        uint64_t seed;
        ProblemFactory factory;
        std::optional<ListTask> list_task;
    };
    BenchOptions opt_;
    std::vector<Job> jobs_;
};

inline std::vector<StatsRow> to_stats_rows(const std::vector<BenchResult>& results) {
    std::vector<StatsRow> rows;
    for (const auto& r : results) {
        StatsRow row;
        row.task = r.task;
        row.mode = to_string(r.mode);
        row.seed = r.seed;
        row.stats = r.stats;
        row.non_optimal = r.non_optimal;
        row.accuracy = r.accuracy;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ilp
