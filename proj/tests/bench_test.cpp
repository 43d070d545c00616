#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "helpers.hpp"
#include "ilp/bench.hpp"

using namespace ilp;
using ilp::test::atom;
using ilp::test::clause;

TEST_CASE("hypothesis_space_bound", "[bench-cli]") {
    auto micro = [](size_t heads, size_t bodies, size_t arity, size_t v, size_t m, size_t n) {
        LanguageBias L;
        for (size_t i = 0; i < heads; ++i)
            L.head_decls.push_back({intern("h" + std::to_string(i)), arity});
        for (size_t i = 0; i < bodies; ++i)
            L.body_decls.push_back({intern("b" + std::to_string(i)), arity});
        L.limits.max_vars = v;
        L.limits.max_body = m;
        L.limits.max_clauses = n;
        return L;
    };
    SECTION("hand-evaluated micro cases") {
        CHECK(hypothesis_space_bound(micro(1, 1, 1, 1, 1, 1)) == 1);
        // inner = 1*4*C(8,1) = 32; total C(32,1) = 32
        CHECK(hypothesis_space_bound(micro(1, 2, 2, 2, 1, 1)) == 32);
    }
    SECTION("empty sum when no clauses are allowed") {
        LanguageBias L = micro(1, 1, 1, 1, 1, 1);
        L.limits.max_clauses = 0;
        CHECK(hypothesis_space_bound(L) == 0);
    }
    SECTION("big instances stay exact integers") {
        LanguageBias L = parse_bias(bench_detail::trains_bias_text());
        BigInt bound = hypothesis_space_bound(L);
        CHECK(bound > BigInt(1000000));
    }
}

TEST_CASE("gen_trains_problem", "[bench-cli]") {
    TrainsSpec spec;
    spec.n_trains = 60;
    spec.seed = 7;
    SECTION("default rule labels positives with a rectangular load") {
        ProblemInput p = gen_trains_problem(spec);
        REQUIRE(p.pos.size() == 5);
        REQUIRE(p.neg.size() == 5);
        Hypothesis rule = Hypothesis::of({default_trains_rule()});
        EvalLimits lim;
        lim.per_query_timeout = std::chrono::milliseconds(100);
        for (const auto& e : p.pos) CHECK(covers(p.bk, rule, e, lim).covered);
        for (const auto& e : p.neg) CHECK_FALSE(covers(p.bk, rule, e, lim).covered);
    }
    SECTION("same seed gives byte-identical problems") {
        ProblemInput a = gen_trains_problem(spec);
        ProblemInput b = gen_trains_problem(spec);
        CHECK(render_bk(a.bk) == render_bk(b.bk));
        CHECK(render_bias(a.bias) == render_bias(b.bias));
        ExampleSets ea{a.pos, a.neg}, eb{b.pos, b.neg};
        CHECK(render_examples(ea) == render_examples(eb));
    }
    SECTION("hidden rule is recoverable as a solution") {
        ProblemInput p = gen_trains_problem(spec);
        Hypothesis rule = Hypothesis::of({default_trains_rule()});
        EvalLimits lim;
        lim.per_query_timeout = std::chrono::milliseconds(100);
        TestOutcome out = test_hypothesis(p.bk, rule, p.pos, p.neg, lim);
        CHECK(out.is_solution());
    }
    SECTION("the bias carries the full vocabulary") {
        ProblemInput p = gen_trains_problem(spec);
        CHECK(p.bias.body_decls.size() == 22);
    }
}

TEST_CASE("inject_irrelevant_dyadic", "[bench-cli]") {
    TrainsSpec spec;
    spec.n_trains = 40;
    spec.seed = 3;
    ProblemInput p = gen_trains_problem(spec);
    SECTION("adds declarations and one fact each") {
        ProblemInput q = inject_irrelevant_dyadic(p, 1);
        CHECK(q.bias.body_decls.size() == p.bias.body_decls.size() + 1);
        CHECK(q.bk.size() == p.bk.size() + 1);
        CHECK(q.bias.is_body_pred(intern("has_useless_1"), 2));
    }
    SECTION("zero injections change nothing") {
        ProblemInput q = inject_irrelevant_dyadic(p, 0);
        CHECK(render_bias(q.bias) == render_bias(p.bias));
        CHECK(q.bk.size() == p.bk.size());
    }
    SECTION("injected predicates never reach a bottom clause") {
        ProblemInput q = inject_irrelevant_dyadic(p, 10);
        EvalLimits lim;
        lim.per_query_timeout = std::chrono::milliseconds(100);
        for (const auto& e : q.pos) {
            BottomClause bc = build_bottom_clause_ie(q.bk, q.bias, e, Polarity::positive,
                                                     default_variable_depth(q.bias), lim);
            for (const auto& b : bc.clause.body)
                CHECK(symbol_name(b.pred).rfind("has_useless", 0) != 0);
        }
    }
}

TEST_CASE("inject_irrelevant_monadic", "[bench-cli]") {
    TrainsSpec spec;
    spec.n_trains = 40;
    spec.seed = 3;
    ProblemInput p = gen_trains_problem(spec);
    SECTION("adds out-moded load predicates") {
        ProblemInput q = inject_irrelevant_monadic(p, 1);
        CHECK(q.bias.is_body_pred(intern("c_1"), 1));
        const auto* dirs = q.bias.directions_of(intern("c_1"), 1);
        REQUIRE(dirs);
        CHECK((*dirs)[0] == Direction::out);
    }
    SECTION("zero is a no-op") {
        ProblemInput q = inject_irrelevant_monadic(p, 0);
        CHECK(render_bias(q.bias) == render_bias(p.bias));
    }
    SECTION("out-moded surrogates do reach bottom clauses") {
        ProblemInput q = inject_irrelevant_monadic(p, 3);
        EvalLimits lim;
        lim.per_query_timeout = std::chrono::milliseconds(100);
        BottomClause bc = build_bottom_clause_ie(q.bk, q.bias, q.pos[0], Polarity::positive,
                                                 default_variable_depth(q.bias), lim);
        size_t surrogates = 0;
        for (const auto& b : bc.clause.body)
            if (symbol_name(b.pred).rfind("c_", 0) == 0) ++surrogates;
        CHECK(surrogates == 3);
    }
}

TEST_CASE("list task sampling", "[bench-cli]") {
    SECTION("examples agree with the reference relations") {
        for (ListTask t : {ListTask::dropk, ListTask::droplast, ListTask::evens,
                           ListTask::finddup, ListTask::last, ListTask::len, ListTask::member,
                           ListTask::sorted, ListTask::sumlist}) {
            ProblemInput p = gen_list_problem(t, 19, 6, 6);
            CHECK(p.pos.size() == 6);
            CHECK(p.neg.size() == 6);
            EvalLimits lim;
            lim.per_query_timeout = std::chrono::milliseconds(100);
            CHECK(validate_problem(p, lim).empty());
        }
    }
    SECTION("reference solutions pass their problems") {
        EvalLimits lim;
        lim.per_query_timeout = std::chrono::milliseconds(50);
        struct Case {
            ListTask task;
            std::vector<const char*> program;
        };
        std::vector<Case> cases = {
            {ListTask::member, {"f(A,B):-head(A,B).", "f(A,B):-tail(A,C),f(C,B)."}},
            {ListTask::last,
             {"f(A,B):-tail(A,C),empty(C),head(A,B).", "f(A,B):-tail(A,C),f(C,B)."}},
            {ListTask::len,
             {"f(A,B):-empty(A),zero(B).", "f(A,B):-tail(A,C),f(C,D),increment(D,B)."}},
            {ListTask::dropk,
             {"f(A,B,C):-one(B),tail(A,C).", "f(A,B,C):-tail(A,D),decrement(B,E),f(D,E,C)."}},
            {ListTask::droplast,
             {"f(A,B):-tail(A,C),empty(C),empty(B).",
              "f(A,B):-head(A,C),tail(A,D),f(D,E),cons(C,E,B)."}},
            {ListTask::evens, {"f(A):-empty(A).", "f(A):-head(A,B),even(B),tail(A,C),f(C)."}},
            {ListTask::sumlist,
             {"f(A,B):-empty(A),zero(B).", "f(A,B):-head(A,C),tail(A,D),f(D,E),sum(C,E,B)."}},
            {ListTask::sorted,
             {"f(A):-tail(A,B),empty(B).",
              "f(A):-head(A,B),tail(A,C),head(C,D),geq(D,B),f(C)."}},
            {ListTask::finddup,
             {"f(A,B):-head(A,B),tail(A,C),element(C,B).", "f(A,B):-tail(A,C),f(C,B)."}},
        };
        for (const auto& c : cases) {
            ProblemInput p = gen_list_problem(c.task, 23, 8, 8);
            std::vector<Clause> clauses;
            for (const auto* text : c.program) clauses.push_back(clause(text));
            Hypothesis h = Hypothesis::of(clauses);
            TestOutcome out = test_hypothesis(p.bk, h, p.pos, p.neg, lim, p.builtins);
            INFO(std::string("task ") + to_string(c.task));
            CHECK(out.is_solution());
            CHECK(heldout_accuracy(c.task, p, h, 5, 50) >= 0.99);
        }
    }
}

TEST_CASE("run_benchmark", "[bench-cli]") {
    SECTION("row count and determinism on a tiny trains suite") {
        BenchOptions opt;
        opt.modes = {SearchMode::baseline, SearchMode::both};
        opt.timeout = std::chrono::seconds(60);
        opt.limits.per_query_timeout = std::chrono::milliseconds(10);
        opt.jobs = 2;
        auto build = [&]() {
            BenchHarness h(opt);
            for (uint64_t seed : {11ull, 12ull}) {
                h.add("trains", seed, [seed]() {
                    TrainsSpec spec;
                    spec.n_trains = 40;
                    spec.seed = seed;
                    return gen_trains_problem(spec);
                });
            }
            return h.run();
        };
        auto r1 = build();
        auto r2 = build();
        REQUIRE(r1.size() == 4);  // 2 problems x 2 modes
        REQUIRE(r2.size() == 4);
        for (size_t i = 0; i < r1.size(); ++i) {
            CHECK(r1[i].task == r2[i].task);
            CHECK(r1[i].seed == r2[i].seed);
            CHECK(r1[i].mode == r2[i].mode);
            CHECK(r1[i].stats.solved == r2[i].stats.solved);
            CHECK(r1[i].stats.programs_generated == r2[i].stats.programs_generated);
        }
        std::ostringstream sink;
        write_stats_csv(to_stats_rows(r1), sink);
        std::string text = sink.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    }
    SECTION("member solves quickly in both mode with few programs") {
        BenchOptions opt;
        opt.modes = {SearchMode::both};
        opt.timeout = std::chrono::seconds(120);
        opt.limits.per_query_timeout = std::chrono::milliseconds(5);
        opt.heldout = 50;
        BenchHarness h(opt);
        h.add(
            "member", 31, []() { return gen_list_problem(ListTask::member, 31); },
            ListTask::member);
        auto results = h.run();
        REQUIRE(results.size() == 1);
        CHECK(results[0].stats.solved);
        CHECK(results[0].stats.programs_generated <= 50);
        REQUIRE(results[0].accuracy);
        CHECK(*results[0].accuracy >= 0.95);
    }
}
