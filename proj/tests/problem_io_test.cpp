#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "ilp/modes.hpp"
#include "ilp/parser.hpp"
#include "ilp/problem.hpp"
#include "ilp/stats.hpp"

using namespace ilp;
using ilp::test::clause;

TEST_CASE("parse_bias", "[problem-io]") {
    SECTION("worked reduced bias") {
        LanguageBias b = parse_bias(ilp::test::kPalindromeBias);
        CHECK(b.head_decls.size() == 1);
        CHECK(b.body_decls.size() == 4);
        CHECK(b.type_decls.size() == 5);
        CHECK(b.direction_decls.size() == 5);
        // defaults per the trains settings
        CHECK(b.limits.max_vars == 5);
        CHECK(b.limits.max_clauses == 4);
        CHECK(b.limits.max_body == 5);
        CHECK_FALSE(b.recursion_enabled);
    }
    SECTION("paired tuples") {
        LanguageBias b = parse_bias(
            "head_pred(p,1). body_pred(first,2).\n"
            "type(p,(list,)). type(first,(list,element)).\n"
            "direction(p,(in,)). direction(first,(in,out)).\n");
        auto* t = b.types_of(intern("first"), 2);
        REQUIRE(t);
        CHECK(symbol_name((*t)[0]) == "list");
        CHECK(symbol_name((*t)[1]) == "element");
        auto* d = b.directions_of(intern("first"), 2);
        REQUIRE(d);
        CHECK((*d)[0] == Direction::in);
        CHECK((*d)[1] == Direction::out);
    }
    SECTION("empty file") {
        CHECK_THROWS_WITH(parse_bias(""), Catch::Matchers::ContainsSubstring("no head_pred"));
    }
    SECTION("settings and recursion flag") {
        LanguageBias b = parse_bias(
            "head_pred(f,2). max_vars(3). max_clauses(2). max_body(4). enable_recursion.\n");
        CHECK(b.limits.max_vars == 3);
        CHECK(b.limits.max_clauses == 2);
        CHECK(b.limits.max_body == 4);
        CHECK(b.recursion_enabled);
    }
    SECTION("unknown declarations are hard errors") {
        CHECK_THROWS(parse_bias("head_pred(p,1). body_prd(q,1)."));
    }
    SECTION("duplicate conflicting declarations") {
        CHECK_THROWS(parse_bias("head_pred(p,1). type(p,(list,)). type(p,(element,))."));
    }
    SECTION("round trip is a fixpoint") {
        LanguageBias b = parse_bias(ilp::test::kPalindromeBias);
        std::string text = render_bias(b);
        LanguageBias b2 = parse_bias(text);
        CHECK(render_bias(b2) == text);
    }
}

TEST_CASE("parse_bk", "[problem-io]") {
    SECTION("trains facts") {
        const char* t3 = R"(
            train(t3).
            has_car(t3, t3_c1).
            has_car(t3, t3_c2).
            short(t3_c1).
            short(t3_c2).
            two_wheels(t3_c1).
            two_wheels(t3_c2).
            roof_open(t3_c1).
            roof_open(t3_c2).
            has_load(t3_c1, t3_c1_l1).
            has_load(t3_c2, t3_c2_l1).
            triangle(t3_c1_l1).
            rectangle(t3_c2_l1).
        )";
        ClausalTheory th = parse_bk(t3);
        CHECK(th.size() == 13);
        for (const auto& c : th) CHECK(c.is_fact());
    }
    SECTION("list patterns") {
        ClausalTheory th = parse_bk("last([H],H).\nlast([_|T],X) :- last(T,X).\n");
        REQUIRE(th.size() == 2);
        CHECK(to_string(th[0]) == "last([H],H).");
        CHECK(to_string(th[1]) == "last([_|T],X):-last(T,X).");
    }
    SECTION("negated body literals are rejected") {
        CHECK_THROWS(parse_bk("p(X) :- \\+ q(X)."));
    }
    SECTION("render then parse round trip") {
        ClausalTheory th = parse_bk(ilp::test::kPalindromeBk);
        std::string text = render_bk(th);
        CHECK(render_bk(parse_bk(text)) == text);
    }
}

TEST_CASE("parse_examples", "[problem-io]") {
    SECTION("wrappers route to the two sets") {
        ExampleSets ex = parse_examples("pos(f(t3)). pos(f(t4)). neg(f(t1)). neg(f(t2)).");
        REQUIRE(ex.pos.size() == 2);
        REQUIRE(ex.neg.size() == 2);
        CHECK(to_string(ex.pos[0]) == "f(t3)");
        CHECK(to_string(ex.neg[1]) == "f(t2)");
    }
    SECTION("list example") {
        ExampleSets ex = parse_examples("pos(palindrome([a])).");
        REQUIRE(ex.pos.size() == 1);
        CHECK(to_string(ex.pos[0]) == "palindrome([a])");
    }
    SECTION("non-ground examples are rejected") {
        CHECK_THROWS_WITH(parse_examples("pos(f(X))."),
                          Catch::Matchers::ContainsSubstring("not ground"));
    }
    SECTION("unknown wrapper") {
        CHECK_THROWS(parse_examples("maybe(f(a))."));
    }
    SECTION("round trip") {
        ExampleSets ex = parse_examples(ilp::test::kPalindromeExamples);
        std::string text = render_examples(ex);
        CHECK(render_examples(parse_examples(text)) == text);
    }
}

TEST_CASE("validate_problem", "[problem-io]") {
    EvalLimits lim;
    lim.per_query_timeout = std::chrono::milliseconds(100);
    SECTION("palindrome problem validates") {
        ProblemInput p = make_problem(ilp::test::kPalindromeBiasFull, ilp::test::kPalindromeBk,
                                      ilp::test::kPalindromeExamples);
        CHECK(validate_problem(p, lim).empty());
    }
    SECTION("entailed positive example") {
        ProblemInput p = make_problem("head_pred(f,1). type(f,(a,)). direction(f,(in,)).",
                                      "f(t1).", "pos(f(t1)).");
        auto v = validate_problem(p, lim);
        REQUIRE_FALSE(v.empty());
        CHECK_THAT(v[0], Catch::Matchers::ContainsSubstring("B entails positive"));
    }
    SECTION("head predicate in BK body") {
        ProblemInput p = make_problem("head_pred(f,1). type(f,(a,)). direction(f,(in,)).",
                                      "q(X):-f(X).", "pos(f(t1)).");
        auto v = validate_problem(p, lim);
        bool found = false;
        for (const auto& s : v)
            if (s.find("head predicate in BK body") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("to_mode_declarations", "[problem-io]") {
    SECTION("worked bias to modes") {
        LanguageBias b = parse_bias(ilp::test::kPalindromeBias);
        auto modes = to_mode_declarations(b);
        REQUIRE(modes.size() == 5);
        std::vector<std::string> rendered;
        for (const auto& m : modes) rendered.push_back(to_string(m));
        CHECK(rendered[0] == "modeh(*, palindrome(+list))");
        CHECK_THAT(rendered, Catch::Matchers::VectorContains(
                                 std::string("modeb(*, last(+list,-element))")));
        CHECK_THAT(rendered,
                   Catch::Matchers::VectorContains(std::string("modeb(*, empty(-list))")));
    }
    SECTION("information preserving over predicates, arities, directions, types") {
        LanguageBias b = parse_bias(ilp::test::kPalindromeBiasFull);
        auto modes = to_mode_declarations(b);
        REQUIRE(modes.size() == b.head_decls.size() + b.body_decls.size());
        for (const auto& m : modes) {
            PredicateKey key{m.pred, m.arity()};
            const auto* types = b.types_of(key.pred, key.arity);
            const auto* dirs = b.directions_of(key.pred, key.arity);
            REQUIRE(types);
            REQUIRE(dirs);
            for (size_t i = 0; i < m.arity(); ++i) {
                CHECK(m.args[i].type == (*types)[i]);
                CHECK(m.args[i].direction == (*dirs)[i]);
            }
        }
    }
    SECTION("missing type declaration") {
        LanguageBias b = parse_bias("head_pred(p,1). body_pred(q,1). direction(p,(in,)).");
        CHECK_THROWS(to_mode_declarations(b));
    }
}

TEST_CASE("write_stats_csv", "[problem-io]") {
    SECTION("one run gives two lines") {
        StatsRow row;
        row.task = "trains";
        row.mode = "both";
        row.seed = 42;
        row.stats.programs_generated = 7;
        row.stats.solved = true;
        std::ostringstream out;
        size_t bytes = write_stats_csv({row}, out);
        std::string text = out.str();
        CHECK(bytes == text.size());
        CHECK(std::count(text.begin(), text.end(), '\n') == 2);
        CHECK(text.rfind("task,mode,seed,solved", 0) == 0);
    }
    SECTION("empty sequence is header only") {
        std::ostringstream out;
        write_stats_csv({}, out);
        std::string text = out.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }
    SECTION("round-trip parse of many rows") {
        std::vector<StatsRow> rows;
        for (int i = 0; i < 200; ++i) {
            StatsRow r;
            r.task = "t" + std::to_string(i % 4);
            r.mode = i % 2 ? "baseline" : "both";
            r.seed = uint64_t(i);
            r.stats.programs_generated = size_t(i * 3);
            r.accuracy = 0.5 + 0.001 * i;
            rows.push_back(r);
        }
        std::ostringstream out;
        write_stats_csv(rows, out);
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        size_t commas = size_t(std::count(line.begin(), line.end(), ','));
        size_t n = 0;
        double mean_programs = 0;
        while (std::getline(in, line)) {
            CHECK(size_t(std::count(line.begin(), line.end(), ',')) == commas);
            // programs_generated is column 11
            std::istringstream ls(line);
            std::string f;
            for (int c = 0; c <= 10; ++c) std::getline(ls, f, ',');
            mean_programs += std::stod(f);
            ++n;
        }
        CHECK(n == 200);
        CHECK(mean_programs / double(n) == Catch::Approx(298.5));
    }
}
