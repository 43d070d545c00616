#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ilp/bottom.hpp"
#include "ilp/parser.hpp"
#include "ilp/problem.hpp"
#include "ilp/subsume.hpp"

using namespace ilp;
using ilp::test::atom;
using ilp::test::clause;

namespace {

EvalLimits bc_limits() {
    EvalLimits lim;
    lim.per_query_timeout = std::chrono::milliseconds(200);
    return lim;
}

}  // namespace

TEST_CASE("build_bottom_clause_ie", "[bottom-builder]") {
    ProblemInput p = make_problem(ilp::test::kPalindromeBiasFull, ilp::test::kPalindromeBk,
                                  ilp::test::kPalindromeExamples);
    size_t depth = default_variable_depth(p.bias);

    SECTION("worked bottom clause of palindrome([a,t])") {
        BottomClause bc = build_bottom_clause_ie(p.bk, p.bias, atom("palindrome([a,t])"),
                                                 Polarity::negative, depth, bc_limits(), {},
                                                 p.builtins);
        REQUIRE_FALSE(bc.truncated);
        Clause want = clause(
            "palindrome(A):-first(A,B),last(A,C),middle(A,D),empty(D),"
            "length(A,F),length(D,G),one(E).");
        CHECK(to_string(canonical_form(bc.clause)) == to_string(canonical_form(want)));
        // creation-order naming: B=first out, C=last out, D=middle out,
        // E=one out, F=|A|, G=|D|
        CHECK(to_string(bc.clause) ==
              "palindrome(A):-first(A,B),last(A,C),middle(A,D),empty(D),one(E),"
              "length(A,F),length(D,G).");
        // ground witness records the pre-lifting instances
        CHECK(to_string(bc.ground_witness) ==
              "palindrome([a,t]):-first([a,t],a),last([a,t],t),middle([a,t],[]),"
              "empty([]),one(1),length([a,t],2),length([],0).");
    }
    SECTION("no matching body facts gives the lifted example") {
        ProblemInput q = make_problem(
            "head_pred(f,1). body_pred(g,2). type(f,(t,)). type(g,(t,t)).\n"
            "direction(f,(in,)). direction(g,(in,out)).",
            "g(other1,other2).", "pos(f(x1)).");
        BottomClause bc = build_bottom_clause_ie(q.bk, q.bias, atom("f(x1)"),
                                                 Polarity::positive, 4, bc_limits());
        CHECK(to_string(bc.clause) == "f(A).");
    }
    SECTION("depth zero keeps only the head") {
        BottomClause bc = build_bottom_clause_ie(p.bk, p.bias, atom("palindrome([a,t])"),
                                                 Polarity::negative, 0, bc_limits(), {},
                                                 p.builtins);
        CHECK(bc.clause.body.empty());
        CHECK(to_string(bc.clause) == "palindrome(A).");
    }
    SECTION("undeclared example predicate") {
        CHECK_THROWS(build_bottom_clause_ie(p.bk, p.bias, atom("other(x)"),
                                            Polarity::positive, depth, bc_limits()));
    }
    SECTION("bottom clause proves its example back and is bias consistent") {
        for (const auto& e : p.neg) {
            BottomClause bc = build_bottom_clause_ie(p.bk, p.bias, e, Polarity::negative, depth,
                                                     bc_limits(), {}, p.builtins);
            REQUIRE_FALSE(bc.truncated);
            CHECK(is_bias_consistent_clause(bc.clause, p.bias).ok);
            ClausalTheory program = p.bk;
            program.push_back(bc.clause);
            CHECK(query(program, e, bc_limits(), p.builtins) == QueryResult::proven);
            CHECK(max_variable_depth(bc.clause) <= p.bias.limits.max_vars - 1);
        }
    }
    SECTION("monotone in depth") {
        Atom e = atom("palindrome([d,e,e,d])");
        std::set<std::string> prev;
        for (size_t d = 0; d <= depth; ++d) {
            BottomClause bc =
                build_bottom_clause_ie(p.bk, p.bias, e, Polarity::positive, d, bc_limits(), {},
                                       p.builtins);
            std::set<std::string> lits;
            for (const auto& b : bc.ground_witness.body) lits.insert(to_string(b));
            for (const auto& l : prev) CHECK(lits.count(l));
            prev = std::move(lits);
        }
    }
}

TEST_CASE("lift", "[bottom-builder]") {
    LanguageBias L = parse_bias(
        "head_pred(p,1). body_pred(q,2). type(p,(t,)). type(q,(t,t)).\n"
        "direction(p,(in,)). direction(q,(in,out)).");
    SECTION("co-occurrence shares a variable") {
        Clause got = lift(clause("p(a):-q(a,a)."), L);
        CHECK(to_string(got) == "p(A):-q(A,A).");
    }
    SECTION("undeclared body predicates are dropped") {
        Clause got = lift(clause("p(a):-q(a,b),mystery(b)."), L);
        CHECK(to_string(got) == "p(A):-q(A,B).");
    }
    SECTION("undeclared head is an error") {
        CHECK_THROWS(lift(clause("z(a):-q(a,b)."), L));
    }
    SECTION("direction repair drops consumers without producers") {
        LanguageBias L2 = parse_bias(
            "head_pred(p,1). body_pred(q,2). body_pred(r,2). type(p,(t,)). type(q,(t,t)).\n"
            "type(r,(t,t)). direction(p,(in,)). direction(q,(in,out)). direction(r,(in,out)).");
        // r consumes a term nothing produces once q's literal is filtered by type
        Clause got = lift(clause("p(a):-r(z,w)."), L2);
        CHECK(to_string(got) == "p(A).");
    }
}

TEST_CASE("build_bottom_clause_fc", "[bottom-builder]") {
    SECTION("single-fact model") {
        LanguageBias L = parse_bias(
            "head_pred(p,1). body_pred(q,1). type(p,(t,)). type(q,(t,)).\n"
            "direction(p,(in,)). direction(q,(in,)).");
        BottomClause bc =
            build_bottom_clause_fc(parse_bk("q(a)."), L, atom("p(a)"), Polarity::positive);
        CHECK(to_string(bc.ground_witness) == "p(a):-q(a).");
        CHECK(to_string(bc.clause) == "p(A):-q(A).");
    }
    SECTION("empty model keeps only the head") {
        LanguageBias L = parse_bias(
            "head_pred(p,1). body_pred(q,1). type(p,(t,)). type(q,(t,)).\n"
            "direction(p,(in,)). direction(q,(in,)).");
        BottomClause bc = build_bottom_clause_fc(parse_bk("q(X):-missing(X)."), L, atom("p(a)"),
                                                 Polarity::positive);
        CHECK(bc.clause.body.empty());
    }
    SECTION("function-free trains fragment carries the whole model") {
        const char* bias_text = R"(
            head_pred(f,1).
            body_pred(has_car,2). body_pred(has_load,2). body_pred(rectangle,1).
            body_pred(triangle,1). body_pred(two_wheels,1).
            type(f,(train,)). type(has_car,(train,car)). type(has_load,(car,load)).
            type(rectangle,(load,)). type(triangle,(load,)). type(two_wheels,(car,)).
            direction(f,(in,)). direction(has_car,(in,out)). direction(has_load,(in,out)).
            direction(rectangle,(in,)). direction(triangle,(in,)). direction(two_wheels,(in,)).
        )";
        const char* bk_text = R"(
            has_car(t3,t3_c1). has_car(t3,t3_c2). two_wheels(t3_c1). two_wheels(t3_c2).
            has_load(t3_c1,t3_c1_l1). has_load(t3_c2,t3_c2_l1).
            triangle(t3_c1_l1). rectangle(t3_c2_l1).
            has_car(t1,t1_c1). has_load(t1_c1,t1_c1_l1). triangle(t1_c1_l1).
        )";
        LanguageBias L = parse_bias(bias_text);
        ClausalTheory B = parse_bk(bk_text);
        BottomClause fc = build_bottom_clause_fc(B, L, atom("f(t3)"), Polarity::positive);
        auto model = least_model(B);
        CHECK(fc.ground_witness.body.size() == model.size());

        // The mode-guided construction prunes to the t3-reachable fragment.
        BottomClause ie = build_bottom_clause_ie(B, L, atom("f(t3)"), Polarity::positive, 4,
                                                 bc_limits());
        std::set<std::string> fc_lits;
        for (const auto& b : fc.clause.body) fc_lits.insert(to_string(canonical_form(
            Clause{*fc.clause.head, {b}})));
        for (const auto& b : ie.clause.body) {
            std::string key = to_string(canonical_form(Clause{*ie.clause.head, {b}}));
            // every IE literal appears among the FC literals modulo renaming
            bool found = false;
            for (const auto& l : fc_lits)
                if (l == key) found = true;
            CHECK(found);
        }
        CHECK(ie.clause.body.size() <= fc.clause.body.size());
        // The FC ground witness keeps the whole model, IE only saturates the
        // reachable fragment.
        CHECK(ie.ground_witness.body.size() < fc.ground_witness.body.size());
    }
}

TEST_CASE("default_variable_depth", "[bottom-builder]") {
    LanguageBias L;
    L.limits.max_vars = 5;
    CHECK(default_variable_depth(L) == 4);
    L.limits.max_vars = 1;
    CHECK(default_variable_depth(L) == 0);
    L.limits.max_vars = 6;
    CHECK(default_variable_depth(L) == 5);
}
