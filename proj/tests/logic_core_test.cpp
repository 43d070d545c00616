#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "ilp/bias.hpp"
#include "ilp/canonical.hpp"
#include "ilp/parser.hpp"
#include "ilp/term.hpp"
#include "ilp/unify.hpp"

using namespace ilp;
using ilp::test::atom;
using ilp::test::clause;
using ilp::test::term;

TEST_CASE("substitution application", "[logic-core]") {
    SECTION("worked palindrome substitution") {
        Clause c = clause("palindrome(A):-middle(A,B),empty(B).");
        Substitution s;
        s.bind(intern("A"), term("[a,t]"));
        s.bind(intern("B"), term("[]"));
        Clause got = apply_substitution(c, s);
        CHECK(to_string(got) == "palindrome([a,t]):-middle([a,t],[]),empty([]).");
    }
    SECTION("empty substitution is identity") {
        Clause c = clause("p(A,B):-q(B,C),r(C).");
        CHECK(apply_substitution(c, Substitution{}) == c);
    }
    SECTION("composition closes bindings") {
        Clause c = clause("p(A,B).");
        Substitution s1, s2;
        s1.bind(intern("A"), Term::var("B"));
        s2.bind(intern("B"), Term::constant("c"));
        Clause got = apply_substitution(c, compose(s1, s2));
        CHECK(to_string(got) == "p(c,c).");
    }
}

TEST_CASE("unification", "[logic-core]") {
    SECTION("textbook mgu") {
        auto s = unify(atom("p(A,b)"), atom("p(a,B)"));
        REQUIRE(s);
        CHECK(to_string(apply_substitution(atom("p(A,b)"), *s)) == "p(a,b)");
        CHECK(to_string(apply_substitution(atom("p(a,B)"), *s)) == "p(a,b)");
    }
    SECTION("predicate mismatch") {
        CHECK_FALSE(unify(atom("p(A)"), atom("q(A)")));
    }
    SECTION("repeated variable cannot take two values") {
        CHECK_FALSE(unify(atom("p(A,A)"), atom("p(a,b)")));
    }
    SECTION("occurs check") {
        CHECK_FALSE(unify(atom("p(A)"), atom("p(f(A))")));
    }
    SECTION("unifier makes atoms equal, and is most general") {
        std::mt19937_64 rng(7);
        const char* pool[] = {"p(A,B)",      "p(A,A)",     "p(a,B)",      "p(f(A),B)",
                              "p(f(a),b)",   "p(A,f(B))",  "p(f(B),f(B))", "p(a,f(b))",
                              "p(g(A,b),C)", "p(g(a,B),c)"};
        for (int i = 0; i < 200; ++i) {
            Atom a1 = atom(pool[rng() % std::size(pool)]);
            Atom a2 = atom(pool[rng() % std::size(pool)]);
            auto s = unify(a1, a2);
            if (!s) continue;
            Atom l = apply_substitution(a1, *s);
            Atom r = apply_substitution(a2, *s);
            CHECK(l == r);
            // Applying the mgu twice changes nothing (idempotence after closure).
            CHECK(apply_substitution(l, *s) == l);
        }
    }
}

TEST_CASE("canonical form", "[logic-core]") {
    SECTION("alphabetic variants collapse") {
        CHECK(to_string(canonical_form(clause("p(X):-q(X,Y)."))) ==
              to_string(canonical_form(clause("p(A):-q(A,B)."))));
    }
    SECTION("body reorder collapses") {
        CHECK(to_string(canonical_form(clause("p(A):-q(A,B),r(B)."))) ==
              to_string(canonical_form(clause("p(A):-r(B),q(A,B)."))));
    }
    SECTION("random renamings map to one form") {
        Clause base = clause("p(A):-q(A,B),r(B,C),q(C,D),s(D,E).");
        std::mt19937_64 rng(11);
        std::string want = to_string(canonical_form(base));
        std::vector<SymbolId> vars = clause_vars(base);
        for (int i = 0; i < 1000; ++i) {
            // random injective renaming + body shuffle
            std::vector<int> perm(vars.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            Substitution s;
            for (size_t v = 0; v < vars.size(); ++v)
                s.bind(vars[v], Term::var("R" + std::to_string(perm[v])));
            Clause renamed = apply_substitution(base, s);
            std::shuffle(renamed.body.begin(), renamed.body.end(), rng);
            CHECK(to_string(canonical_form(renamed)) == want);
        }
    }
    SECTION("idempotent") {
        Clause c = clause("p(A):-r(B,A),q(B,B).");
        Clause once = canonical_form(c);
        CHECK(to_string(canonical_form(once)) == to_string(once));
    }
    SECTION("duplicate body literals collapse") {
        CHECK(clause("p(A):-q(A),q(A).") == clause("p(A):-q(A)."));
    }
}

TEST_CASE("bias consistency", "[logic-core]") {
    LanguageBias L = parse_bias(ilp::test::kPalindromeBias);

    SECTION("worked consistent hypotheses") {
        CHECK(is_bias_consistent_clause(clause("palindrome(A):-first(A,B),last(A,B)."), L).ok);
        CHECK(is_bias_consistent_clause(
                  clause("palindrome(A):-last(A,B),middle(A,C),empty(C)."), L)
                  .ok);
        Hypothesis two = Hypothesis::of(
            {clause("palindrome(A):-empty(A)."),
             clause("palindrome(A):-first(A,C),middle(A,B),last(A,C).")});
        CHECK(is_bias_consistent_hypothesis(two, L));
    }
    SECTION("worked inconsistent hypotheses") {
        // undeclared body predicates
        auto undecl = is_bias_consistent_clause(clause("palindrome(A):-length(A,B),one(B)."), L);
        CHECK_FALSE(undecl.ok);
        // undeclared head predicate
        CHECK_FALSE(is_bias_consistent_clause(clause("empty(A):-middle(A,C),empty(C)."), L).ok);
        // wrong arity
        CHECK_FALSE(is_bias_consistent_clause(clause("palindrome(A):-first(A),empty(A)."), L).ok);
        // type clash: element vs list
        auto clash = is_bias_consistent_clause(clause("palindrome(A):-first(A,B),empty(B)."), L);
        CHECK_FALSE(clash.ok);
        // direction violation: B never bound
        CHECK_FALSE(
            is_bias_consistent_clause(clause("palindrome(A):-last(B,A),first(B,A)."), L).ok);
    }
    SECTION("head-only clause") {
        // palindrome's head argument is in-moded, so the body-free clause stands
        CHECK(is_bias_consistent_clause(clause("palindrome(A)."), L).ok);
    }
    SECTION("hypothesis limits") {
        std::vector<Clause> many(L.limits.max_clauses + 1, clause("palindrome(A):-empty(A)."));
        CHECK_FALSE(is_bias_consistent_hypothesis(Hypothesis::of(many), L));
        CHECK(is_bias_consistent_hypothesis(Hypothesis{}, L));
    }
    SECTION("every clause of a consistent hypothesis is consistent") {
        Hypothesis h = Hypothesis::of({clause("palindrome(A):-first(A,B),last(A,B)."),
                                       clause("palindrome(A):-empty(A).")});
        REQUIRE(is_bias_consistent_hypothesis(h, L));
        for (const auto& c : h.clauses) CHECK(is_bias_consistent_clause(c, L).ok);
    }
}

TEST_CASE("variable depth", "[logic-core]") {
    SECTION("worked example") {
        auto d = variable_depths(clause("palindrome(A):-middle(A,D),empty(D)."));
        CHECK(d[intern("A")] == 0);
        CHECK(d[intern("D")] == 1);
    }
    SECTION("head-only clause") {
        auto d = variable_depths(clause("p(A,B)."));
        CHECK(d[intern("A")] == 0);
        CHECK(d[intern("B")] == 0);
    }
    SECTION("chain reaches the variable-count bound") {
        Clause c = clause("p(A):-q(A,B),q(B,C),q(C,D).");
        auto d = variable_depths(c);
        CHECK(d[intern("A")] == 0);
        CHECK(d[intern("B")] == 1);
        CHECK(d[intern("C")] == 2);
        CHECK(d[intern("D")] == 3);
        CHECK(max_variable_depth(c) == clause_vars(c).size() - 1);
    }
    SECTION("out-only literals sit at depth one") {
        auto d = variable_depths(clause("p(A):-one(E),length(A,F)."));
        CHECK(d[intern("E")] == 1);
        CHECK(d[intern("F")] == 1);
    }
    SECTION("depth never exceeds variable count minus one") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            // random small clause over q/2, r/2, s/1
            std::string body;
            int lits = 1 + int(rng() % 4);
            for (int l = 0; l < lits; ++l) {
                if (l) body += ",";
                int kind = int(rng() % 3);
                auto v = [&](int n) { return std::string(1, char('A' + n)); };
                if (kind == 2) body += "s(" + v(int(rng() % 5)) + ")";
                else
                    body += (kind ? "r(" : "q(") + v(int(rng() % 5)) + "," +
                            v(int(rng() % 5)) + ")";
            }
            Clause c = clause("p(A):-" + body + ".");
            CHECK(max_variable_depth(c) <= clause_vars(c).size() - 1);
        }
    }
}
