#pragma once

#include <string>

#include "ilp/parser.hpp"
#include "ilp/term.hpp"

namespace ilp::test {

inline Clause clause(const std::string& text) {
    detail::Lexer lx(text);
    return detail::parse_clause(lx);
}

inline Atom atom(const std::string& text) {
    detail::Lexer lx(text);
    return detail::parse_atom(lx);
}

inline Term term(const std::string& text) {
    detail::Lexer lx(text);
    return detail::parse_term(lx);
}

// The reduced palindrome bias: first/last/middle/empty body predicates.
inline const char* kPalindromeBias = R"(
head_pred(palindrome,1).
body_pred(first,2).
body_pred(last,2).
body_pred(middle,2).
body_pred(empty,1).
type(palindrome,(list,)).
type(first,(list,element)).
type(last,(list,element)).
type(middle,(list,list)).
type(empty,(list,)).
direction(palindrome,(in,)).
direction(first,(in,out)).
direction(last,(in,out)).
direction(middle,(in,out)).
direction(empty,(out,)).
)";

// The same bias extended with one/length declarations, in the order that
// produces the worked bottom-clause variable layout.
inline const char* kPalindromeBiasFull = R"(
head_pred(palindrome,1).
body_pred(first,2).
body_pred(last,2).
body_pred(middle,2).
body_pred(empty,1).
body_pred(one,1).
body_pred(length,2).
type(palindrome,(list,)).
type(first,(list,element)).
type(last,(list,element)).
type(middle,(list,list)).
type(empty,(list,)).
type(one,(int,)).
type(length,(list,int)).
direction(palindrome,(in,)).
direction(first,(in,out)).
direction(last,(in,out)).
direction(middle,(in,out)).
direction(empty,(out,)).
direction(one,(out,)).
direction(length,(in,out)).
)";

inline const char* kPalindromeBk = R"(
last([H],H).
last([_|T],X) :- last(T,X).
first([H|_],H).
middle([_|T],T2) :- droplast(T,T2).
droplast([_],[]).
droplast([H|T],[H|T2]) :- droplast(T,T2).
empty([]).
one(1).
length([],0).
length([_|T],N) :- length(T,M), increment(M,N).
increment(0,1).
increment(1,2).
increment(2,3).
increment(3,4).
increment(4,5).
increment(5,6).
increment(6,7).
increment(7,8).
increment(8,9).
increment(9,10).
)";

inline const char* kPalindromeExamples = R"(
pos(palindrome([r,a,c,e,c,a,r])).
pos(palindrome([m,o,m])).
pos(palindrome([d,e,e,d])).
pos(palindrome([a])).
pos(palindrome([])).
neg(palindrome([c,a,r,r,i,a,g,e])).
neg(palindrome([m,o,p])).
neg(palindrome([p,a,l,i,n,d,r,o,m,e])).
neg(palindrome([d,e,a,d])).
neg(palindrome([a,t])).
)";

}  // namespace ilp::test
