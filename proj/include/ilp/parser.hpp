#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/term.hpp"

namespace ilp {

struct ParseError : std::runtime_error {
    size_t line;
    size_t column;
    ParseError(const std::string& what, size_t line, size_t column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
};

namespace detail {

// Tokenizer for the clause grammar: identifiers [a-z][A-Za-z0-9_]*, variables
// [A-Z_][A-Za-z0-9_]*, integers, punctuation, '%' comments to end of line.
class Lexer {
public:
    enum class Tok { ident, variable, integer, punct, end };

    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    Tok kind() const { return kind_; }
    const std::string& text() const { return tok_text_; }
    int64_t int_value() const { return int_value_; }
    size_t line() const { return tok_line_; }
    size_t column() const { return tok_col_; }

    [[noreturn]] void error(const std::string& what) const {
        throw ParseError(what, tok_line_, tok_col_);
    }

    void advance() {
        skip_ws();
        tok_line_ = line_;
        tok_col_ = col_;
        tok_text_.clear();
        if (pos_ >= text_.size()) {
            kind_ = Tok::end;
            return;
        }
        char c = text_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            kind_ = Tok::ident;
            take_word();
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            kind_ = Tok::variable;
            take_word();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            kind_ = Tok::integer;
            if (c == '-') take_char();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                take_char();
            int_value_ = std::stoll(tok_text_);
            return;
        }
        kind_ = Tok::punct;
        take_char();
        // multi-char punctuation: ":-" and "|" handled; ":-" only
        if (tok_text_ == ":" && pos_ < text_.size() && text_[pos_] == '-') take_char();
    }

    bool is_punct(std::string_view p) const { return kind_ == Tok::punct && tok_text_ == p; }

    void expect_punct(std::string_view p) {
        if (!is_punct(p)) error("expected '" + std::string(p) + "'");
        advance();
    }

private:
    void take_char() {
        tok_text_ += text_[pos_];
        bump();
    }
    void take_word() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') take_char();
            else break;
        }
    }
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    size_t line_ = 1, col_ = 1;
    Tok kind_ = Tok::end;
    std::string tok_text_;
    int64_t int_value_ = 0;
    size_t tok_line_ = 1, tok_col_ = 1;
};

inline Term parse_term(Lexer& lx);

inline Term parse_list(Lexer& lx) {
    lx.expect_punct("[");
    if (lx.is_punct("]")) {
        lx.advance();
        return Term::nil();
    }
    std::vector<Term> items;
    items.push_back(parse_term(lx));
    while (lx.is_punct(",")) {
        lx.advance();
        items.push_back(parse_term(lx));
    }
    Term tail = Term::nil();
    if (lx.is_punct("|")) {
        lx.advance();
        tail = parse_term(lx);
    }
    lx.expect_punct("]");
    for (auto it = items.rbegin(); it != items.rend(); ++it)
        tail = Term::cons(*it, tail);
    return tail;
}

inline Term parse_term(Lexer& lx) {
    using Tok = Lexer::Tok;
    if (lx.is_punct("[")) return parse_list(lx);
    if (lx.is_punct("(")) {
        // Parenthesized tuple, as used by type/direction declarations.
        // A trailing comma is allowed: (list,) and (in,out) both parse.
        lx.advance();
        std::vector<Term> items;
        items.push_back(parse_term(lx));
        while (lx.is_punct(",")) {
            lx.advance();
            if (lx.is_punct(")")) break;
            items.push_back(parse_term(lx));
        }
        lx.expect_punct(")");
        return Term::compound(intern("$tuple"), std::move(items));
    }
    if (lx.kind() == Tok::integer) {
        Term t = Term::integer(lx.int_value());
        lx.advance();
        return t;
    }
    if (lx.kind() == Tok::variable) {
        Term t = Term::var(lx.text());
        lx.advance();
        return t;
    }
    if (lx.kind() == Tok::ident) {
        std::string name = lx.text();
        lx.advance();
        if (lx.is_punct("(")) {
            lx.advance();
            std::vector<Term> args;
            args.push_back(parse_term(lx));
            while (lx.is_punct(",")) {
                lx.advance();
                args.push_back(parse_term(lx));
            }
            lx.expect_punct(")");
            return Term::compound(intern(name), std::move(args));
        }
        return Term::constant(name);
    }
    lx.error("expected a term");
}

inline Atom parse_atom(Lexer& lx) {
    if (lx.kind() != Lexer::Tok::ident) lx.error("expected a predicate symbol");
    std::string name = lx.text();
    lx.advance();
    std::vector<Term> args;
    if (lx.is_punct("(")) {
        lx.advance();
        args.push_back(parse_term(lx));
        while (lx.is_punct(",")) {
            lx.advance();
            args.push_back(parse_term(lx));
        }
        lx.expect_punct(")");
    }
    return Atom{intern(name), std::move(args)};
}

inline Clause parse_clause(Lexer& lx) {
    Clause c;
    c.head = parse_atom(lx);
    if (lx.is_punct(":-")) {
        lx.advance();
        while (true) {
            if (lx.is_punct("\\")) lx.error("non-definite clause: negated body literal");
            c.body.push_back(parse_atom(lx));
            if (lx.is_punct(",")) {
                lx.advance();
                continue;
            }
            break;
        }
    }
    lx.expect_punct(".");
    return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bias files: head_pred/2, body_pred/2, type/2, direction/2, max_vars/1,
// max_clauses/1, max_body/1, enable_recursion/0. Missing limits default to
// (5, 4, 5). Unknown declaration predicates are a hard error.

inline LanguageBias parse_bias(std::string_view text) {
    detail::Lexer lx(text);
    LanguageBias bias;
    std::set<PredicateKey> seen_types, seen_dirs;
    bool saw_max_vars = false, saw_max_clauses = false, saw_max_body = false;

    auto parse_pred_arity = [&](const Clause& c, const char* what) -> PredicateKey {
        const Atom& a = *c.head;
        if (a.args.size() != 2 || a.args[0].kind != Term::Kind::constant ||
            a.args[1].kind != Term::Kind::integer)
            throw ParseError(std::string(what) + " expects (predicate, arity)", 1, 1);
        return PredicateKey{a.args[0].sym, static_cast<size_t>(a.args[1].value)};
    };

    while (lx.kind() != detail::Lexer::Tok::end) {
        size_t line = lx.line(), col = lx.column();
        Clause c = detail::parse_clause(lx);
        if (!c.body.empty()) throw ParseError("bias declarations must be facts", line, col);
        const Atom& a = *c.head;
        const std::string& name = symbol_name(a.pred);
        if (name == "head_pred") {
            PredicateKey k = parse_pred_arity(c, "head_pred");
            if (std::find(bias.head_decls.begin(), bias.head_decls.end(), k) ==
                bias.head_decls.end())
                bias.head_decls.push_back(k);
        } else if (name == "body_pred") {
            PredicateKey k = parse_pred_arity(c, "body_pred");
            if (std::find(bias.body_decls.begin(), bias.body_decls.end(), k) ==
                bias.body_decls.end())
                bias.body_decls.push_back(k);
        } else if (name == "type" || name == "direction") {
            if (a.args.size() != 2 || a.args[0].kind != Term::Kind::constant)
                throw ParseError(name + " expects (predicate, tuple)", line, col);
            // The tuple parses as either a compound over ",'-chains" — our term
            // grammar reads (t1,...,tn) only inside functor args, so declarations
            // are written type(p,(a,b)). Re-parse from the raw argument.
            const Term& tup = a.args[1];
            std::vector<SymbolId> parts;
            std::function<void(const Term&)> flatten = [&](const Term& t) {
                if (t.kind == Term::Kind::compound && symbol_name(t.sym) == "$tuple") {
                    for (const auto& s : t.args) flatten(s);
                } else if (t.kind == Term::Kind::constant) {
                    parts.push_back(t.sym);
                } else {
                    throw ParseError(name + " tuple must contain constant symbols", line, col);
                }
            };
            flatten(tup);
            SymbolId pred = a.args[0].sym;
            PredicateKey key{pred, parts.size()};
            bool head_declared = bias.is_head_pred(pred, parts.size());
            bool body_declared = bias.is_body_pred(pred, parts.size());
            (void)head_declared;
            (void)body_declared;
            if (name == "type") {
                if (seen_types.count(key))
                    throw ParseError("duplicate type declaration for " + symbol_name(pred), line,
                                     col);
                seen_types.insert(key);
                bias.type_decls[key] = parts;
            } else {
                if (seen_dirs.count(key))
                    throw ParseError("duplicate direction declaration for " + symbol_name(pred),
                                     line, col);
                seen_dirs.insert(key);
                std::vector<Direction> dirs;
                for (SymbolId p : parts) {
                    const std::string& d = symbol_name(p);
                    if (d == "in") dirs.push_back(Direction::in);
                    else if (d == "out") dirs.push_back(Direction::out);
                    else
                        throw ParseError("direction must be in or out, got " + d, line, col);
                }
                bias.direction_decls[key] = dirs;
            }
        } else if (name == "max_vars" || name == "max_clauses" || name == "max_body") {
            if (a.args.size() != 1 || a.args[0].kind != Term::Kind::integer ||
                a.args[0].value <= 0)
                throw ParseError(name + " expects one positive integer", line, col);
            size_t v = static_cast<size_t>(a.args[0].value);
            if (name == "max_vars") {
                bias.limits.max_vars = v;
                saw_max_vars = true;
            } else if (name == "max_clauses") {
                bias.limits.max_clauses = v;
                saw_max_clauses = true;
            } else {
                bias.limits.max_body = v;
                saw_max_body = true;
            }
        } else if (name == "enable_recursion") {
            if (!a.args.empty())
                throw ParseError("enable_recursion takes no arguments", line, col);
            bias.recursion_enabled = true;
        } else {
            throw ParseError("unknown bias declaration " + name, line, col);
        }
    }
    (void)saw_max_vars;
    (void)saw_max_clauses;
    (void)saw_max_body;

    if (bias.head_decls.empty()) throw ParseError("no head_pred declaration", 1, 1);

    // Declared tuple lengths must match the declared arity.
    for (const auto& [key, types] : bias.type_decls) {
        bool declared = bias.is_head_pred(key.pred, key.arity) ||
                        bias.is_body_pred(key.pred, key.arity);
        if (!declared)
            throw ParseError("type declaration for undeclared predicate " +
                                 symbol_name(key.pred) + "/" + std::to_string(key.arity),
                             1, 1);
        (void)types;
    }
    for (const auto& [key, dirs] : bias.direction_decls) {
        bool declared = bias.is_head_pred(key.pred, key.arity) ||
                        bias.is_body_pred(key.pred, key.arity);
        if (!declared)
            throw ParseError("direction declaration for undeclared predicate " +
                                 symbol_name(key.pred) + "/" + std::to_string(key.arity),
                             1, 1);
        (void)dirs;
    }
    return bias;
}

// ---------------------------------------------------------------------------
// Background knowledge: definite clauses and ground facts.

inline ClausalTheory parse_bk(std::string_view text) {
    detail::Lexer lx(text);
    ClausalTheory theory;
    while (lx.kind() != detail::Lexer::Tok::end) {
        theory.push_back(detail::parse_clause(lx));
    }
    return theory;
}

// ---------------------------------------------------------------------------
// Examples: pos(Atom). / neg(Atom). wrappers; all atoms must be ground.

struct ExampleSets {
    std::vector<Atom> pos;
    std::vector<Atom> neg;
};

inline ExampleSets parse_examples(std::string_view text) {
    detail::Lexer lx(text);
    ExampleSets out;
    while (lx.kind() != detail::Lexer::Tok::end) {
        size_t line = lx.line(), col = lx.column();
        Clause c = detail::parse_clause(lx);
        if (!c.body.empty()) throw ParseError("examples must be facts", line, col);
        const Atom& w = *c.head;
        const std::string& wrapper = symbol_name(w.pred);
        if ((wrapper != "pos" && wrapper != "neg") || w.args.size() != 1 ||
            (w.args[0].kind != Term::Kind::compound && w.args[0].kind != Term::Kind::constant))
            throw ParseError("expected pos(Atom). or neg(Atom).", line, col);
        const Term& inner = w.args[0];
        if (!inner.is_ground()) throw ParseError("example is not ground", line, col);
        Atom a{inner.sym, inner.kind == Term::Kind::compound ? inner.args : std::vector<Term>{}};
        if (wrapper == "pos") out.pos.push_back(a);
        else out.neg.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering back to the same grammar (parse -> render -> parse fixpoint).

inline std::string render_bias(const LanguageBias& bias) {
    std::string out;
    auto tuple_text = [](const std::vector<std::string>& parts) {
        std::string t = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            t += parts[i];
            if (i + 1 < parts.size()) t += ',';
        }
        if (parts.size() == 1) t += ',';
        t += ')';
        return t;
    };
    for (const auto& d : bias.head_decls)
        out += "head_pred(" + symbol_name(d.pred) + "," + std::to_string(d.arity) + ").\n";
    for (const auto& d : bias.body_decls)
        out += "body_pred(" + symbol_name(d.pred) + "," + std::to_string(d.arity) + ").\n";
    for (const auto& [key, types] : bias.type_decls) {
        std::vector<std::string> parts;
        for (SymbolId t : types) parts.push_back(symbol_name(t));
        out += "type(" + symbol_name(key.pred) + "," + tuple_text(parts) + ").\n";
    }
    for (const auto& [key, dirs] : bias.direction_decls) {
        std::vector<std::string> parts;
        for (Direction d : dirs) parts.push_back(d == Direction::in ? "in" : "out");
        out += "direction(" + symbol_name(key.pred) + "," + tuple_text(parts) + ").\n";
    }
    out += "max_vars(" + std::to_string(bias.limits.max_vars) + ").\n";
    out += "max_clauses(" + std::to_string(bias.limits.max_clauses) + ").\n";
    out += "max_body(" + std::to_string(bias.limits.max_body) + ").\n";
    if (bias.recursion_enabled) out += "enable_recursion.\n";
    return out;
}

inline std::string render_bk(const ClausalTheory& theory) {
    std::string out;
    for (const auto& c : theory) {
        out += to_string(c);
        out += '\n';
    }
    return out;
}

inline std::string render_examples(const ExampleSets& ex) {
    std::string out;
    for (const auto& a : ex.pos) out += "pos(" + to_string(a) + ").\n";
    for (const auto& a : ex.neg) out += "neg(" + to_string(a) + ").\n";
    return out;
}

}  // namespace ilp
