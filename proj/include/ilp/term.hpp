#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ilp {

using SymbolId = uint32_t;

/// Append-only intern table mapping identifier strings to dense ids.
/// Shared by all engine instances; writes are rare after startup.
class SymbolTable {
public:
    static SymbolTable& instance() {
        static SymbolTable table;
        return table;
    }

    SymbolId intern(std::string_view name) {
        {
            std::shared_lock lock(mutex_);
            auto it = ids_.find(std::string(name));
            if (it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] = ids_.emplace(std::string(name), static_cast<SymbolId>(names_.size()));
        if (inserted) names_.push_back(it->first);
        return it->second;
    }

    const std::string& name(SymbolId id) const {
        std::shared_lock lock(mutex_);
        return names_[id];
    }

private:
    SymbolTable() = default;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, SymbolId> ids_;
    std::vector<std::string> names_;
};

inline SymbolId intern(std::string_view name) { return SymbolTable::instance().intern(name); }
inline const std::string& symbol_name(SymbolId id) { return SymbolTable::instance().name(id); }

inline SymbolId nil_symbol() {
    static const SymbolId id = intern("[]");
    return id;
}
inline SymbolId cons_symbol() {
    static const SymbolId id = intern(".");
    return id;
}

/// First-order term: variable, constant symbol, integer, or compound.
/// Lists are compounds over the "." functor with "[]" as terminator.
struct Term {
    enum class Kind : uint8_t { variable, constant, integer, compound };

    Kind kind = Kind::constant;
    SymbolId sym = 0;   // variable name, constant symbol, or functor
    int64_t value = 0;  // integer payload
    std::vector<Term> args;

    static Term var(SymbolId name) { return Term{Kind::variable, name, 0, {}}; }
    static Term var(std::string_view name) { return var(intern(name)); }
    static Term constant(SymbolId sym) { return Term{Kind::constant, sym, 0, {}}; }
    static Term constant(std::string_view sym) { return constant(intern(sym)); }
    static Term integer(int64_t v) { return Term{Kind::integer, 0, v, {}}; }
    static Term compound(SymbolId functor, std::vector<Term> args) {
        return Term{Kind::compound, functor, 0, std::move(args)};
    }
    static Term nil() { return constant(nil_symbol()); }
    static Term cons(Term head, Term tail) {
        return compound(cons_symbol(), {std::move(head), std::move(tail)});
    }
    static Term list(const std::vector<Term>& items) {
        Term t = nil();
        for (auto it = items.rbegin(); it != items.rend(); ++it) t = cons(*it, t);
        return t;
    }

    bool is_var() const { return kind == Kind::variable; }
    bool is_ground() const {
        if (kind == Kind::variable) return false;
        for (const auto& a : args)
            if (!a.is_ground()) return false;
        return true;
    }
    size_t depth() const {
        size_t d = 0;
        for (const auto& a : args) d = std::max(d, a.depth());
        return d + (kind == Kind::compound ? 1 : 0);
    }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.kind != b.kind || a.sym != b.sym || a.value != b.value) return false;
        return a.args == b.args;
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.sym != b.sym) return a.sym < b.sym;
        if (a.value != b.value) return a.value < b.value;
        return a.args < b.args;
    }
};

inline size_t hash_combine(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline size_t term_hash(const Term& t) {
    size_t h = hash_combine(static_cast<size_t>(t.kind), t.sym);
    h = hash_combine(h, static_cast<size_t>(t.value));
    for (const auto& a : t.args) h = hash_combine(h, term_hash(a));
    return h;
}

/// Predicate applied to terms. Arity is implicit in args.size().
struct Atom {
    SymbolId pred = 0;
    std::vector<Term> args;

    Atom() = default;
    Atom(SymbolId p, std::vector<Term> a) : pred(p), args(std::move(a)) {}
    Atom(std::string_view p, std::vector<Term> a) : pred(intern(p)), args(std::move(a)) {}

    size_t arity() const { return args.size(); }
    bool is_ground() const {
        for (const auto& a : args)
            if (!a.is_ground()) return false;
        return true;
    }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.pred != b.pred) return a.pred < b.pred;
        if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
        return a.args < b.args;
    }
};

inline size_t atom_hash(const Atom& a) {
    size_t h = a.pred;
    for (const auto& t : a.args) h = hash_combine(h, term_hash(t));
    return h;
}

struct AtomHash {
    size_t operator()(const Atom& a) const { return atom_hash(a); }
};

/// Definite clause: head plus a body treated as a set of atoms.
/// Facts have an empty body. Body order is not significant for equality.
struct Clause {
    std::optional<Atom> head;
    std::vector<Atom> body;

    Clause() = default;
    Clause(Atom h, std::vector<Atom> b) : head(std::move(h)), body(std::move(b)) {}

    bool is_fact() const { return head && body.empty() && head->is_ground(); }
    size_t literal_count() const { return body.size() + (head ? 1 : 0); }

    /// Sort and deduplicate the body (set-of-literals semantics).
    void normalize() {
        std::sort(body.begin(), body.end());
        body.erase(std::unique(body.begin(), body.end()), body.end());
    }
    Clause normalized() const {
        Clause c = *this;
        c.normalize();
        return c;
    }

    friend bool operator==(const Clause& a, const Clause& b) {
        if (a.head != b.head) return false;
        Clause x = a.normalized(), y = b.normalized();
        return x.body == y.body;
    }
    friend bool operator<(const Clause& a, const Clause& b) {
        Clause x = a.normalized(), y = b.normalized();
        if (x.head != y.head) {
            if (!x.head) return static_cast<bool>(y.head);
            if (!y.head) return false;
            return *x.head < *y.head;
        }
        return x.body < y.body;
    }
};

using ClausalTheory = std::vector<Clause>;

/// Finite map from variables to terms. Application is not recursive:
/// composition must be closed explicitly via compose().
struct Substitution {
    std::map<SymbolId, Term> bindings;

    bool empty() const { return bindings.empty(); }

    void bind(SymbolId var, Term t) {
        if (t.is_var() && t.sym == var) return;  // never map a variable to itself
        bindings[var] = std::move(t);
    }

    const Term* lookup(SymbolId var) const {
        auto it = bindings.find(var);
        return it == bindings.end() ? nullptr : &it->second;
    }
};

inline Term apply_substitution(const Term& t, const Substitution& s) {
    switch (t.kind) {
        case Term::Kind::variable: {
            if (const Term* bound = s.lookup(t.sym)) return *bound;
            return t;
        }
        case Term::Kind::compound: {
            Term out = t;
            for (auto& a : out.args) a = apply_substitution(a, s);
            return out;
        }
        default:
            return t;
    }
}

inline Atom apply_substitution(const Atom& a, const Substitution& s) {
    Atom out = a;
    for (auto& t : out.args) t = apply_substitution(t, s);
    return out;
}

inline Clause apply_substitution(const Clause& c, const Substitution& s) {
    Clause out;
    if (c.head) out.head = apply_substitution(*c.head, s);
    out.body.reserve(c.body.size());
    for (const auto& b : c.body) out.body.push_back(apply_substitution(b, s));
    return out;
}

/// s1 then s2, closed: (t (s1;s2)) == ((t s1) s2).
inline Substitution compose(const Substitution& s1, const Substitution& s2) {
    Substitution out;
    for (const auto& [v, t] : s1.bindings) {
        Term applied = apply_substitution(t, s2);
        if (!(applied.is_var() && applied.sym == v)) out.bindings[v] = std::move(applied);
    }
    for (const auto& [v, t] : s2.bindings)
        if (!out.bindings.count(v) && !s1.bindings.count(v)) out.bindings[v] = t;
    return out;
}

inline void collect_vars(const Term& t, std::vector<SymbolId>& out) {
    if (t.kind == Term::Kind::variable) {
        for (SymbolId v : out)
            if (v == t.sym) return;
        out.push_back(t.sym);
        return;
    }
    for (const auto& a : t.args) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, std::vector<SymbolId>& out) {
    for (const auto& t : a.args) collect_vars(t, out);
}

/// Distinct variables in first-occurrence order (head first).
inline std::vector<SymbolId> clause_vars(const Clause& c) {
    std::vector<SymbolId> out;
    if (c.head) collect_vars(*c.head, out);
    for (const auto& b : c.body) collect_vars(b, out);
    return out;
}

// ---------------------------------------------------------------------------
// Rendering. The stable text form is `head :- b1,b2,...,bn.` with bracketed
// lists, shared by file formats, logs and tests.

inline void render_term(const Term& t, std::string& out);

inline void render_list(const Term& t, std::string& out) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (true) {
        if (cur->kind == Term::Kind::constant && cur->sym == nil_symbol()) break;
        if (cur->kind == Term::Kind::compound && cur->sym == cons_symbol() &&
            cur->args.size() == 2) {
            if (!first) out += ',';
            render_term(cur->args[0], out);
            first = false;
            cur = &cur->args[1];
            continue;
        }
        out += '|';
        render_term(*cur, out);
        break;
    }
    out += ']';
}

inline void render_term(const Term& t, std::string& out) {
    switch (t.kind) {
        case Term::Kind::variable:
        case Term::Kind::constant:
            if (t.kind == Term::Kind::constant && t.sym == nil_symbol()) {
                out += "[]";
            } else {
                out += symbol_name(t.sym);
            }
            break;
        case Term::Kind::integer:
            out += std::to_string(t.value);
            break;
        case Term::Kind::compound:
            if (t.sym == cons_symbol() && t.args.size() == 2) {
                render_list(t, out);
            } else {
                out += symbol_name(t.sym);
                out += '(';
                for (size_t i = 0; i < t.args.size(); ++i) {
                    if (i) out += ',';
                    render_term(t.args[i], out);
                }
                out += ')';
            }
            break;
    }
}

inline std::string to_string(const Term& t) {
    std::string out;
    render_term(t, out);
    return out;
}

inline std::string to_string(const Atom& a) {
    std::string out = symbol_name(a.pred);
    if (!a.args.empty()) {
        out += '(';
        for (size_t i = 0; i < a.args.size(); ++i) {
            if (i) out += ',';
            render_term(a.args[i], out);
        }
        out += ')';
    }
    return out;
}

inline std::string to_string(const Clause& c) {
    std::string out;
    if (c.head) out += to_string(*c.head);
    if (!c.body.empty()) {
        out += ":-";
        for (size_t i = 0; i < c.body.size(); ++i) {
            if (i) out += ',';
            out += to_string(c.body[i]);
        }
    }
    out += '.';
    return out;
}

inline std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings) {
        if (!first) out += ", ";
        out += symbol_name(v);
        out += '/';
        render_term(t, out);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace ilp
