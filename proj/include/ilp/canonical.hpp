#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ilp/term.hpp"

namespace ilp {

/// Canonical variable name for rank i: A..Z, then V26, V27, ...
inline std::string canonical_var_name(size_t rank) {
    if (rank < 26) return std::string(1, static_cast<char>('A' + rank));
    return "V" + std::to_string(rank);
}

namespace detail {

// Comparison key for one atom under a partial variable-rank assignment.
// Variables not yet ranked receive provisional ranks in left-to-right order.
struct ArgKey {
    int tag;           // 0 var, 1 integer, 2 constant, 3 compound
    int64_t num;       // var rank or integer value
    std::string text;  // constant/functor name
    std::vector<ArgKey> sub;

    bool operator<(const ArgKey& o) const {
        if (tag != o.tag) return tag < o.tag;
        if (num != o.num) return num < o.num;
        if (text != o.text) return text < o.text;
        return sub < o.sub;
    }
    bool operator==(const ArgKey& o) const {
        return tag == o.tag && num == o.num && text == o.text && sub == o.sub;
    }
};

struct LitKey {
    std::string pred;
    size_t arity = 0;
    std::vector<ArgKey> args;

    bool operator<(const LitKey& o) const {
        if (pred != o.pred) return pred < o.pred;
        if (arity != o.arity) return arity < o.arity;
        return args < o.args;
    }
    bool operator==(const LitKey& o) const {
        return pred == o.pred && arity == o.arity && args == o.args;
    }
};

inline ArgKey arg_key(const Term& t, const std::map<SymbolId, size_t>& ranks, size_t& next_rank,
                      std::map<SymbolId, size_t>& provisional) {
    switch (t.kind) {
        case Term::Kind::variable: {
            auto it = ranks.find(t.sym);
            if (it != ranks.end()) return {0, static_cast<int64_t>(it->second), "", {}};
            auto pit = provisional.find(t.sym);
            if (pit != provisional.end()) return {0, static_cast<int64_t>(pit->second), "", {}};
            size_t r = next_rank++;
            provisional[t.sym] = r;
            return {0, static_cast<int64_t>(r), "", {}};
        }
        case Term::Kind::integer:
            return {1, t.value, "", {}};
        case Term::Kind::constant:
            return {2, 0, symbol_name(t.sym), {}};
        case Term::Kind::compound: {
            ArgKey k{3, static_cast<int64_t>(t.args.size()), symbol_name(t.sym), {}};
            for (const auto& a : t.args) k.sub.push_back(arg_key(a, ranks, next_rank, provisional));
            return k;
        }
    }
    return {};
}

inline LitKey lit_key(const Atom& a, const std::map<SymbolId, size_t>& ranks, size_t next_rank) {
    LitKey k{symbol_name(a.pred), a.arity(), {}};
    std::map<SymbolId, size_t> provisional;
    for (const auto& t : a.args) k.args.push_back(arg_key(t, ranks, next_rank, provisional));
    return k;
}

inline void assign_fresh(const Atom& a, std::map<SymbolId, size_t>& ranks, size_t& next_rank) {
    std::vector<SymbolId> vars;
    collect_vars(a, vars);
    for (SymbolId v : vars)
        if (!ranks.count(v)) ranks[v] = next_rank++;
}

struct CanonSearch {
    std::vector<Atom> literals;
    std::vector<LitKey> best_keys;
    std::vector<size_t> best_order;
    std::map<SymbolId, size_t> best_ranks;
    bool have_best = false;

    void run(std::vector<size_t>& order, std::vector<LitKey>& keys, std::vector<bool>& used,
             std::map<SymbolId, size_t> ranks, size_t next_rank) {
        if (order.size() == literals.size()) {
            if (!have_best || keys < best_keys) {
                best_keys = keys;
                best_order = order;
                best_ranks = ranks;
                have_best = true;
            }
            return;
        }
        // Pick every literal whose key is minimal under the current ranking.
        bool found = false;
        LitKey min_key;
        for (size_t i = 0; i < literals.size(); ++i) {
            if (used[i]) continue;
            LitKey k = lit_key(literals[i], ranks, next_rank);
            if (!found || k < min_key) {
                min_key = std::move(k);
                found = true;
            }
        }
        for (size_t i = 0; i < literals.size(); ++i) {
            if (used[i]) continue;
            LitKey k = lit_key(literals[i], ranks, next_rank);
            if (!(k == min_key)) continue;
            used[i] = true;
            order.push_back(i);
            keys.push_back(k);
            auto ranks2 = ranks;
            size_t next2 = next_rank;
            assign_fresh(literals[i], ranks2, next2);
            run(order, keys, used, std::move(ranks2), next2);
            keys.pop_back();
            order.pop_back();
            used[i] = false;
        }
    }
};

inline Term rename_by_rank(const Term& t, const std::map<SymbolId, size_t>& ranks) {
    switch (t.kind) {
        case Term::Kind::variable: {
            auto it = ranks.find(t.sym);
            return Term::var(canonical_var_name(it == ranks.end() ? 9999 : it->second));
        }
        case Term::Kind::compound: {
            Term out = t;
            for (auto& a : out.args) a = rename_by_rank(a, ranks);
            return out;
        }
        default:
            return t;
    }
}

inline Atom rename_by_rank(const Atom& a, const std::map<SymbolId, size_t>& ranks) {
    Atom out = a;
    for (auto& t : out.args) t = rename_by_rank(t, ranks);
    return out;
}

}  // namespace detail

/// Deterministic renaming to A,B,C,... plus deterministic body ordering.
/// Clauses equal up to variable renaming and body reordering canonicalize
/// to the identical clause. Head variables rank first, in argument order.
inline Clause canonical_form(const Clause& c) {
    std::map<SymbolId, size_t> ranks;
    size_t next_rank = 0;
    if (c.head) detail::assign_fresh(*c.head, ranks, next_rank);

    // Set semantics: drop exact duplicates up front.
    std::vector<Atom> body = c.body;
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());

    detail::CanonSearch search;
    search.literals = std::move(body);
    std::vector<size_t> order;
    std::vector<detail::LitKey> keys;
    std::vector<bool> used(search.literals.size(), false);
    search.run(order, keys, used, ranks, next_rank);

    Clause out;
    if (c.head) out.head = detail::rename_by_rank(*c.head, search.best_ranks);
    for (size_t idx : search.best_order)
        out.body.push_back(detail::rename_by_rank(search.literals[idx], search.best_ranks));
    // Renaming is injective, but collapse any duplicates for safety.
    out.body.erase(std::unique(out.body.begin(), out.body.end()), out.body.end());
    return out;
}

/// Stable text key for hashing/deduplicating clauses modulo renaming.
inline std::string canonical_key(const Clause& c) { return to_string(canonical_form(c)); }

}  // namespace ilp
