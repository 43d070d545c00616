#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/bigint.hpp"
#include "ilp/bottom.hpp"
#include "ilp/term.hpp"

namespace ilp {

/// Variable-split clause plus the equivalence classes splitting recorded.
/// Two variables may share a substitution target only within one class.
struct SplitResult {
    Clause clause;
    std::vector<std::vector<SymbolId>> classes;

    const std::vector<SymbolId>* class_of(SymbolId v) const {
        for (const auto& c : classes)
            if (std::find(c.begin(), c.end(), v) != c.end()) return &c;
        return nullptr;
    }
};

struct VariantSet {
    std::string source;  // rendered source example
    Polarity polarity = Polarity::positive;
    std::vector<Clause> variants;
};

struct VariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// C(n + j - h, j - h): the substitution-count bound for a split clause with
/// n free variables, max_vars j and head arity h.
inline BigInt variant_count_bound(size_t n, size_t j, size_t h) {
    if (j < h) return 0;
    return binomial(n + j - h, j - h);
}

namespace detail {

struct UnionFind {
    std::map<SymbolId, SymbolId> parent;
    SymbolId find(SymbolId v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        SymbolId root = find(it->second);
        parent[v] = root;
        return root;
    }
    void unite(SymbolId a, SymbolId b) {
        parent.emplace(a, a);
        parent.emplace(b, b);
        parent[find(b)] = find(a);
    }
    size_t class_size(SymbolId v, const std::vector<SymbolId>& all) {
        SymbolId root = find(v);
        size_t n = 0;
        for (SymbolId u : all)
            if (find(u) == root) ++n;
        return n;
    }
};

inline SymbolId split_var_symbol(size_t i) { return intern("_s#" + std::to_string(i)); }

}  // namespace detail

/// Variable splitting: make producer occurrences (head occurrences and
/// out-moded body occurrences) of each variable unique, duplicating in-moded
/// consumer literals over the fresh variable for non-head variables.
/// Head-occurrence deduplication always runs so head argument positions can
/// take fixed indices; body splitting is controlled by `split_bodies`.
inline SplitResult variable_split(const Clause& c, const LanguageBias& L,
                                  bool split_bodies = true) {
    SplitResult out;
    out.clause = c;
    detail::UnionFind uf;
    size_t fresh = 0;

    // Head occurrences of one variable become distinct classmates.
    if (out.clause.head) {
        std::set<SymbolId> seen;
        for (auto& arg : out.clause.head->args) {
            if (!arg.is_var()) continue;
            if (!seen.insert(arg.sym).second) {
                SymbolId v2 = detail::split_var_symbol(fresh++);
                uf.unite(arg.sym, v2);
                arg = Term::var(v2);
                seen.insert(v2);
            }
        }
    }

    std::set<SymbolId> head_vars;
    if (out.clause.head)
        for (const auto& t : out.clause.head->args)
            if (t.is_var()) head_vars.insert(t.sym);

    auto dir_of = [&](const Atom& a, size_t i) -> Direction {
        const auto* dirs = L.directions_of(a.pred, a.arity());
        return dirs ? (*dirs)[i] : Direction::out;
    };

    if (split_bodies) {
        const size_t class_cap = std::max<size_t>(2, L.limits.max_vars);
        bool changed = true;
        while (changed) {
            changed = false;
            // Producer occurrences per variable: head occurrences first, then
            // out-moded body occurrences in literal order.
            struct Occurrence {
                size_t lit;  // body index; SIZE_MAX for head
                size_t arg;
            };
            std::map<SymbolId, std::vector<Occurrence>> producers;
            if (out.clause.head)
                for (size_t i = 0; i < out.clause.head->args.size(); ++i)
                    producers[out.clause.head->args[i].sym].push_back({SIZE_MAX, i});
            for (size_t li = 0; li < out.clause.body.size(); ++li) {
                const Atom& b = out.clause.body[li];
                for (size_t ai = 0; ai < b.args.size(); ++ai)
                    if (b.args[ai].is_var() && dir_of(b, ai) == Direction::out)
                        producers[b.args[ai].sym].push_back({li, ai});
            }

            std::vector<SymbolId> all_vars = clause_vars(out.clause);
            for (SymbolId v : all_vars) {
                auto it = producers.find(v);
                if (it == producers.end() || it->second.size() < 2) continue;
                if (uf.class_size(v, all_vars) >= class_cap) continue;

                const Occurrence o2 = it->second[1];
                if (o2.lit == SIZE_MAX) continue;  // head handled above
                SymbolId v2 = detail::split_var_symbol(fresh++);
                uf.unite(v, v2);
                out.clause.body[o2.lit].args[o2.arg] = Term::var(v2);

                if (!head_vars.count(v)) {
                    // Duplicate consumers of v over the new variable.
                    std::vector<Atom> copies;
                    for (const auto& b : out.clause.body) {
                        bool consumes = false;
                        for (size_t ai = 0; ai < b.args.size(); ++ai)
                            if (b.args[ai].is_var() && b.args[ai].sym == v &&
                                dir_of(b, ai) == Direction::in)
                                consumes = true;
                        if (!consumes) continue;
                        Atom copy = b;
                        for (size_t ai = 0; ai < copy.args.size(); ++ai)
                            if (copy.args[ai].is_var() && copy.args[ai].sym == v &&
                                dir_of(copy, ai) == Direction::in)
                                copy.args[ai] = Term::var(v2);
                        copies.push_back(std::move(copy));
                    }
                    for (auto& copy : copies) {
                        bool exists = std::find(out.clause.body.begin(), out.clause.body.end(),
                                                copy) != out.clause.body.end();
                        if (!exists) out.clause.body.push_back(std::move(copy));
                    }
                }
                changed = true;
                break;  // rescan with fresh producer map
            }
        }
    }

    // Partition all clause variables into classes, in first-occurrence order.
    std::vector<SymbolId> vars = clause_vars(out.clause);
    std::map<SymbolId, size_t> class_index;
    for (SymbolId v : vars) {
        SymbolId root = uf.find(v);
        auto it = class_index.find(root);
        if (it == class_index.end()) {
            class_index[root] = out.classes.size();
            out.classes.push_back({v});
        } else {
            out.classes[it->second].push_back(v);
        }
    }
    return out;
}

/// Canonical substitutions from split-clause variables into index variables
/// {0..max_vars-1}. Head variables are fixed to 0..head_arity-1 in argument
/// order. Later variables may take the next fresh index, join an index held
/// by an earlier variable of the same class, or stay unmapped (their literals
/// are dropped downstream). The emission count never exceeds
/// variant_count_bound(n, max_vars, head_arity).
inline std::vector<Substitution> enumerate_substitutions(const SplitResult& sr, size_t max_vars,
                                                         size_t head_arity,
                                                         size_t hard_cap = 100000) {
    std::vector<SymbolId> vars = clause_vars(sr.clause);
    std::vector<SymbolId> head_vars, free_vars;
    if (sr.clause.head)
        for (const auto& t : sr.clause.head->args)
            if (t.is_var()) head_vars.push_back(t.sym);
    for (SymbolId v : vars)
        if (std::find(head_vars.begin(), head_vars.end(), v) == head_vars.end())
            free_vars.push_back(v);

    BigInt bound = variant_count_bound(free_vars.size(), max_vars, head_arity);
    size_t cap = hard_cap;
    if (bound < BigInt(hard_cap)) cap = static_cast<size_t>(bound);

    std::vector<Substitution> out;
    std::map<SymbolId, size_t> assigned;  // var -> index
    for (size_t i = 0; i < head_vars.size() && i < head_arity; ++i)
        assigned[head_vars[i]] = i;

    size_t fresh_used = 0;
    std::function<void(size_t)> rec = [&](size_t vi) {
        if (out.size() >= cap) return;
        if (vi == free_vars.size()) {
            Substitution s;
            // identity bindings (v -> v) stay explicit: presence in the map is
            // what marks a variable as mapped for literal dropping
            for (const auto& [v, idx] : assigned)
                s.bindings[v] = Term::var(canonical_var_name(idx));
            out.push_back(std::move(s));
            return;
        }
        SymbolId v = free_vars[vi];
        const auto* cls = sr.class_of(v);

        // Option 1: the next fresh index.
        size_t fresh_idx = head_arity + fresh_used;
        if (fresh_idx < max_vars) {
            assigned[v] = fresh_idx;
            ++fresh_used;
            rec(vi + 1);
            --fresh_used;
            assigned.erase(v);
        }
        // Option 2: join an earlier classmate's index.
        if (cls) {
            std::set<size_t> joinable;
            for (SymbolId u : *cls) {
                if (u == v) continue;
                auto it = assigned.find(u);
                if (it != assigned.end()) joinable.insert(it->second);
            }
            for (size_t idx : joinable) {
                assigned[v] = idx;
                rec(vi + 1);
                assigned.erase(v);
            }
        }
        // Option 3: leave unmapped.
        rec(vi + 1);
    };
    rec(0);
    return out;
}

struct VariantSettings {
    size_t max_vars = 5;
    bool splitting = false;
    size_t variant_cap = 100000;
};

/// Apply every canonical substitution to the (split or unsplit) clause,
/// dropping literals with unmapped variables, discarding variants that are
/// not bias consistent, and deduplicating.
inline VariantSet generate_variants(const BottomClause& b, const LanguageBias& L,
                                    const VariantSettings& settings) {
    VariantSet out;
    out.source = to_string(b.example);
    out.polarity = b.polarity;

    bool split = settings.splitting && !b.truncated;
    SplitResult sr = variable_split(b.clause, L, split);
    size_t head_arity = b.clause.head ? b.clause.head->arity() : 0;
    std::vector<Substitution> subs =
        enumerate_substitutions(sr, settings.max_vars, head_arity, settings.variant_cap);
    if (subs.size() >= settings.variant_cap)
        throw VariantError("variant cap exceeded for example " + out.source +
                           " (try disabling variable splitting)");

    std::set<std::string> seen;
    auto emit = [&](Clause variant) {
        std::sort(variant.body.begin(), variant.body.end());
        variant.body.erase(std::unique(variant.body.begin(), variant.body.end()),
                           variant.body.end());
        if (!is_bias_consistent_clause(variant, L).ok) return;
        std::string key = to_string(variant);
        if (seen.insert(key).second) out.variants.push_back(std::move(variant));
        if (out.variants.size() > settings.variant_cap)
            throw VariantError("variant cap exceeded for example " + out.source +
                               " (try disabling variable splitting)");
    };
    for (const auto& s : subs) {
        Clause variant;
        variant.head = apply_substitution(*sr.clause.head, s);
        for (const auto& lit : sr.clause.body) {
            std::vector<SymbolId> lv;
            collect_vars(lit, lv);
            bool mapped = true;
            for (SymbolId v : lv)
                if (!s.lookup(v)) mapped = false;
            if (!mapped) continue;  // drop literals with unmapped variables
            variant.body.push_back(apply_substitution(lit, s));
        }
        // Keep the raw index form, and also the canonical re-form so subset
        // checks against canonicalized hypothesis clauses line up.
        Clause reform = canonical_form(variant);
        emit(variant);
        if (!(reform == variant)) emit(std::move(reform));
    }
    return out;
}

}  // namespace ilp
