#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ilp/bias.hpp"
#include "ilp/bottom.hpp"
#include "ilp/canonical.hpp"
#include "ilp/evaluator.hpp"
#include "ilp/problem.hpp"
#include "ilp/stats.hpp"
#include "ilp/subsume.hpp"
#include "ilp/variants.hpp"

namespace ilp {

enum class SearchMode : uint8_t { baseline, neg_only, pos_only, both, both_vs };

inline const char* to_string(SearchMode m) {
    switch (m) {
        case SearchMode::baseline: return "baseline";
        case SearchMode::neg_only: return "neg-only";
        case SearchMode::pos_only: return "pos-only";
        case SearchMode::both: return "both";
        case SearchMode::both_vs: return "both-vs";
    }
    return "?";
}

inline std::optional<SearchMode> parse_mode(const std::string& s) {
    if (s == "baseline") return SearchMode::baseline;
    if (s == "neg-only") return SearchMode::neg_only;
    if (s == "pos-only") return SearchMode::pos_only;
    if (s == "both") return SearchMode::both;
    if (s == "both-vs") return SearchMode::both_vs;
    return std::nullopt;
}

struct SearchConfig {
    SearchMode mode = SearchMode::both;
    EvalLimits limits;
    Duration overall_timeout = std::chrono::seconds(300);
    uint64_t seed = 0;
    BottomConfig bottom;
    size_t variant_cap = 100000;
    size_t subsume_budget = 200000;

    bool splitting() const { return mode == SearchMode::both_vs; }
    bool use_neg() const {
        return mode == SearchMode::neg_only || mode == SearchMode::both ||
               mode == SearchMode::both_vs;
    }
    bool use_pos() const {
        return mode == SearchMode::pos_only || mode == SearchMode::both ||
               mode == SearchMode::both_vs;
    }
};

/// Failure-derived pruning records plus the fixed bottom-clause variant sets.
struct ConstraintStore {
    std::vector<VariantSet> bottom_neg;  // prune h when a clause generalizes one
    std::vector<VariantSet> bottom_pos;  // prune h unless it generalizes all

    struct LearnedRecord {
        ClausalTheory clauses;
        std::vector<std::string> clause_keys;   // aligned with clauses
        std::vector<std::string> sorted_keys;   // for sub-theory tests
        bool generalization = false;
        bool specialization = false;
        bool elimination = false;
        bool self_resolving = false;
    };
    std::vector<LearnedRecord> learned;
};

/// Records emitted from one failed hypothesis test.
struct FailureConstraints {
    bool generalization = false;
    bool specialization = false;
    bool elimination = false;
};

inline FailureConstraints lff_constraints_from_failure(const TestOutcome& outcome,
                                                       size_t total_pos) {
    FailureConstraints out;
    if (!outcome.covered_neg.empty()) out.generalization = true;
    if (!outcome.uncovered_pos.empty()) out.specialization = true;
    if (outcome.uncovered_pos.size() == total_pos && total_pos > 0) out.elimination = true;
    return out;
}

struct PreprocessResult {
    ConstraintStore store;
    SearchStats fragment;
    std::vector<std::string> warnings;
};

/// Build bottom clauses for the examples the mode selects, generate their
/// variant sets, and install them in the store. Truncated negative bottoms
/// are discarded; truncated positive bottoms downgrade to no constraint.
inline PreprocessResult apply_bottom_preprocessing(const ProblemInput& p,
                                                   const SearchConfig& cfg) {
    PreprocessResult out;
    size_t depth = default_variable_depth(p.bias);
    EvalLimits bc_limits = cfg.limits;
    bc_limits.per_query_timeout =
        std::max(bc_limits.per_query_timeout, Duration(std::chrono::milliseconds(100)));

    VariantSettings vsettings;
    vsettings.max_vars = p.bias.limits.max_vars;
    vsettings.splitting = cfg.splitting();
    vsettings.variant_cap = cfg.variant_cap;

    auto build_side = [&](const std::vector<Atom>& exs, Polarity pol,
                          std::vector<VariantSet>& dest) {
        for (const auto& e : exs) {
            auto t0 = Clock::now();
            BottomClause bc = build_bottom_clause_ie(p.bk, p.bias, e, pol, depth, bc_limits,
                                                     cfg.bottom, p.builtins);
            out.fragment.time_preprocess += Clock::now() - t0;
            if (bc.truncated) {
                if (pol == Polarity::negative) {
                    out.warnings.push_back("discarding truncated bottom clause of negative " +
                                           to_string(e));
                } else {
                    out.warnings.push_back("no constraint from truncated bottom clause of " +
                                           to_string(e));
                }
                continue;
            }
            auto t1 = Clock::now();
            VariantSet vs = generate_variants(bc, p.bias, vsettings);
            out.fragment.time_variantgen += Clock::now() - t1;
            out.fragment.variants_generated += vs.variants.size();
            dest.push_back(std::move(vs));
        }
    };
    if (cfg.use_neg()) build_side(p.neg, Polarity::negative, out.store.bottom_neg);
    if (cfg.use_pos()) build_side(p.pos, Polarity::positive, out.store.bottom_pos);
    return out;
}

namespace detail {

struct SearchDeadline {
    Clock::time_point at;
    bool expired() const { return Clock::now() > at; }
};

struct DeadlineExpired {};

// All canonical bias-consistent clauses with a given body size, minus clauses
// pruned outright by the negative bottom constraints, each annotated with the
// positive variant sets it generalizes.
class ClausePool {
public:
    struct Entry {
        Clause clause;
        bool recursive = false;
        std::vector<bool> pos_cover;
        bool pos_cover_any = false;
        std::string key;
    };

    ClausePool(const LanguageBias& bias, const ConstraintStore& store) : bias_(bias),
                                                                         store_(store) {}

    const std::vector<Entry>& bucket(size_t body_size, const SearchDeadline& deadline) {
        auto it = buckets_.find(body_size);
        if (it != buckets_.end()) return it->second;
        std::vector<Entry> entries;
        build(body_size, entries, deadline);
        return buckets_.emplace(body_size, std::move(entries)).first->second;
    }

private:
    void build(size_t m, std::vector<Entry>& out, const SearchDeadline& deadline) {
        // Candidate body predicates in (name, arity) order; the head predicate
        // joins them when recursion is enabled.
        std::vector<PredicateKey> preds = bias_.body_decls;
        if (bias_.recursion_enabled)
            for (const auto& h : bias_.head_decls)
                if (std::find(preds.begin(), preds.end(), h) == preds.end()) preds.push_back(h);
        std::sort(preds.begin(), preds.end(), [](const PredicateKey& a, const PredicateKey& b) {
            const std::string &an = symbol_name(a.pred), &bn = symbol_name(b.pred);
            return std::tie(an, a.arity) < std::tie(bn, b.arity);
        });

        for (const auto& head_decl : bias_.head_decls) {
            if (head_decl.arity > bias_.limits.max_vars) continue;
            Clause base;
            std::vector<Term> head_args;
            for (size_t i = 0; i < head_decl.arity; ++i)
                head_args.push_back(Term::var(canonical_var_name(i)));
            base.head = Atom{head_decl.pred, head_args};

            std::vector<std::optional<SymbolId>> var_types(bias_.limits.max_vars);
            if (const auto* t = bias_.types_of(head_decl.pred, head_decl.arity))
                for (size_t i = 0; i < head_decl.arity; ++i) var_types[i] = (*t)[i];

            struct Key {
                std::string pred;
                size_t arity;
                std::vector<size_t> ranks;
                bool operator<(const Key& o) const {
                    return std::tie(pred, arity, ranks) < std::tie(o.pred, o.arity, o.ranks);
                }
            };

            std::function<void(size_t, size_t, const Key*, Clause&,
                               std::vector<std::optional<SymbolId>>&)>
                rec = [&](size_t slot, size_t used, const Key* prev, Clause& clause,
                          std::vector<std::optional<SymbolId>>& types) {
                    if (deadline.expired()) throw DeadlineExpired{};
                    if (slot == m) {
                        finalize(clause, out);
                        return;
                    }
                    for (const auto& pk : preds) {
                        // Enumerate rank tuples: existing ranks or consecutive
                        // fresh ones, left to right.
                        std::vector<size_t> ranks(pk.arity, 0);
                        const auto* tdecl = bias_.types_of(pk.pred, pk.arity);
                        std::function<void(size_t, size_t)> tuples = [&](size_t pos,
                                                                         size_t local_used) {
                            if (pos == pk.arity) {
                                Key key{symbol_name(pk.pred), pk.arity, ranks};
                                if (prev && !(*prev < key)) return;
                                // Type agreement along the tuple.
                                std::vector<std::pair<size_t, std::optional<SymbolId>>> undo;
                                bool ok = true;
                                for (size_t i = 0; i < pk.arity && ok; ++i) {
                                    if (!tdecl) break;
                                    SymbolId want = (*tdecl)[i];
                                    auto& slot_type = types[ranks[i]];
                                    if (!slot_type) {
                                        undo.push_back({ranks[i], slot_type});
                                        slot_type = want;
                                    } else if (*slot_type != want) {
                                        ok = false;
                                    }
                                }
                                if (ok) {
                                    clause.body.push_back(
                                        Atom{pk.pred, rank_terms(ranks)});
                                    rec(slot + 1, local_used, &key, clause, types);
                                    clause.body.pop_back();
                                }
                                for (auto& [r, old] : undo) types[r] = old;
                                return;
                            }
                            for (size_t r = 0; r <= local_used && r < bias_.limits.max_vars;
                                 ++r) {
                                ranks[pos] = r;
                                tuples(pos + 1, std::max(local_used, r + 1));
                            }
                        };
                        tuples(0, used);
                    }
                };
            rec(0, head_decl.arity, nullptr, base, var_types);
        }
    }

    static std::vector<Term> rank_terms(const std::vector<size_t>& ranks) {
        std::vector<Term> out;
        for (size_t r : ranks) out.push_back(Term::var(canonical_var_name(r)));
        return out;
    }

    void finalize(const Clause& c, std::vector<Entry>& out) {
        if (!is_bias_consistent_clause(c, bias_).ok) return;
        // Canonical-form rejection: keep only sequences that are already in
        // canonical form, so each clause appears exactly once.
        Clause canon = canonical_form(c);
        if (!(to_string(canon) == to_string(c))) return;

        Entry e;
        e.clause = c;
        e.clause.normalize();
        e.recursive = is_recursive_clause(c);
        e.key = to_string(c);

        // Negative bottom constraints prune at the clause level: any
        // hypothesis containing a pruned clause entails that example.
        for (const auto& vs : store_.bottom_neg)
            if (generalizes_via_variants(e.clause, vs).holds) return;

        e.pos_cover.resize(store_.bottom_pos.size(), false);
        for (size_t i = 0; i < store_.bottom_pos.size(); ++i) {
            const VariantSet& vs = store_.bottom_pos[i];
            bool covered = generalizes_via_variants(e.clause, vs).holds;
            if (!covered && bias_.recursion_enabled && e.recursive) {
                std::vector<Atom> pre = precedes_recursion_literals(e.clause, bias_);
                for (const auto& v : vs.variants) {
                    bool subset = true;
                    for (const auto& lit : pre)
                        if (!std::binary_search(v.body.begin(), v.body.end(), lit)) {
                            subset = false;
                            break;
                        }
                    if (subset) {
                        covered = true;
                        break;
                    }
                }
            }
            e.pos_cover[i] = covered;
            if (covered) e.pos_cover_any = true;
        }
        out.push_back(std::move(e));
    }

    const LanguageBias& bias_;
    const ConstraintStore& store_;
    std::map<size_t, std::vector<Entry>> buckets_;
};

// Pairwise clause-subsumption cache over canonical clause keys.
class SubsumeCache {
public:
    explicit SubsumeCache(size_t budget) : budget_(budget) {}

    // -1 budget exhausted, 0 no, 1 yes
    int check(const std::string& key1, const Clause& c1, const std::string& key2,
              const Clause& c2) {
        auto it = cache_.find({key1, key2});
        if (it != cache_.end()) return it->second;
        int verdict;
        try {
            verdict = theta_subsumes(c1, c2, budget_).holds ? 1 : 0;
        } catch (const SubsumeBudgetError&) {
            verdict = -1;
        }
        cache_.emplace(std::make_pair(key1, key2), verdict);
        return verdict;
    }

private:
    size_t budget_;
    std::map<std::pair<std::string, std::string>, int> cache_;
};

}  // namespace detail

/// Size-ordered enumeration of bias-consistent candidate hypotheses,
/// canonicalized and deduplicated, filtered by the constraint store.
class HypothesisEnumerator {
public:
    HypothesisEnumerator(const LanguageBias& bias, ConstraintStore& store,
                         const SearchConfig& cfg)
        : bias_(bias),
          store_(store),
          cfg_(cfg),
          pool_(bias, store),
          cache_(cfg.subsume_budget) {
        max_total_ = bias.limits.max_clauses * (bias.limits.max_body + 1);
        total_size_ = 0;
    }

    /// Next hypothesis, or nullopt when the space is exhausted or the
    /// deadline passed (timed_out() tells which).
    std::optional<Hypothesis> next(Clock::time_point deadline) {
        detail::SearchDeadline dl{deadline};
        try {
            while (advance_raw(dl)) {
                Hypothesis h = current_hypothesis(dl);
                if (passes_filters(h)) return h;
            }
        } catch (const detail::DeadlineExpired&) {
            timed_out_ = true;
        }
        return std::nullopt;
    }

    bool timed_out() const { return timed_out_; }

    void record_failure(const Hypothesis& h, const TestOutcome& outcome, size_t total_pos) {
        FailureConstraints fc = lff_constraints_from_failure(outcome, total_pos);
        if (!fc.generalization && !fc.specialization && !fc.elimination) return;
        ConstraintStore::LearnedRecord rec;
        rec.clauses = h.clauses;
        for (const auto& c : h.clauses) rec.clause_keys.push_back(to_string(c));
        rec.sorted_keys = rec.clause_keys;
        std::sort(rec.sorted_keys.begin(), rec.sorted_keys.end());
        rec.generalization = fc.generalization;
        rec.specialization = fc.specialization;
        rec.elimination = fc.elimination;
        for (const auto& c : h.clauses)
            if (is_recursive_clause(c)) rec.self_resolving = true;
        store_.learned.push_back(std::move(rec));
    }

private:
    // Advance the (total size, composition, odometer) cursor to the next raw
    // clause-index combination. Compositions are non-decreasing body sizes.
    bool advance_raw(const detail::SearchDeadline& dl) {
        while (true) {
            if (dl.expired()) throw detail::DeadlineExpired{};
            if (total_size_ == 0) {
                if (!next_total_size()) return false;
            }
            if (comp_index_ >= compositions_.size()) {
                if (!next_total_size()) return false;
                continue;
            }
            if (!odometer_started_) {
                if (init_odometer(dl)) {
                    odometer_started_ = true;
                    return true;
                }
                ++comp_index_;
                continue;
            }
            if (advance_odometer(dl)) return true;
            odometer_started_ = false;
            ++comp_index_;
        }
    }

    bool next_total_size() {
        if (total_size_ >= max_total_) return false;
        ++total_size_;
        compositions_.clear();
        std::vector<size_t> parts;
        build_compositions(total_size_, 1, parts);
        comp_index_ = 0;
        odometer_started_ = false;
        return true;
    }

    void build_compositions(size_t remaining, size_t min_part, std::vector<size_t>& parts) {
        if (remaining == 0) {
            if (!parts.empty()) compositions_.push_back(parts);
            return;
        }
        if (parts.size() == bias_.limits.max_clauses) return;
        for (size_t part = min_part; part <= std::min(remaining, bias_.limits.max_body + 1);
             ++part) {
            parts.push_back(part);
            build_compositions(remaining - part, part, parts);
            parts.pop_back();
        }
    }

    bool init_odometer(const detail::SearchDeadline& dl) {
        const auto& parts = compositions_[comp_index_];
        idx_.assign(parts.size(), 0);
        for (size_t i = 0; i < parts.size(); ++i) {
            size_t lo = (i > 0 && parts[i] == parts[i - 1]) ? idx_[i - 1] + 1 : 0;
            if (lo >= pool_.bucket(parts[i] - 1, dl).size()) return false;
            idx_[i] = lo;
        }
        return true;
    }

    bool advance_odometer(const detail::SearchDeadline& dl) {
        const auto& parts = compositions_[comp_index_];
        size_t k = parts.size();
        while (k > 0) {
            --k;
            ++idx_[k];
            bool ok = true;
            for (size_t i = k; i < parts.size(); ++i) {
                if (i > k) {
                    size_t lo = (parts[i] == parts[i - 1]) ? idx_[i - 1] + 1 : 0;
                    idx_[i] = lo;
                }
                if (idx_[i] >= pool_.bucket(parts[i] - 1, dl).size()) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    }

    Hypothesis current_hypothesis(const detail::SearchDeadline& dl) {
        const auto& parts = compositions_[comp_index_];
        std::vector<Clause> clauses;
        for (size_t i = 0; i < parts.size(); ++i)
            clauses.push_back(pool_.bucket(parts[i] - 1, dl)[idx_[i]].clause);
        return Hypothesis::of(std::move(clauses));
    }

    bool passes_filters(const Hypothesis& h) {
        const auto& parts = compositions_[comp_index_];
        detail::SearchDeadline no_dl{Clock::time_point::max()};

        // A hypothesis of only recursive clauses proves nothing.
        bool all_recursive = true;
        for (size_t i = 0; i < parts.size(); ++i) {
            const auto& e = pool_.bucket(parts[i] - 1, no_dl)[idx_[i]];
            if (!e.recursive) all_recursive = false;
        }
        if (all_recursive && !h.clauses.empty()) return false;

        // Positive bottom constraints: every positive variant set must be
        // generalized by some clause.
        if (!store_.bottom_pos.empty()) {
            for (size_t v = 0; v < store_.bottom_pos.size(); ++v) {
                bool covered = false;
                for (size_t i = 0; i < parts.size() && !covered; ++i)
                    if (pool_.bucket(parts[i] - 1, no_dl)[idx_[i]].pos_cover[v]) covered = true;
                if (!covered) return false;
            }
        }

        // Learned constraints; budget exhaustion skips a constraint rather
        // than over-pruning.
        bool h_self_resolving = false;
        for (const auto& c : h.clauses)
            if (is_recursive_clause(c)) h_self_resolving = true;
        std::vector<std::string> h_keys;
        for (const auto& c : h.clauses) h_keys.push_back(to_string(c));
        std::vector<std::string> h_sorted = h_keys;
        std::sort(h_sorted.begin(), h_sorted.end());

        for (const auto& rec : store_.learned) {
            if (rec.generalization &&
                theory_subsumes_cached(h.clauses, h_keys, rec.clauses, rec.clause_keys))
                return false;
            if (rec.specialization &&
                theory_subsumes_cached(rec.clauses, rec.clause_keys, h.clauses, h_keys))
                return false;
            if (rec.elimination && !rec.self_resolving && !h_self_resolving &&
                std::includes(h_sorted.begin(), h_sorted.end(), rec.sorted_keys.begin(),
                              rec.sorted_keys.end()))
                return false;
        }
        return true;
    }

    // theory_subsumes via the pairwise cache; -1 verdicts make the pair count
    // as not subsumed (conservative for pruning).
    bool theory_subsumes_cached(const ClausalTheory& t1, const std::vector<std::string>& k1,
                                const ClausalTheory& t2, const std::vector<std::string>& k2) {
        for (size_t j = 0; j < t2.size(); ++j) {
            bool found = false;
            for (size_t i = 0; i < t1.size(); ++i) {
                if (cache_.check(k1[i], t1[i], k2[j], t2[j]) == 1) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    const LanguageBias& bias_;
    ConstraintStore& store_;
    SearchConfig cfg_;
    detail::ClausePool pool_;
    detail::SubsumeCache cache_;

    size_t max_total_ = 0;
    size_t total_size_ = 0;
    std::vector<std::vector<size_t>> compositions_;
    size_t comp_index_ = 0;
    std::vector<size_t> idx_;
    bool odometer_started_ = false;
    bool timed_out_ = false;
};

struct SolveResult {
    std::optional<Hypothesis> solution;
    SearchStats stats;
    std::vector<std::string> warnings;
};

/// Generate-test-constrain over the size-ordered hypothesis stream, with the
/// bottom-preprocessing constraints installed up front. Returns the first
/// hypothesis covering all positives and no negatives.
inline SolveResult solve(const ProblemInput& p, const SearchConfig& cfg) {
    auto t_start = Clock::now();
    SolveResult out;

    PreprocessResult pre = apply_bottom_preprocessing(p, cfg);
    out.stats = pre.fragment;
    out.warnings = std::move(pre.warnings);

    HypothesisEnumerator gen(p.bias, pre.store, cfg);
    auto deadline = t_start + cfg.overall_timeout;

    while (true) {
        auto t_gen = Clock::now();
        if (t_gen > deadline) break;
        std::optional<Hypothesis> h = gen.next(deadline);
        out.stats.time_generate += Clock::now() - t_gen;
        if (!h) break;
        ++out.stats.programs_generated;

        auto t_test = Clock::now();
        TestOutcome outcome = test_hypothesis(p.bk, *h, p.pos, p.neg, cfg.limits, p.builtins);
        out.stats.time_test += Clock::now() - t_test;
        out.stats.timeouts_during_test += outcome.timed_out.size();

        if (outcome.is_solution()) {
            out.stats.solved = true;
            out.stats.solution_literals = h->literal_count;
            out.solution = std::move(h);
            break;
        }
        auto t_con = Clock::now();
        gen.record_failure(*h, outcome, p.pos.size());
        out.stats.time_constrain += Clock::now() - t_con;
    }
    out.stats.time_total = Clock::now() - t_start;
    return out;
}

}  // namespace ilp
