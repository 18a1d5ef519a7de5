#include "maxmin/exact.hpp"

#include <algorithm>

#include "maxmin/errors.hpp"

namespace maxmin {

namespace {

struct Enumerator {
    const Instance& inst;
    const SetFunction& f;
    long long budget;
    long long nodes = 0;

    int n, m;
    bool allow_skip;
    int cap;  // max items allocated in total

    std::vector<ItemSet> bundles;
    std::vector<Value> vals;
    int used_players = 0;
    int allocated = 0;

    Enumerator(const Instance& instance, long long budget_limit, bool partial_allowed)
        : inst(instance),
          f(instance.valuation()),
          budget(budget_limit),
          n(instance.n()),
          m(instance.m()) {
        allow_skip = partial_allowed || instance.has_matroids() || instance.cardinality_cap().has_value();
        cap = instance.cardinality_cap().value_or(n);
        bundles.assign(m, ItemSet(n));
        vals.assign(m, Value(0));
    }

    void charge() {
        if (++nodes > budget)
            throw ResourceError("enumeration budget of " + std::to_string(budget) +
                                    " nodes exceeded (MAXMIN_BUDGET)",
                                "MAXMIN_BUDGET");
    }

    bool can_assign(int item, int player) const {
        if (allocated >= cap) return false;
        if (!inst.has_matroids()) return true;
        ItemSet extended = bundles[player].with(item);
        return is_common_independent(inst.matroids(), extended);
    }

    // Suffix of items not yet placed, as a set.
    ItemSet suffix_set(int depth) const {
        ItemSet s(n);
        for (int j = depth; j < n; ++j) s.set(j);
        return s;
    }

    template <typename AtLeaf, typename Bound>
    void dfs(int depth, const AtLeaf& at_leaf, const Bound& bound_ok) {
        charge();
        if (depth == n) {
            at_leaf();
            return;
        }
        if (!bound_ok(depth)) return;
        int player_limit = std::min(used_players + 1, m);
        for (int p = 0; p < player_limit; ++p) {
            if (!can_assign(depth, p)) continue;
            Value gain = marginal(f, depth, bundles[p]);
            bundles[p].set(depth);
            vals[p] += gain;
            ++allocated;
            int prev_used = used_players;
            used_players = std::max(used_players, p + 1);
            dfs(depth + 1, at_leaf, bound_ok);
            used_players = prev_used;
            --allocated;
            vals[p] -= gain;
            bundles[p].reset(depth);
        }
        if (allow_skip) dfs(depth + 1, at_leaf, bound_ok);
    }

    Allocation snapshot() const {
        Allocation a;
        a.bundles = bundles;
        a.unallocated = ItemSet::full(n);
        for (const auto& b : bundles) a.unallocated -= b;
        return a;
    }
};

}  // namespace

OptResult opt_maxmin(const Instance& inst, const ExactOptions& opts) {
    Enumerator en(inst, opts.budget, false);
    bool have_best = false;
    Value best;
    Allocation best_alloc = Allocation::empty(inst.n(), inst.m());

    auto at_leaf = [&]() {
        Value v = en.vals[0];
        for (int p = 1; p < en.m; ++p)
            if (en.vals[p] < v) v = en.vals[p];
        if (!have_best || v > best) {
            have_best = true;
            best = v;
            best_alloc = en.snapshot();
        }
    };
    auto bound_ok = [&](int depth) {
        if (!have_best) return true;
        // No bundle can end better than taking every remaining item.
        ItemSet rest = en.suffix_set(depth);
        Value bound = evaluate(en.f, en.bundles[0] | rest);
        for (int p = 1; p < en.m; ++p) {
            Value b = evaluate(en.f, en.bundles[p] | rest);
            if (b < bound) bound = b;
        }
        return bound > best;
    };

    en.dfs(0, at_leaf, bound_ok);
    if (!have_best) throw VerificationError("enumeration found no allocation");
    return {std::move(best), std::move(best_alloc), en.nodes};
}

TruncatedSumResult opt_truncated_maxsum(const Instance& inst, const Value& cap,
                                        const ExactOptions& opts) {
    if (cap < 0) throw UsageError("truncation cap must be non-negative");
    Enumerator en(inst, opts.budget, inst.has_matroids());
    bool have_best = false;
    Value best;
    Allocation best_alloc = Allocation::empty(inst.n(), inst.m());

    auto truncated = [&](const Value& v) { return v > cap ? cap : v; };
    auto at_leaf = [&]() {
        Value total = 0;
        for (int p = 0; p < en.m; ++p) total += truncated(en.vals[p]);
        if (!have_best || total > best) {
            have_best = true;
            best = total;
            best_alloc = en.snapshot();
        }
    };
    auto bound_ok = [&](int depth) {
        if (!have_best) return true;
        ItemSet rest = en.suffix_set(depth);
        Value bound = 0;
        for (int p = 0; p < en.m; ++p) bound += truncated(evaluate(en.f, en.bundles[p] | rest));
        return bound > best;
    };

    en.dfs(0, at_leaf, bound_ok);
    if (!have_best) throw VerificationError("enumeration found no allocation");
    return {std::move(best_alloc), std::move(best), en.nodes};
}

std::vector<ItemSet> enumerate_configurations(const Instance& inst, const Value& threshold,
                                              bool strict, const ExactOptions& opts) {
    int n = inst.n();
    if (n > 24)
        throw ResourceError("configuration enumeration supports at most 24 items", "n<=24");
    if ((std::uint64_t{1} << n) > static_cast<std::uint64_t>(opts.budget))
        throw ResourceError("configuration enumeration over 2^" + std::to_string(n) +
                                " subsets exceeds the budget (MAXMIN_BUDGET)",
                            "MAXMIN_BUDGET");
    const SetFunction& f = inst.valuation();
    std::vector<ItemSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ItemSet c = ItemSet::from_mask(mask, n);
        if (inst.has_matroids() && !is_common_independent(inst.matroids(), c)) continue;
        Value v = evaluate(f, c);
        bool keep = strict ? v > threshold : v >= threshold;
        if (keep) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace maxmin
