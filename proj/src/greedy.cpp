#include "maxmin/greedy.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "maxmin/errors.hpp"

namespace maxmin {

Allocation Allocation::empty(int n, int m) {
    Allocation a;
    a.bundles.assign(m, ItemSet(n));
    a.unallocated = ItemSet::full(n);
    return a;
}

void Allocation::validate(int n) const {
    ItemSet seen(n);
    for (const auto& b : bundles) {
        if (b.universe() != n) throw DomainError("bundle over the wrong ground set");
        if (seen.intersects(b)) throw DomainError("bundles overlap");
        seen |= b;
    }
    if (seen.intersects(unallocated)) throw DomainError("unallocated items overlap a bundle");
    seen |= unallocated;
    if (seen != ItemSet::full(n)) throw DomainError("allocation does not cover the ground set");
}

Value min_bundle_value(const SetFunction& f, const Allocation& a) {
    if (a.bundles.empty()) throw DomainError("allocation has no players");
    Value best = evaluate(f, a.bundles[0]);
    for (size_t p = 1; p < a.bundles.size(); ++p) {
        Value v = evaluate(f, a.bundles[p]);
        if (v < best) best = v;
    }
    return best;
}

int min_player(const SetFunction& f, const Allocation& a) {
    if (a.bundles.empty()) throw DomainError("allocation has no players");
    int q = 0;
    Value best = evaluate(f, a.bundles[0]);
    for (size_t p = 1; p < a.bundles.size(); ++p) {
        Value v = evaluate(f, a.bundles[p]);
        if (v < best) {
            best = v;
            q = static_cast<int>(p);
        }
    }
    return q;
}

namespace {

std::vector<int> ranks_from_order(std::vector<int> order, const char* what) {
    std::vector<int> rank(order.size(), -1);
    for (size_t r = 0; r < order.size(); ++r) {
        int idx = order[r];
        if (idx < 0 || idx >= static_cast<int>(order.size()) || rank[idx] != -1)
            throw UsageError(std::string(what) + " order is not a permutation");
        rank[idx] = static_cast<int>(r);
    }
    return rank;
}

}  // namespace

TieBreakPolicy TieBreakPolicy::lexicographic(int items, int players) {
    std::vector<int> io(items), po(players);
    std::iota(io.begin(), io.end(), 0);
    std::iota(po.begin(), po.end(), 0);
    return by_permutation(std::move(io), std::move(po));
}

TieBreakPolicy TieBreakPolicy::by_permutation(std::vector<int> item_order,
                                              std::vector<int> player_order) {
    TieBreakPolicy p;
    p.item_rank_ = ranks_from_order(std::move(item_order), "item");
    p.player_rank_ = ranks_from_order(std::move(player_order), "player");
    return p;
}

bool TieBreakPolicy::pair_before(int item_a, int player_a, int item_b, int player_b) const {
    int ia = item_rank(item_a), ib = item_rank(item_b);
    if (ia != ib) return ia < ib;
    return player_rank(player_a) < player_rank(player_b);
}

TieBreakPolicy TieBreakPolicy::restricted(const std::vector<int>& kept_items,
                                          const std::vector<int>& kept_players) const {
    auto project = [](const std::vector<int>& rank, const std::vector<int>& kept) {
        std::vector<int> order(kept.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return rank.at(kept[a]) < rank.at(kept[b]); });
        return order;  // new indices sorted by old rank
    };
    auto item_order = project(item_rank_, kept_items);
    auto player_order = project(player_rank_, kept_players);
    return by_permutation(std::move(item_order), std::move(player_order));
}

std::vector<int> TieBreakPolicy::item_order() const {
    std::vector<int> order(item_rank_.size());
    for (size_t i = 0; i < item_rank_.size(); ++i) order[item_rank_[i]] = static_cast<int>(i);
    return order;
}

std::vector<int> TieBreakPolicy::player_order() const {
    std::vector<int> order(player_rank_.size());
    for (size_t i = 0; i < player_rank_.size(); ++i) order[player_rank_[i]] = static_cast<int>(i);
    return order;
}

namespace {

constexpr size_t kNaivePairLimit = 4096;

struct GreedyRunner {
    const Instance& inst;
    const SetFunction& f;
    const TieBreakPolicy& policy;
    Value threshold;
    std::optional<int> limit;
    bool force_naive;

    int n, m;
    std::vector<char> taken;
    std::vector<Value> svals;
    std::vector<int> shared_order;
    std::vector<ItemSet> bundles;
    std::vector<Value> vals;
    int remaining = 0;
    int allocated = 0;
    GreedyTrace trace;

    // Lazy state: per-player cursor into shared_order plus a heap of
    // stale-but-valid upper bounds (valid for monotone submodular f).
    struct HeapEntry {
        Value ub;
        int item;
        std::uint32_t ver;
    };
    struct EntryWorse {
        const TieBreakPolicy* pol;
        bool operator()(const HeapEntry& a, const HeapEntry& b) const {
            int c = cmp(a.ub, b.ub);
            if (c != 0) return c < 0;
            return pol->item_rank(a.item) > pol->item_rank(b.item);
        }
    };
    using Heap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, EntryWorse>;
    std::vector<Heap> heaps;
    std::vector<size_t> cursors;
    std::vector<std::uint32_t> versions;
    struct Cand {
        Value gain;
        int item;
    };
    std::vector<std::optional<Cand>> cached;

    GreedyRunner(const Instance& instance, const Value& thr, const TieBreakPolicy& pol,
                 std::optional<int> cap, bool naive)
        : inst(instance),
          f(instance.valuation()),
          policy(pol),
          threshold(thr),
          limit(cap),
          force_naive(naive),
          n(instance.n()),
          m(instance.m()) {
        if (inst.has_matroids())
            throw UnsupportedError("the greedy solver does not support matroid constraints");
        if (threshold < 0) throw UsageError("greedy threshold must be non-negative");
        if (policy.items() != n || policy.players() != m)
            throw UsageError("tie-break policy sized for a different instance");
        if (limit && *limit < 1) throw UsageError("cardinality cap must be at least 1");
        taken.assign(n, 0);
        bundles.assign(m, ItemSet(n));
        vals.assign(m, Value(0));
        remaining = n;
        trace.threshold = threshold;
    }

    bool use_naive() const {
        return force_naive || static_cast<size_t>(n) * static_cast<size_t>(m) <= kNaivePairLimit;
    }

    void seed() {
        svals.resize(n);
        ItemSet empty(n);
        for (int j = 0; j < n; ++j) svals[j] = marginal(f, j, empty);
        shared_order.resize(n);
        std::iota(shared_order.begin(), shared_order.end(), 0);
        std::sort(shared_order.begin(), shared_order.end(), [&](int a, int b) {
            int c = cmp(svals[a], svals[b]);
            if (c != 0) return c > 0;
            return policy.item_rank(a) < policy.item_rank(b);
        });

        int seeds = std::min(n, m);
        if (limit) seeds = std::min(seeds, *limit);
        std::vector<int> chosen(shared_order.begin(), shared_order.begin() + seeds);
        std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
            return policy.item_rank(a) < policy.item_rank(b);
        });
        std::vector<int> porder = policy.player_order();
        for (int k = 0; k < seeds; ++k) {
            int item = chosen[k];
            int player = porder[k];
            bundles[player].set(item);
            vals[player] = svals[item];
            taken[item] = 1;
            --remaining;
            ++allocated;
            trace.seeding.push_back({item, player, svals[item]});
        }
    }

    bool eligible(int p) const { return vals[p] < threshold; }

    std::optional<Cand> best_candidate(int p) {
        if (cached[p] && !taken[(*cached[p]).item]) return cached[p];
        cached[p].reset();
        auto& heap = heaps[p];
        auto& cur = cursors[p];
        while (true) {
            while (cur < shared_order.size() && taken[shared_order[cur]]) ++cur;
            while (!heap.empty() && taken[heap.top().item]) heap.pop();
            bool have_shared = cur < shared_order.size();
            bool have_heap = !heap.empty();
            if (!have_shared && !have_heap) return std::nullopt;
            bool shared_first = false;
            if (have_shared && have_heap) {
                int js = shared_order[cur];
                const HeapEntry& top = heap.top();
                int c = cmp(svals[js], top.ub);
                shared_first = c > 0 || (c == 0 && policy.item_rank(js) < policy.item_rank(top.item));
            } else {
                shared_first = have_shared;
            }
            if (shared_first) {
                int js = shared_order[cur];
                ++cur;
                heap.push({marginal(f, js, bundles[p]), js, versions[p]});
                continue;
            }
            HeapEntry top = heap.top();
            if (top.ver == versions[p]) {
                cached[p] = Cand{top.ub, top.item};
                return cached[p];
            }
            heap.pop();
            heap.push({marginal(f, top.item, bundles[p]), top.item, versions[p]});
        }
    }

    void allocate(int item, int player, const Value& gain) {
        bundles[player].set(item);
        vals[player] += gain;
        taken[item] = 1;
        --remaining;
        ++allocated;
        trace.steps.push_back({item, player, gain});
    }

    void run_naive() {
        std::vector<int> iorder = policy.item_order();
        std::vector<int> porder = policy.player_order();
        while (remaining > 0 && (!limit || allocated < *limit)) {
            bool any_eligible = false;
            int best_item = -1, best_player = -1;
            Value best_gain;
            for (int item : iorder) {
                if (taken[item]) continue;
                for (int player : porder) {
                    if (!eligible(player)) continue;
                    any_eligible = true;
                    Value g = marginal(f, item, bundles[player]);
                    if (best_item < 0 || g > best_gain) {
                        best_gain = g;
                        best_item = item;
                        best_player = player;
                    }
                }
            }
            if (!any_eligible || best_item < 0) break;
            allocate(best_item, best_player, best_gain);
        }
    }

    void run_lazy() {
        heaps.assign(m, Heap(EntryWorse{&policy}));
        cursors.assign(m, 0);
        versions.assign(m, 0);
        cached.assign(m, std::nullopt);
        std::vector<int> porder = policy.player_order();
        while (remaining > 0 && (!limit || allocated < *limit)) {
            int best_item = -1, best_player = -1;
            Value best_gain;
            for (int player : porder) {
                if (!eligible(player)) continue;
                auto c = best_candidate(player);
                if (!c) continue;
                bool better = best_item < 0;
                if (!better) {
                    int cv = cmp(c->gain, best_gain);
                    better = cv > 0 || (cv == 0 && policy.item_rank(c->item) < policy.item_rank(best_item));
                }
                if (better) {
                    best_gain = c->gain;
                    best_item = c->item;
                    best_player = player;
                }
            }
            if (best_item < 0) break;
            allocate(best_item, best_player, best_gain);
            versions[best_player]++;
            cached[best_player].reset();
        }
    }

    GreedyResult run() {
        seed();
        if (use_naive())
            run_naive();
        else
            run_lazy();
        Allocation alloc;
        alloc.bundles = bundles;
        alloc.unallocated = ItemSet(n);
        for (int j = 0; j < n; ++j)
            if (!taken[j]) alloc.unallocated.set(j);
        return {std::move(alloc), std::move(trace)};
    }
};

}  // namespace

GreedyResult greedy_with_threshold(const Instance& inst, const Value& threshold,
                                   const TieBreakPolicy& policy) {
    return GreedyRunner(inst, threshold, policy, std::nullopt, false).run();
}

GreedyResult greedy_cardinality(const Instance& inst, const Value& threshold,
                                const TieBreakPolicy& policy) {
    if (!inst.cardinality_cap())
        throw UsageError("greedy_cardinality needs an instance with a cardinality cap");
    return GreedyRunner(inst, threshold, policy, inst.cardinality_cap(), false).run();
}

void validate_greedy_result(const Instance& inst, const Value& threshold,
                            const TieBreakPolicy& policy, const GreedyResult& result,
                            std::optional<int> cardinality_cap) {
    GreedyResult expect = GreedyRunner(inst, threshold, policy, cardinality_cap, true).run();
    auto fail = [](const std::string& why) { throw VerificationError("greedy trace invalid: " + why); };
    if (expect.trace.seeding.size() != result.trace.seeding.size()) fail("seeding length");
    for (size_t k = 0; k < expect.trace.seeding.size(); ++k) {
        const auto& a = expect.trace.seeding[k];
        const auto& b = result.trace.seeding[k];
        if (a.item != b.item || a.player != b.player || a.gain != b.gain) fail("seeding step differs");
    }
    if (expect.trace.steps.size() != result.trace.steps.size()) fail("step count");
    for (size_t k = 0; k < expect.trace.steps.size(); ++k) {
        const auto& a = expect.trace.steps[k];
        const auto& b = result.trace.steps[k];
        if (a.item != b.item || a.player != b.player || a.gain != b.gain)
            fail("step " + std::to_string(k) + " is not the policy argmax");
    }
    for (int p = 0; p < inst.m(); ++p)
        if (!(expect.allocation.bundles[p] == result.allocation.bundles[p])) fail("bundle differs");
    if (!(expect.allocation.unallocated == result.allocation.unallocated)) fail("unallocated differs");
    result.allocation.validate(inst.n());
}

PreprocessResult preprocess_big_items(const Instance& inst, const Value& threshold) {
    if (threshold <= 0) throw UsageError("preprocessing threshold must be positive");
    if (inst.has_matroids())
        throw UnsupportedError("big-item preprocessing does not support matroid constraints");
    const SetFunction& f = inst.valuation();
    ItemSet empty(inst.n());
    std::vector<std::pair<Value, int>> bigs;
    for (int j = 0; j < inst.n(); ++j) {
        Value v = marginal(f, j, empty);
        if (v >= threshold) bigs.push_back({std::move(v), j});
    }
    std::sort(bigs.begin(), bigs.end(), [](const auto& a, const auto& b) {
        int c = cmp(a.first, b.first);
        if (c != 0) return c > 0;
        return a.second < b.second;
    });

    PreprocessResult out;
    int fixed_count = std::min<int>(static_cast<int>(bigs.size()), inst.m());
    ItemSet keep = ItemSet::full(inst.n());
    for (int k = 0; k < static_cast<int>(bigs.size()); ++k) {
        keep.reset(bigs[k].second);
        if (k < fixed_count)
            out.fixed.push_back({k, bigs[k].second});
        else
            out.discarded.push_back(bigs[k].second);
    }
    out.item_map = keep.items();
    int reduced_players = inst.m() - fixed_count;
    for (int p = fixed_count; p < inst.m(); ++p) out.player_map.push_back(p);
    if (reduced_players > 0) {
        std::vector<std::string> labels;
        labels.reserve(out.item_map.size());
        for (int j : out.item_map) labels.push_back(inst.label(j));
        out.reduced = Instance(std::move(labels), reduced_players, restrict_to(f, keep));
    }
    return out;
}

namespace {

mpz_class denominator_lcm(const SetFunction& f) {
    mpz_class l = 1;
    auto fold = [&](const Value& v) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t()); };
    std::visit(
        [&](const auto& fn) {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                for (const auto& w : fn.weights) fold(w);
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                for (const auto& w : fn.element_weights) fold(w);
            } else if constexpr (std::is_same_v<T, TableFn>) {
                for (const auto& v : fn.values) fold(v);
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                fold(fn.cap);
                mpz_class inner = denominator_lcm(*fn.inner);
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inner.get_mpz_t());
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                fold(fn.bonus);
                mpz_class inner = denominator_lcm(*fn.inner);
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inner.get_mpz_t());
            } else {
                for (const auto& part : fn.parts) {
                    mpz_class inner = denominator_lcm(*part);
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inner.get_mpz_t());
                }
            }
        },
        f.node());
    return l;
}

constexpr int kSubsetGridLimit = 16;

std::vector<Value> subset_value_grid(const Instance& inst) {
    const SetFunction& f = inst.valuation();
    int n = inst.n();
    std::vector<Value> values;
    values.reserve(size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        values.push_back(evaluate(f, ItemSet::from_mask(mask, n)));
    std::sort(values.begin(), values.end(), [](const Value& a, const Value& b) { return a > b; });
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

struct TryOutcome {
    Allocation allocation;
    Value achieved;
    GreedyTrace trace;
    std::vector<std::pair<int, int>> fixed;
};

// One pipeline run at grid value T: preprocess at threshold alpha*T,
// run the (possibly capped) greedy on the remainder, re-attach.
std::optional<TryOutcome> try_threshold(const Instance& inst, const Value& tau,
                                        const TieBreakPolicy& policy, bool capped) {
    const SetFunction& f = inst.valuation();
    int n = inst.n(), m = inst.m();

    if (tau == 0) {
        GreedyResult res =
            capped ? greedy_cardinality(inst, tau, policy) : greedy_with_threshold(inst, tau, policy);
        TryOutcome out{res.allocation, min_bundle_value(f, res.allocation), res.trace, {}};
        return out;
    }

    PreprocessResult pre = preprocess_big_items(inst, tau);

    Allocation composed = Allocation::empty(n, m);
    Value achieved;
    bool have_achieved = false;
    ItemSet empty(n);
    for (auto [player, item] : pre.fixed) {
        composed.bundles[player].set(item);
        composed.unallocated.reset(item);
        Value v = marginal(f, item, empty);
        if (!have_achieved || v < achieved) {
            achieved = v;
            have_achieved = true;
        }
    }

    GreedyTrace trace;
    trace.threshold = tau;
    if (pre.reduced) {
        const Instance& red = *pre.reduced;
        TieBreakPolicy rpolicy = policy.restricted(pre.item_map, pre.player_map);
        GreedyResult res;
        if (capped) {
            int capv = *inst.cardinality_cap() - static_cast<int>(pre.fixed.size());
            capv = std::min(capv, red.n());
            if (capv < 1) return std::nullopt;  // no room left for the remaining players
            Instance capped_red(red.labels(), red.m(), red.valuation(), {}, capv);
            res = greedy_cardinality(capped_red, tau, rpolicy);
        } else {
            res = greedy_with_threshold(red, tau, rpolicy);
        }
        for (int p = 0; p < red.m(); ++p) {
            int op = pre.player_map[p];
            res.allocation.bundles[p].for_each([&](int j) {
                composed.bundles[op].set(pre.item_map[j]);
                composed.unallocated.reset(pre.item_map[j]);
            });
            Value v = evaluate(red.valuation(), res.allocation.bundles[p]);
            if (v < tau) return std::nullopt;
            if (!have_achieved || v < achieved) {
                achieved = v;
                have_achieved = true;
            }
        }
        auto remap = [&](const std::vector<GreedyStep>& steps, std::vector<GreedyStep>& dst) {
            for (const auto& s : steps)
                dst.push_back({pre.item_map[s.item], pre.player_map[s.player], s.gain});
        };
        remap(res.trace.seeding, trace.seeding);
        remap(res.trace.steps, trace.steps);
    }
    if (!have_achieved) return std::nullopt;
    return TryOutcome{std::move(composed), std::move(achieved), std::move(trace), pre.fixed};
}

ApproxResult search_threshold_grid(const Instance& inst, const Value& alpha,
                                   const TieBreakPolicy& policy, bool capped) {
    if (alpha <= 0 || alpha > 1) throw UsageError("alpha must satisfy 0 < alpha <= 1");
    if (inst.has_matroids())
        throw UnsupportedError("the greedy solver does not support matroid constraints");
    if (capped) {
        if (!inst.cardinality_cap()) throw UsageError("instance carries no cardinality cap");
        if (*inst.cardinality_cap() < inst.m())
            throw UsageError("cardinality cap below the player count");
    }

    auto attempt = [&](const Value& t) { return try_threshold(inst, alpha * t, policy, capped); };
    auto finish = [&](const Value& t, TryOutcome&& out) {
        return ApproxResult{std::move(out.allocation), std::move(out.achieved), t,
                            std::move(out.trace), std::move(out.fixed)};
    };

    if (inst.n() <= kSubsetGridLimit) {
        for (const Value& t : subset_value_grid(inst)) {
            auto out = attempt(t);
            if (out) return finish(t, std::move(*out));
        }
        throw VerificationError("threshold search failed at zero");  // unreachable
    }

    // Large ground set: clear denominators and search integers in
    // [0, D*f(J)]. The success predicate is not promised monotone, so
    // the binary-search result is re-validated and nudged upward.
    mpz_class denom = denominator_lcm(inst.valuation());
    Value fj = evaluate(inst.valuation(), inst.all_items());
    Value scaled = fj * Value(denom);
    mpz_class hi_z = scaled.get_num() / scaled.get_den();
    mpz_class lo = 0, hi = hi_z;
    auto value_at = [&](const mpz_class& k) { return Value(mpq_class(k) / mpq_class(denom)); };
    while (lo < hi) {
        mpz_class mid = (lo + hi + 1) / 2;
        if (attempt(value_at(mid)))
            lo = mid;
        else
            hi = mid - 1;
    }
    for (int step = 0; step < 64 && lo < hi_z; ++step) {
        if (!attempt(value_at(lo + 1))) break;
        lo = lo + 1;
    }
    Value t = value_at(lo);
    auto out = attempt(t);
    if (!out) throw VerificationError("threshold search failed to re-validate");
    return finish(t, std::move(*out));
}

}  // namespace

ApproxResult solve_approx(const Instance& inst, const Value& alpha, const TieBreakPolicy& policy) {
    return search_threshold_grid(inst, alpha, policy, false);
}

ApproxResult solve_approx_cardinality(const Instance& inst, const Value& alpha,
                                      const TieBreakPolicy& policy) {
    return search_threshold_grid(inst, alpha, policy, true);
}

}  // namespace maxmin
