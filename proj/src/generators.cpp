#include "maxmin/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "maxmin/errors.hpp"

namespace maxmin {

Instance gen_gap_instance() {
    const int n = 6;
    std::vector<std::string> labels = {"j1", "j2", "j3", "k1", "k2", "k3"};
    std::vector<Value> values(size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int pop = __builtin_popcountll(mask);
        int in_first = __builtin_popcountll(mask & 0b000111);
        if (pop == 0)
            values[mask] = 0;
        else if (pop == 1)
            values[mask] = 2;
        else if (pop == 2)
            values[mask] = (in_first == 1) ? 3 : 4;
        else
            values[mask] = 4;
    }
    Instance inst(std::move(labels), 3, SetFunction::table(n, std::move(values)));
    CheckReport report = check_submodular_monotone(inst.valuation());
    if (!report.submodular || !report.monotone)
        throw VerificationError("gap instance failed the submodularity check");
    return inst;
}

namespace {

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;  // deterministic across platforms; bias immaterial here
}

Value random_weight(std::mt19937_64& rng, long bound) {
    long num = 1 + static_cast<long>(rng_below(rng, static_cast<std::uint64_t>(bound)));
    long den = 1 + static_cast<long>(rng_below(rng, std::min(bound, 3L)));
    return value_of(num, den);
}

}  // namespace

Instance gen_random(RandomKind kind, int n, int m, std::uint64_t seed, long weight_bound) {
    if (n < 1 || n > 24) throw UsageError("random instances support 1..24 items");
    if (m < 1) throw UsageError("need at least one player");
    if (weight_bound < 1) throw UsageError("weight bound must be positive");
    std::mt19937_64 rng(seed);

    if (kind == RandomKind::additive) {
        std::vector<Value> weights;
        weights.reserve(n);
        for (int j = 0; j < n; ++j) weights.push_back(random_weight(rng, weight_bound));
        return Instance(default_labels(n), m, SetFunction::additive(std::move(weights)));
    }

    int universe = 2 * n;
    std::vector<Value> element_weights;
    element_weights.reserve(universe);
    for (int e = 0; e < universe; ++e) element_weights.push_back(random_weight(rng, weight_bound));
    std::vector<std::vector<int>> covers(n);
    for (int j = 0; j < n; ++j) {
        int degree = 1 + static_cast<int>(rng_below(rng, std::min(universe, 4)));
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < degree)
            chosen.insert(static_cast<int>(rng_below(rng, universe)));
        covers[j].assign(chosen.begin(), chosen.end());
    }
    return Instance(default_labels(n), m,
                    SetFunction::coverage(std::move(element_weights), std::move(covers)));
}

namespace {

struct SylvesterLayout {
    int levels = 0;
    long m = 0;
    std::vector<Value> s;         // s_1 .. s_N as exact values
    Value delta;
    std::vector<int> group_first;  // start index of: big, mid, small_1.., small_N
    std::vector<int> group_size;
    std::vector<Value> group_weight;

    int big(int t) const { return group_first[0] + t; }
    int mid(int t) const { return group_first[1] + t; }
    int small(int level, int t) const { return group_first[1 + level] + t; }  // level in 1..N
};

SylvesterLayout sylvester_layout(int levels) {
    // Level 6 would already need 2*(s_6 - 1) = 6526884 players.
    if (levels < 1 || levels > 5)
        throw UsageError("the hard additive family supports 1..5 levels");
    SylvesterLayout lay;
    lay.levels = levels;
    mpz_class prod = 1;
    Value harmonic = 0;  // sum 1/(s_i - 1)
    Value sylvester_check = 0;
    for (int i = 1; i <= levels; ++i) {
        mpz_class si = prod + 1;
        prod *= si;
        lay.s.push_back(Value(mpq_class(si)));
        harmonic += Value(1) / (lay.s.back() - 1);
        if (i < levels) sylvester_check += Value(1) / lay.s.back();
    }
    // sum_{i<N} 1/s_i = 1 - 1/(s_N - 1), exactly.
    if (sylvester_check != Value(1) - Value(1) / (lay.s.back() - 1))
        throw VerificationError("Sylvester reciprocal identity failed");

    lay.delta = (Value(2) - harmonic) / (Value(4) + Value(3) * harmonic);
    Value m_value = Value(2) * (lay.s.back() - 1);
    lay.m = value_ceil_long(m_value);

    Value one_plus = Value(1) + Value(3) * lay.delta;
    std::vector<long> sizes;
    std::vector<Value> weights;
    sizes.push_back(lay.m / 2);
    weights.push_back(Value(2) + lay.delta);
    sizes.push_back(lay.m);
    weights.push_back((Value(3) - lay.delta) / 2);
    for (int i = 1; i <= levels; ++i) {
        long count = (i == levels) ? lay.m / 2 + 1 : lay.m / 2;
        sizes.push_back(count);
        weights.push_back(one_plus / (Value(2) * (lay.s[i - 1] - 1)));
    }
    int off = 0;
    for (size_t g = 0; g < sizes.size(); ++g) {
        lay.group_first.push_back(off);
        lay.group_size.push_back(static_cast<int>(sizes[g]));
        lay.group_weight.push_back(weights[g]);
        off += static_cast<int>(sizes[g]);
    }
    return lay;
}

}  // namespace

SylvesterFamily gen_sylvester_additive(int levels) {
    SylvesterLayout lay = sylvester_layout(levels);
    const int N = lay.levels;
    const long m = lay.m;

    std::vector<std::string> labels;
    std::vector<Value> weights;
    for (size_t g = 0; g < lay.group_first.size(); ++g) {
        std::string prefix = g == 0 ? "big" : g == 1 ? "mid" : "small" + std::to_string(g - 1) + "_";
        for (int t = 0; t < lay.group_size[g]; ++t) {
            labels.push_back(prefix + std::to_string(t));
            weights.push_back(lay.group_weight[g]);
        }
    }
    int n = static_cast<int>(labels.size());

    SylvesterFamily fam{
        Instance(std::move(labels), static_cast<int>(m), SetFunction::additive(std::move(weights))),
        TieBreakPolicy::lexicographic(n, static_cast<int>(m)),
        Value(0),
        Allocation::empty(n, static_cast<int>(m)),
        Allocation::empty(n, static_cast<int>(m)),
        0,
        lay.delta,
        Value(0),
        Value(3) - lay.delta,
        Value(0)};

    // Completion value of a mid-seeded player that absorbs s_i small-i
    // items; decreasing in i.
    auto completion = [&](int level) -> Value {
        return (Value(3) - lay.delta) / 2 + lay.s[level - 1] * lay.group_weight[1 + level];
    };
    fam.greedy_min = completion(N);
    fam.threshold = N >= 2 ? completion(N - 1) : Value((Value(7) + lay.delta) / 2);

    // Steered greedy outcome: big-seeded players pick up the leftover
    // mid items; mid-seeded players absorb small items level by level
    // until they cross the threshold; the last one takes every deepest
    // small item and stays below it.
    Allocation& greedy = fam.greedy_reference;
    for (long t = 0; t < m / 2; ++t) {
        greedy.bundles[t].set(lay.big(static_cast<int>(t)));
        greedy.bundles[t].set(lay.mid(static_cast<int>(m / 2 + t)));
    }
    long player = m / 2;
    for (long t = 0; t < m / 2; ++t) greedy.bundles[m / 2 + t].set(lay.mid(static_cast<int>(t)));
    for (int i = 1; i < N; ++i) {
        long si = value_ceil_long(lay.s[i - 1]);
        long groups = (m / 2) / si;
        int next = 0;
        for (long g = 0; g < groups; ++g) {
            for (long u = 0; u < si; ++u) greedy.bundles[player].set(lay.small(i, next++));
            ++player;
        }
        if (next != lay.group_size[1 + i])
            throw VerificationError("small-item group not fully consumed");
    }
    for (int t = 0; t < lay.group_size[1 + N]; ++t)
        greedy.bundles[player].set(lay.small(N, t));
    ++player;
    if (player != m) throw VerificationError("player accounting failed in the greedy reference");
    for (int p = 0; p < m; ++p) greedy.unallocated -= greedy.bundles[p];
    greedy.validate(n);

    // Partial reference: half the players pair up mid items, the other
    // half take a big item plus one small item of every level; the last
    // deepest small item stays unallocated.
    Allocation& partial = fam.partial_reference;
    for (long t = 0; t < m / 2; ++t) {
        partial.bundles[t].set(lay.mid(static_cast<int>(2 * t)));
        partial.bundles[t].set(lay.mid(static_cast<int>(2 * t + 1)));
        long p = m / 2 + t;
        partial.bundles[p].set(lay.big(static_cast<int>(t)));
        for (int i = 1; i <= N; ++i) partial.bundles[p].set(lay.small(i, static_cast<int>(t)));
    }
    fam.spare_item = lay.small(N, lay.group_size[1 + N] - 1);
    for (int p = 0; p < m; ++p) partial.unallocated -= partial.bundles[p];
    partial.validate(n);
    if (!partial.unallocated.test(fam.spare_item) || partial.unallocated.count() != 1)
        throw VerificationError("partial reference should leave exactly the spare item");

    const SetFunction& f = fam.instance.valuation();
    if (min_bundle_value(f, partial) != fam.partial_min)
        throw VerificationError("partial reference does not reach 3 - delta");
    if (min_bundle_value(f, greedy) != fam.greedy_min)
        throw VerificationError("greedy reference has the wrong minimum");

    // Limiting ratio report: (2 + S) / (4 + 3 S) with S taken deep into
    // the (fast-converging) sequence.
    {
        mpz_class prod = 1;
        Value s_inf = 0;
        for (int i = 1; i <= 8; ++i) {
            mpz_class si = prod + 1;
            prod *= si;
            s_inf += Value(1) / (Value(mpq_class(si)) - 1);
        }
        fam.ratio_limit = (Value(2) + s_inf) / (Value(4) + Value(3) * s_inf);
    }
    return fam;
}

LiftedFamily lift_to_submodular(const SylvesterFamily& base) {
    const Instance& binst = base.instance;
    const SetFunction& bf = binst.valuation();
    const int bn = binst.n();
    const long bm = binst.m();
    if (bm > 12) throw UsageError("the lift supports base families of 1..3 levels");

    // The base family must come with a partial allocation of minimum
    // 3 - delta sparing one positive item, and a steered greedy run that
    // allocates everything; both are re-checked mechanically.
    ItemSet empty(bn);
    Value spare_value = marginal(bf, base.spare_item, empty);
    if (!(spare_value > 0)) throw UsageError("lift needs a spare item of positive value");
    if (!base.partial_reference.unallocated.test(base.spare_item))
        throw UsageError("lift needs the spare item unallocated in the partial reference");
    if (min_bundle_value(bf, base.partial_reference) < Value(3) - base.delta)
        throw UsageError("lift needs the partial reference to reach 3 - delta");
    GreedyResult steered = greedy_with_threshold(binst, base.threshold, base.policy);
    if (steered.allocation.unallocated.count() != 0)
        throw UsageError("lift needs the steered greedy run to allocate every item");

    Value full_value = Value(2) + base.delta;
    long copies = value_ceil_long(Value(5) / spare_value);

    // Smallest weight in the base; the gadget step divides 2 + delta and
    // stays below it.
    Value min_weight = marginal(bf, 0, empty);
    for (int j = 1; j < bn; ++j) {
        Value w = marginal(bf, j, empty);
        if (w < min_weight) min_weight = w;
    }
    long pieces = value_ceil_long(full_value / min_weight);
    Value step = full_value / Value(pieces);
    if (step > min_weight) throw VerificationError("gadget step exceeds the smallest item");

    const long copy_players = copies * bm;
    const int additive_count = static_cast<int>(copies * bn);
    const int z_count = static_cast<int>(copy_players * pieces);
    const int n = additive_count + z_count + 1;
    const int zstar = n - 1;
    const int m = static_cast<int>(copy_players + 1);

    std::vector<std::string> labels;
    labels.reserve(n);
    std::vector<Value> weights;
    weights.reserve(additive_count);
    for (long c = 0; c < copies; ++c)
        for (int t = 0; t < bn; ++t) {
            labels.push_back("c" + std::to_string(c) + "_" + binst.label(t));
            weights.push_back(marginal(bf, t, empty));
        }
    for (long p = 0; p < copy_players; ++p)
        for (long i = 0; i < pieces; ++i)
            labels.push_back("z" + std::to_string(p) + "_" + std::to_string(i));
    labels.push_back("zstar");

    std::vector<Value> element_weights(pieces, step);
    std::vector<std::vector<int>> covers(z_count + 1);
    for (long p = 0; p < copy_players; ++p)
        for (long i = 0; i < pieces; ++i) covers[p * pieces + i] = {static_cast<int>(i)};
    covers[z_count].resize(pieces);
    for (long i = 0; i < pieces; ++i) covers[z_count][i] = static_cast<int>(i);

    SetFunction valuation = SetFunction::disjoint_sum(
        {SetFunction::additive(std::move(weights)),
         SetFunction::coverage(std::move(element_weights), std::move(covers))});

    // Player order: each copy's big-seeded half first, then the
    // mid-seeded halves, then the extra player dead last; with the
    // natural item order this pairs the big seeds, the mid seeds and the
    // saturating item exactly as the steering needs.
    std::vector<int> player_order;
    player_order.reserve(m);
    for (long p = 0; p < copy_players; ++p)
        if (p % bm < bm / 2) player_order.push_back(static_cast<int>(p));
    for (long p = 0; p < copy_players; ++p)
        if (p % bm >= bm / 2) player_order.push_back(static_cast<int>(p));
    player_order.push_back(m - 1);
    std::vector<int> item_order(n);
    std::iota(item_order.begin(), item_order.end(), 0);

    // With a single level the mid pair 2*(3-delta)/2 lands exactly on
    // 3 - delta, which derails the absorption counts; the base family's
    // own threshold steers correctly there.
    Value lift_threshold = bm > 2 ? Value(Value(3) - base.delta) : base.threshold;
    LiftedFamily fam{Instance(std::move(labels), m, std::move(valuation)),
                     TieBreakPolicy::by_permutation(std::move(item_order), std::move(player_order)),
                     std::move(lift_threshold),
                     Allocation::empty(n, m),
                     m - 1,
                     full_value,
                     base.delta,
                     full_value / 5,
                     static_cast<int>(copies)};

    // Reference allocation with every bundle at 5 or more: each copy
    // player keeps its partial-reference bundle plus its own private
    // gadget items; the extra player collects every copy of the spare
    // item and the saturating item.
    for (long c = 0; c < copies; ++c)
        for (long t = 0; t < bm; ++t) {
            long p = c * bm + t;
            base.partial_reference.bundles[t].for_each(
                [&](int j) { fam.b_star.bundles[p].set(static_cast<int>(c * bn + j)); });
            for (long i = 0; i < pieces; ++i)
                fam.b_star.bundles[p].set(static_cast<int>(additive_count + p * pieces + i));
        }
    for (long c = 0; c < copies; ++c)
        fam.b_star.bundles[m - 1].set(static_cast<int>(c * bn + base.spare_item));
    fam.b_star.bundles[m - 1].set(zstar);
    for (int p = 0; p < m; ++p) fam.b_star.unallocated -= fam.b_star.bundles[p];
    fam.b_star.validate(n);

    const SetFunction& f = fam.instance.valuation();
    for (long p = 0; p < copy_players; ++p)
        if (evaluate(f, fam.b_star.bundles[p]) != 5)
            throw VerificationError("lift reference bundle is not exactly 5");
    if (evaluate(f, fam.b_star.bundles[m - 1]) < 5)
        throw VerificationError("lift reference shortchanges the extra player");

    CheckReport probe = check_submodular_monotone(f, {.samples = 4000, .seed = 20240817});
    if (!probe.submodular || !probe.monotone)
        throw VerificationError("lifted valuation failed sampled submodularity");

    // The returned policy and threshold carry a steering claim; replay
    // the run and hold it to the exact outcome.
    GreedyResult run = greedy_with_threshold(fam.instance, fam.threshold, fam.policy);
    if (run.allocation.unallocated.count() != 0)
        throw VerificationError("lifted steering left items unallocated");
    if (evaluate(f, run.allocation.bundles[fam.special_player]) != fam.special_cap)
        throw VerificationError("lifted steering did not cap the extra player");
    if (min_bundle_value(f, run.allocation) != fam.special_cap)
        throw VerificationError("lifted steering missed the intended minimum");
    return fam;
}

}  // namespace maxmin
