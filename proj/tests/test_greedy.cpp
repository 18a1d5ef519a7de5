#include <doctest.h>

#include "maxmin/errors.hpp"
#include "maxmin/exact.hpp"
#include "maxmin/generators.hpp"
#include "maxmin/greedy.hpp"

using namespace maxmin;

namespace {

Instance additive_instance(std::vector<long> weights, int m,
                           std::optional<int> cap = std::nullopt) {
    std::vector<Value> w;
    for (long x : weights) w.push_back(Value(x));
    return Instance(default_labels(static_cast<int>(weights.size())), m,
                    SetFunction::additive(std::move(w)), {}, cap);
}

}  // namespace

TEST_CASE("threshold greedy seeds the largest items and stops at the threshold") {
    Instance inst = additive_instance({3, 3, 2, 2, 2}, 2);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 2);
    GreedyResult res = greedy_with_threshold(inst, value_of(12, 5), lex);
    CHECK(res.allocation.bundles[0] == ItemSet::from_mask(0b00001, 5));
    CHECK(res.allocation.bundles[1] == ItemSet::from_mask(0b00010, 5));
    CHECK(res.allocation.unallocated.count() == 3);
    CHECK(min_bundle_value(inst.valuation(), res.allocation) == 3);
    CHECK(res.trace.steps.empty());
    validate_greedy_result(inst, value_of(12, 5), lex, res);
}

TEST_CASE("threshold zero is seeding only") {
    Instance inst = additive_instance({5, 4, 3, 2, 1}, 3);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 3);
    GreedyResult res = greedy_with_threshold(inst, Value(0), lex);
    CHECK(res.trace.steps.empty());
    CHECK(res.trace.seeding.size() == 3);
    // minimum is the m-th largest singleton
    CHECK(min_bundle_value(inst.valuation(), res.allocation) == 3);
}

TEST_CASE("fewer items than players leaves players empty") {
    Instance inst = additive_instance({5, 4}, 3);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(2, 3);
    GreedyResult res = greedy_with_threshold(inst, Value(1), lex);
    CHECK(res.allocation.bundles[2].empty());
    CHECK(min_bundle_value(inst.valuation(), res.allocation) == 0);
}

TEST_CASE("greedy rejects matroid instances") {
    Instance inst(default_labels(2), 2, SetFunction::additive({Value(1), Value(1)}),
                  {Matroid::uniform(2, 1)});
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(2, 2);
    CHECK_THROWS_AS(greedy_with_threshold(inst, Value(1), lex), UnsupportedError);
}

TEST_CASE("bad inputs are rejected up front") {
    Instance inst = additive_instance({1, 1}, 2);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(2, 2);
    CHECK_THROWS_AS(greedy_with_threshold(inst, Value(-1), lex), UsageError);
    CHECK_THROWS_AS(greedy_with_threshold(inst, Value(1), TieBreakPolicy::lexicographic(3, 2)),
                    UsageError);
    CHECK_THROWS_AS(greedy_cardinality(inst, Value(1), lex), UsageError);
    CHECK_THROWS_AS(TieBreakPolicy::by_permutation({0, 0}, {0, 1}), UsageError);
    CHECK_THROWS_AS(Instance(default_labels(2), 0, SetFunction::additive({Value(1), Value(1)})),
                    UsageError);
    CHECK_THROWS_AS(Instance({"a", "a"}, 1, SetFunction::additive({Value(1), Value(1)})),
                    UsageError);
    CHECK_THROWS_AS(Instance(default_labels(2), 1, SetFunction::additive({Value(1)})), UsageError);
    CHECK_THROWS_AS(Instance(default_labels(2), 1, SetFunction::additive({Value(1), Value(1)}), {}, 3),
                    UsageError);
}

TEST_CASE("trace records policy argmax steps and replays exactly") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Instance inst = gen_random(seed % 2 ? RandomKind::coverage : RandomKind::additive, 7, 3, seed);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(7, 3);
        Value tau = value_of(3, 2);
        GreedyResult res = greedy_with_threshold(inst, tau, lex);
        validate_greedy_result(inst, tau, lex, res);
        res.allocation.validate(inst.n());
    }
}

TEST_CASE("per-player gains never increase along a run") {
    for (std::uint64_t seed = 50; seed <= 65; ++seed) {
        Instance inst = gen_random(RandomKind::coverage, 8, 3, seed);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(8, 3);
        GreedyResult res = greedy_with_threshold(inst, Value(3), lex);
        std::vector<std::optional<Value>> last(inst.m());
        for (const auto& s : res.trace.seeding) last[s.player] = s.gain;
        for (const auto& s : res.trace.steps) {
            if (last[s.player]) CHECK(s.gain <= *last[s.player]);
            last[s.player] = s.gain;
        }
    }
}

TEST_CASE("permutation policies steer ties") {
    Instance inst = additive_instance({1, 1}, 2);
    TieBreakPolicy swapped = TieBreakPolicy::by_permutation({1, 0}, {1, 0});
    GreedyResult res = greedy_with_threshold(inst, Value(0), swapped);
    // item 1 is the top seed under the swapped order and goes to player 1
    CHECK(res.allocation.bundles[1].test(1));
    CHECK(res.allocation.bundles[0].test(0));
}

TEST_CASE("lazy and naive strategies agree beyond the scan cutoff") {
    std::vector<SetFunction> parts;
    for (int i = 0; i < 5; ++i)
        parts.push_back(gen_random(RandomKind::coverage, 16, 1, 100 + i).valuation());
    Instance big(default_labels(80), 60, SetFunction::disjoint_sum(std::move(parts)));
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(80, 60);
    Value tau = value_of(5, 2);
    GreedyResult res = greedy_with_threshold(big, tau, lex);
    validate_greedy_result(big, tau, lex, res);
}

TEST_CASE("big-item preprocessing strips and reattaches") {
    SUBCASE("no big items") {
        Instance inst = additive_instance({1, 1, 1}, 2);
        PreprocessResult pre = preprocess_big_items(inst, Value(2));
        CHECK(pre.fixed.empty());
        CHECK(pre.reduced->n() == 3);
        CHECK(pre.reduced->m() == 2);
    }
    SUBCASE("one big item retires one player") {
        Instance inst = additive_instance({5, 1, 1}, 2);
        PreprocessResult pre = preprocess_big_items(inst, Value(2));
        REQUIRE(pre.fixed.size() == 1);
        CHECK(pre.fixed[0] == std::pair<int, int>{0, 0});
        REQUIRE(pre.reduced.has_value());
        CHECK(pre.reduced->m() == 1);
        CHECK(pre.reduced->n() == 2);
        CHECK(evaluate(pre.reduced->valuation(), ItemSet::full(2)) == 2);
    }
    SUBCASE("more big items than players discards the surplus") {
        Instance inst = additive_instance({5, 5, 5}, 2);
        PreprocessResult pre = preprocess_big_items(inst, Value(2));
        CHECK(pre.fixed.size() == 2);
        CHECK(!pre.reduced.has_value());
        CHECK(pre.discarded.size() == 1);
    }
    SUBCASE("threshold must be positive") {
        Instance inst = additive_instance({1}, 1);
        CHECK_THROWS_AS(preprocess_big_items(inst, Value(0)), UsageError);
    }
}

TEST_CASE("threshold search returns the first grid success from above") {
    Instance inst = additive_instance({3, 3, 2, 2, 2}, 2);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 2);
    ApproxResult res = solve_approx(inst, value_of(2, 5), lex);
    // At the top grid value T = 12 the run already reaches 5 >= 24/5.
    CHECK(res.guessed_opt == 12);
    CHECK(res.achieved_min == 5);
    CHECK(res.achieved_min >= value_of(12, 5));
    res.allocation.validate(5);
}

TEST_CASE("single player absorbs until the threshold is reached") {
    Instance inst = additive_instance({3, 3, 2, 2, 2}, 1);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 1);
    ApproxResult res = solve_approx(inst, Value(1), lex);
    CHECK(res.achieved_min == 12);
    CHECK(res.guessed_opt == 12);
}

TEST_CASE("fewer items than players gives zero") {
    Instance inst = additive_instance({4, 4}, 3);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(2, 3);
    ApproxResult res = solve_approx(inst, value_of(2, 5), lex);
    CHECK(res.achieved_min == 0);
    CHECK(res.guessed_opt == 0);
}

TEST_CASE("alpha is validated") {
    Instance inst = additive_instance({1}, 1);
    TieBreakPolicy lex = TieBreakPolicy::lexicographic(1, 1);
    CHECK_THROWS_AS(solve_approx(inst, Value(0), lex), UsageError);
    CHECK_THROWS_AS(solve_approx(inst, Value(2), lex), UsageError);
}

TEST_CASE("approximation guarantee holds across a seeded batch") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomKind kind = seed % 2 ? RandomKind::coverage : RandomKind::additive;
        int n = 4 + static_cast<int>(seed % 5);
        int m = 2 + static_cast<int>(seed % 3);
        Instance inst = gen_random(kind, n, m, seed);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(n, m);
        ApproxResult res = solve_approx(inst, value_of(2, 5), lex);
        OptResult opt = opt_maxmin(inst);
        CHECK(res.achieved_min >= value_of(2, 5) * opt.value);
    }
}

TEST_CASE("cardinality greedy stops at the cap") {
    SUBCASE("cap equal to n changes nothing") {
        Instance capped = additive_instance({3, 3, 2, 2, 2}, 2, 5);
        Instance plain = additive_instance({3, 3, 2, 2, 2}, 2);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 2);
        GreedyResult a = greedy_cardinality(capped, Value(4), lex);
        GreedyResult b = greedy_with_threshold(plain, Value(4), lex);
        for (int p = 0; p < 2; ++p) CHECK(a.allocation.bundles[p] == b.allocation.bundles[p]);
    }
    SUBCASE("cap equal to m is exactly the seeding") {
        Instance capped = additive_instance({3, 3, 2, 2, 2}, 2, 2);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(5, 2);
        GreedyResult res = greedy_cardinality(capped, Value(1), lex);
        CHECK(res.trace.steps.empty());
        CHECK(res.allocation.bundles[0] == ItemSet::from_mask(0b00001, 5));
        CHECK(res.allocation.bundles[1] == ItemSet::from_mask(0b00010, 5));
    }
    SUBCASE("cap below m seeds only cap players") {
        Instance capped = additive_instance({3, 3, 2}, 3, 2);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(3, 3);
        GreedyResult res = greedy_cardinality(capped, Value(1), lex);
        CHECK(res.allocation.bundles[2].empty());
        int allocated = 0;
        for (const auto& b : res.allocation.bundles) allocated += b.count();
        CHECK(allocated == 2);
    }
}

TEST_CASE("capped search meets the one-third bound on a seeded batch") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomKind kind = seed % 2 ? RandomKind::coverage : RandomKind::additive;
        int n = 4 + static_cast<int>(seed % 4);
        int m = 2 + static_cast<int>(seed % 2);
        int cap = m + static_cast<int>(seed % (n - m + 1));
        Instance base = gen_random(kind, n, m, seed);
        Instance inst(base.labels(), m, base.valuation(), {}, cap);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(n, m);
        ApproxResult res = solve_approx_cardinality(inst, value_of(1, 3), lex);
        OptResult opt = opt_maxmin(inst);
        CHECK(res.achieved_min >= value_of(1, 3) * opt.value);
        int used = 0;
        for (const auto& b : res.allocation.bundles) used += b.count();
        CHECK(used <= cap);
    }
}

TEST_CASE("run-level inequalities from the analysis hold against the exact optimum") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomKind kind = seed % 2 ? RandomKind::coverage : RandomKind::additive;
        int n = 4 + static_cast<int>(seed % 5);
        int m = 2 + static_cast<int>(seed % 3);
        if (n < m) continue;
        Instance inst = gen_random(kind, n, m, seed);
        TieBreakPolicy lex = TieBreakPolicy::lexicographic(n, m);
        OptResult opt = opt_maxmin(inst);
        Value tau = value_of(2, 5) * opt.value;
        if (tau == 0) continue;

        PreprocessResult pre = preprocess_big_items(inst, tau);
        if (!pre.reduced || pre.reduced->n() < pre.reduced->m()) continue;
        const Instance& red = *pre.reduced;
        TieBreakPolicy rlex = lex.restricted(pre.item_map, pre.player_map);
        GreedyResult run = greedy_with_threshold(red, tau, rlex);
        const SetFunction& f = red.valuation();

        // One below-threshold step can overshoot by at most the largest
        // singleton.
        Value max_single = 0;
        ItemSet empty(red.n());
        for (int j = 0; j < red.n(); ++j) {
            Value v = marginal(f, j, empty);
            if (v > max_single) max_single = v;
        }
        for (int p = 0; p < red.m(); ++p)
            CHECK(evaluate(f, run.allocation.bundles[p]) <= tau + max_single);

        OptResult red_opt = opt_maxmin(red);
        int q = min_player(f, run.allocation);
        Value fq = evaluate(f, run.allocation.bundles[q]);
        if (!(fq < tau)) continue;
        // The optimal items' marginals against the min bundle are paid
        // for by the other players' bundle values.
        Value lhs = 0;
        for (int j = 0; j < red.n(); ++j) lhs += marginal(f, j, run.allocation.bundles[q]);
        Value rhs = 0;
        for (int p = 0; p < red.m(); ++p)
            if (p != q) rhs += evaluate(f, run.allocation.bundles[p]);
        CHECK(lhs <= rhs);
        // And the optimum stays under the min bundle plus the average.
        Value avg = 0;
        for (int p = 0; p < red.m(); ++p) avg += evaluate(f, run.allocation.bundles[p]);
        avg /= red.m();
        CHECK(red_opt.value < fq + avg);
    }
}
