#include <doctest.h>

#include <random>

#include "maxmin/errors.hpp"
#include "maxmin/generators.hpp"
#include "maxmin/setfunction.hpp"

using namespace maxmin;

namespace {

ItemSet set_of(std::initializer_list<int> items, int n) {
    ItemSet s(n);
    for (int i : items) s.set(i);
    return s;
}

}  // namespace

TEST_CASE("additive evaluation and marginals") {
    SetFunction f = SetFunction::additive({Value(2), Value(3)});
    CHECK(evaluate(f, set_of({0, 1}, 2)) == 5);
    CHECK(evaluate(f, ItemSet(2)) == 0);
    CHECK(marginal(f, 1, set_of({0}, 2)) == 3);
    CHECK(marginal(f, 0, set_of({0}, 2)) == 0);
    CHECK(remove_marginal(f, 0, set_of({0, 1}, 2)) == 2);
    CHECK_THROWS_AS(remove_marginal(f, 1, set_of({0}, 2)), DomainError);
    CHECK_THROWS_AS(evaluate(f, ItemSet(3)), DomainError);
    CHECK_THROWS_AS(SetFunction::additive({Value(-1)}), UsageError);
}

TEST_CASE("coverage counts the union once") {
    SetFunction f = SetFunction::coverage({Value(1), Value(1)}, {{0, 1}, {1}});
    CHECK(evaluate(f, set_of({0, 1}, 2)) == 2);
    CHECK(evaluate(f, set_of({1}, 2)) == 1);
    CHECK(marginal(f, 0, set_of({1}, 2)) == 1);
    CHECK(marginal(f, 1, set_of({0}, 2)) == 0);
}

TEST_CASE("the six-item gap table matches its defining values") {
    Instance inst = gen_gap_instance();
    const SetFunction& f = inst.valuation();
    int j1 = 0, j2 = 1, k2 = 4;
    CHECK(evaluate(f, set_of({j1, k2}, 6)) == 3);
    CHECK(evaluate(f, set_of({j1, j2}, 6)) == 4);
    CHECK(evaluate(f, ItemSet::full(6)) == 4);
    CHECK(marginal(f, k2, set_of({j1}, 6)) == 1);
    CHECK(marginal_set(f, set_of({j1, j2}, 6), ItemSet(6)) == 4);
    CHECK(remove_marginal(f, j1, set_of({j1, j2}, 6)) == 2);
}

TEST_CASE("marginal_set telescopes along any insertion order") {
    Instance inst = gen_random(RandomKind::coverage, 6, 1, 42);
    const SetFunction& f = inst.valuation();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint64_t smask = rng() & 63, tmask = rng() & 63;
        ItemSet s = ItemSet::from_mask(smask, 6);
        ItemSet t = ItemSet::from_mask(tmask, 6);
        Value direct = marginal_set(f, s, t);
        // telescoped in index order
        Value sum = 0;
        ItemSet acc = t;
        s.for_each([&](int j) {
            sum += marginal(f, j, acc);
            acc.set(j);
        });
        CHECK(direct == sum);
        if (s.is_subset_of(t)) CHECK(direct == 0);
    }
}

TEST_CASE("every variant vanishes on the empty set and stays monotone") {
    std::vector<SetFunction> fns;
    fns.push_back(SetFunction::additive({Value(1), value_of(1, 2), Value(0)}));
    fns.push_back(gen_random(RandomKind::coverage, 5, 1, 7).valuation());
    fns.push_back(gen_gap_instance().valuation());
    fns.push_back(SetFunction::truncated(gen_random(RandomKind::coverage, 5, 1, 8).valuation(),
                                         value_of(3, 2)));
    fns.push_back(SetFunction::augmented(SetFunction::additive({Value(2), Value(1)}), value_of(5, 3)));
    fns.push_back(SetFunction::disjoint_sum(
        {SetFunction::additive({Value(1)}), gen_random(RandomKind::coverage, 4, 1, 9).valuation()}));
    for (const auto& f : fns) {
        CHECK(evaluate(f, ItemSet(f.ground_size())) == 0);
        int n = f.ground_size();
        REQUIRE(n <= 8);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            ItemSet s = ItemSet::from_mask(mask, n);
            for (int j = 0; j < n; ++j) CHECK(marginal(f, j, s) >= 0);
        }
    }
}

TEST_CASE("truncation caps every subset") {
    SetFunction inner = gen_random(RandomKind::coverage, 5, 1, 11).valuation();
    Value cap = value_of(3, 2);
    SetFunction f = SetFunction::truncated(inner, cap);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        ItemSet s = ItemSet::from_mask(mask, 5);
        Value raw = evaluate(inner, s);
        CHECK(evaluate(f, s) == (raw > cap ? cap : raw));
    }
}

TEST_CASE("augmentation adds a flat bonus and keeps other marginals") {
    SetFunction inner = gen_random(RandomKind::coverage, 5, 1, 13).valuation();
    Value bonus = value_of(7, 4);
    SetFunction f = SetFunction::augmented(inner, bonus);
    int z = 5;
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        ItemSet s = ItemSet::from_mask(mask, 6);  // never contains z
        CHECK(marginal(f, z, s) == bonus);
        CHECK(evaluate(f, s.with(z)) == evaluate(f, s) + bonus);
        for (int j = 0; j < 5; ++j)
            CHECK(marginal(f, j, s) == marginal(f, j, s.with(z)));
    }
    CheckReport report = check_submodular_monotone(f);
    CHECK(report.submodular);
    CHECK(report.monotone);
}

TEST_CASE("disjoint sums evaluate per block") {
    SetFunction left = SetFunction::additive({Value(1), Value(2)});
    SetFunction right = SetFunction::coverage({Value(5)}, {{0}, {0}});
    SetFunction f = SetFunction::disjoint_sum({left, right});
    REQUIRE(f.ground_size() == 4);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        ItemSet s = ItemSet::from_mask(mask, 4);
        Value expect = evaluate(left, s.slice(0, 2)) + evaluate(right, s.slice(2, 4));
        CHECK(evaluate(f, s) == expect);
    }
    CheckReport report = check_submodular_monotone(f);
    CHECK(report.submodular);
    CHECK(report.monotone);
}

TEST_CASE("the checker certifies the gap instance and finds supermodular tables") {
    CheckReport good = check_submodular_monotone(gen_gap_instance().valuation());
    CHECK(good.submodular);
    CHECK(good.monotone);
    CHECK(good.exhaustive);

    SetFunction bad = SetFunction::table(2, {Value(0), Value(0), Value(0), Value(1)});
    CheckReport report = check_submodular_monotone(bad);
    CHECK(!report.submodular);
    CHECK(report.monotone);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->item == 1);
    CHECK(report.witness->smaller == ItemSet(2));
    CHECK(report.witness->larger == set_of({0}, 2));
}

TEST_CASE("sampled mode is seeded and required for large ground sets") {
    SetFunction big = SetFunction::additive(std::vector<Value>(40, Value(1)));
    CHECK_THROWS_AS(check_submodular_monotone(big), UsageError);
    CheckOptions opts;
    opts.samples = 200;
    opts.seed = 5;
    CheckReport a = check_submodular_monotone(big, opts);
    CheckReport b = check_submodular_monotone(big, opts);
    CHECK(a.submodular);
    CHECK(a.monotone);
    CHECK(!a.exhaustive);
    CHECK(a.samples_checked == b.samples_checked);
}

TEST_CASE("table constructor normalizes the empty set and rejects negatives") {
    SetFunction shifted = SetFunction::table(1, {Value(2), Value(5)});
    CHECK(evaluate(shifted, ItemSet(1)) == 0);
    CHECK(evaluate(shifted, set_of({0}, 1)) == 3);
    CHECK_THROWS_AS(SetFunction::table(1, {Value(2), Value(1)}), UsageError);
    CHECK_THROWS_AS(SetFunction::table(2, {Value(0)}), UsageError);
}

TEST_CASE("restriction agrees with the original on embedded subsets") {
    Instance inst = gen_random(RandomKind::coverage, 6, 1, 17);
    const SetFunction& f = inst.valuation();
    ItemSet keep = ItemSet::from_mask(0b110101, 6);
    SetFunction g = restrict_to(f, keep);
    std::vector<int> kept = keep.items();
    REQUIRE(g.ground_size() == 4);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        ItemSet small = ItemSet::from_mask(mask, 4);
        ItemSet embedded(6);
        small.for_each([&](int j) { embedded.set(kept[j]); });
        CHECK(evaluate(g, small) == evaluate(f, embedded));
    }
}
