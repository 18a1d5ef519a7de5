#pragma once

#include <cstdint>

#include "maxmin/greedy.hpp"
#include "maxmin/instance.hpp"

namespace maxmin {

// The 6-item, 3-player table instance whose LP threshold exceeds the
// integral optimum by a factor of 4/3: two groups of three items, value
// 2 alone, 4 for a same-group pair, 3 for a mixed pair, 4 beyond.
Instance gen_gap_instance();

enum class RandomKind { additive, coverage };

// Seeded, reproducible random instances. Coverage draws per-item
// element sets over a universe of size 2n, so the result is submodular
// by construction; weights are small positive rationals bounded by
// weight_bound.
Instance gen_random(RandomKind kind, int n, int m, std::uint64_t seed, long weight_bound = 10);

// Hard additive family for the threshold greedy, driven by the
// Sylvester sequence s_1 = 2, s_{k+1} = s_k^2 - s_k + 1. With
// m = 2(s_N - 1) players, the policy and threshold below steer the
// greedy into an allocation of minimum value greedy_min while a partial
// allocation reaching 3 - delta exists that leaves one small item
// unused.
struct SylvesterFamily {
    Instance instance;
    TieBreakPolicy policy;
    Value threshold;
    Allocation greedy_reference;   // the steered full greedy outcome
    Allocation partial_reference;  // min 3 - delta, one item spare
    int spare_item;
    Value delta;
    Value greedy_min;
    Value partial_min;
    Value ratio_limit;  // limiting greedy/optimal ratio of the lifted family
};

SylvesterFamily gen_sylvester_additive(int levels);

// Coverage-style lift of the additive family: many disjoint copies plus
// a saturating gadget that caps one extra player at 2 + delta while
// every player can reach 5, giving a measured greedy/optimal ratio of
// (2 + delta) / 5. The construction requires the base family's partial
// reference (minimum 3 - delta, one positive item spare) and a steered
// full greedy run, both re-checked here.
struct LiftedFamily {
    Instance instance;
    TieBreakPolicy policy;
    Value threshold;
    Allocation b_star;  // every bundle evaluates to at least 5
    int special_player;
    Value special_cap;  // 2 + delta
    Value delta;
    Value ratio;  // (2 + delta) / 5
    int copies;
};

LiftedFamily lift_to_submodular(const SylvesterFamily& base);

}  // namespace maxmin
