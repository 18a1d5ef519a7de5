#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "maxmin/instance.hpp"

namespace maxmin {

// Partial partition of the items: m pairwise-disjoint bundles plus the
// unallocated remainder; together they cover the ground set.
struct Allocation {
    std::vector<ItemSet> bundles;
    ItemSet unallocated;

    static Allocation empty(int n, int m);
    int players() const { return static_cast<int>(bundles.size()); }
    void validate(int n) const;  // throws on overlap / bad cover
};

Value min_bundle_value(const SetFunction& f, const Allocation& a);
// Lowest-indexed player attaining the minimum bundle value.
int min_player(const SetFunction& f, const Allocation& a);

// Deterministic total order on (item, player) pairs used wherever the
// greedy has a free choice. Lower rank wins; marginal value always
// dominates the rank comparison.
class TieBreakPolicy {
public:
    static TieBreakPolicy lexicographic(int items, int players);
    static TieBreakPolicy by_permutation(std::vector<int> item_order, std::vector<int> player_order);

    int items() const { return static_cast<int>(item_rank_.size()); }
    int players() const { return static_cast<int>(player_rank_.size()); }
    int item_rank(int item) const { return item_rank_.at(item); }
    int player_rank(int player) const { return player_rank_.at(player); }
    bool pair_before(int item_a, int player_a, int item_b, int player_b) const;

    // Induced policy on a sub-instance; index vectors map new -> old and
    // must be increasing.
    TieBreakPolicy restricted(const std::vector<int>& kept_items,
                              const std::vector<int>& kept_players) const;

    std::vector<int> item_order() const;    // items by increasing rank
    std::vector<int> player_order() const;  // players by increasing rank

private:
    TieBreakPolicy() = default;
    std::vector<int> item_rank_;
    std::vector<int> player_rank_;
};

struct GreedyStep {
    int item;
    int player;
    Value gain;  // marginal contribution at allocation time
};

struct GreedyTrace {
    Value threshold;
    std::vector<GreedyStep> seeding;
    std::vector<GreedyStep> steps;
};

struct GreedyResult {
    Allocation allocation;
    GreedyTrace trace;
};

// One run of the threshold greedy: seed every player with one of the m
// most valuable singletons, then repeatedly give the pair (item, player
// below the threshold) with the largest marginal contribution until no
// item or no eligible player remains. Requires a matroid-free instance;
// any cardinality cap on the instance is ignored (see
// greedy_cardinality). The lazy evaluation strategy used on large
// instances assumes the valuation is monotone submodular.
GreedyResult greedy_with_threshold(const Instance& inst, const Value& threshold,
                                   const TieBreakPolicy& policy);

// Same loop, but stops once the instance's cardinality cap many items
// are allocated (seeding included).
GreedyResult greedy_cardinality(const Instance& inst, const Value& threshold,
                                const TieBreakPolicy& policy);

// Re-executes the greedy and checks every recorded step is the policy
// argmax among eligible pairs; throws VerificationError on any mismatch.
// Full-scan, intended for desk-scale instances and tests.
void validate_greedy_result(const Instance& inst, const Value& threshold,
                            const TieBreakPolicy& policy, const GreedyResult& result,
                            std::optional<int> cardinality_cap = {});

struct PreprocessResult {
    // Instance without the big items and with one player fewer per
    // removed big item; absent when every player was consumed.
    std::optional<Instance> reduced;
    std::vector<int> item_map;                  // reduced item -> original item
    std::vector<int> player_map;                // reduced player -> original player
    std::vector<std::pair<int, int>> fixed;     // (original player, original item)
    std::vector<int> discarded;                 // big items beyond the player supply
};

// Removes every item whose singleton value reaches the threshold and
// parks each on a dedicated player (players permitting). Re-attaching
// the fixed pairs to any solution of the reduced instance solves the
// original. Threshold must be positive.
PreprocessResult preprocess_big_items(const Instance& inst, const Value& threshold);

struct ApproxResult {
    Allocation allocation;
    Value achieved_min;
    Value guessed_opt;  // the grid value T* whose threshold alpha*T* succeeded
    GreedyTrace trace;  // trace of the reduced-instance run, in original indices
    std::vector<std::pair<int, int>> fixed;  // big-item assignments
};

// Searches the threshold grid from above for the largest T such that
// preprocessing plus greedy at threshold alpha*T reaches alpha*T for
// every player, and returns that run. The grid is the exact set of
// subset values for small n, and an integer grid after clearing
// denominators otherwise.
ApproxResult solve_approx(const Instance& inst, const Value& alpha, const TieBreakPolicy& policy);

// Cardinality-capped variant of the same search; the instance must
// carry a cap k >= m.
ApproxResult solve_approx_cardinality(const Instance& inst, const Value& alpha,
                                      const TieBreakPolicy& policy);

}  // namespace maxmin
