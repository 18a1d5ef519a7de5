#pragma once

#include "maxmin/greedy.hpp"
#include "maxmin/instance.hpp"

namespace maxmin {

inline constexpr long long kDefaultBudget = 100'000'000;

struct ExactOptions {
    long long budget = kDefaultBudget;  // enumeration nodes before giving up
};

struct OptResult {
    Value value;
    Allocation allocation;
    long long nodes = 0;
};

// Exact max-min optimum by branch-and-bound over player-assignment
// vectors, with identical-valuation symmetry pruning. Honors matroids
// (bundles must be common-independent; items may stay unallocated) and
// the cardinality cap when present. Ties go to the first optimum in
// canonical DFS order (items by index, players 0..p then unallocated).
OptResult opt_maxmin(const Instance& inst, const ExactOptions& opts = {});

struct TruncatedSumResult {
    Allocation allocation;
    Value total;
    long long nodes = 0;
};

// Allocation maximizing sum_p min(cap, f(A_p)). Full allocations
// without matroids; partial common-independent allocations with them.
TruncatedSumResult opt_truncated_maxsum(const Instance& inst, const Value& cap,
                                        const ExactOptions& opts = {});

// Every configuration C with f(C) >= T (or > T when strict), filtered
// to common-independent sets when the instance has matroids, in
// ascending bitmask order.
std::vector<ItemSet> enumerate_configurations(const Instance& inst, const Value& threshold,
                                              bool strict, const ExactOptions& opts = {});

}  // namespace maxmin
