#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "maxmin/itemset.hpp"
#include "maxmin/value.hpp"

namespace maxmin {

class SetFunction;
using SetFunctionPtr = std::shared_ptr<const SetFunction>;

// Sum of per-item weights.
struct AdditiveFn {
    std::vector<Value> weights;
};

// Weight of the union of covered universe elements. Submodular and
// monotone by construction; the canonical random family.
struct CoverageFn {
    std::vector<Value> element_weights;
    std::vector<std::vector<int>> covers;      // item -> covered elements
    std::vector<std::vector<int>> covered_by;  // element -> covering items (derived)
};

// Explicit value for every subset of a small ground set, indexed by
// bitmask. Normalized so that values[0] == 0.
struct TableFn {
    int n = 0;
    std::vector<Value> values;
};

// min(cap, inner(S)).
struct TruncatedFn {
    SetFunctionPtr inner;
    Value cap;
};

// Inner function extended by one fresh item (index = inner ground size)
// that contributes a flat bonus to any set containing it.
struct AugmentedFn {
    SetFunctionPtr inner;
    Value bonus;
};

// Sum of component functions over consecutive, disjoint ground-set
// blocks.
struct DisjointSumFn {
    std::vector<SetFunctionPtr> parts;
    std::vector<int> offsets;  // offsets[i] = first global index of part i
};

class SetFunction {
public:
    using Node = std::variant<AdditiveFn, CoverageFn, TableFn, TruncatedFn, AugmentedFn, DisjointSumFn>;

    static SetFunction additive(std::vector<Value> weights);
    static SetFunction coverage(std::vector<Value> element_weights,
                                std::vector<std::vector<int>> covers);
    // values indexed by subset bitmask, size must be 1 << n. The stored
    // table is shifted so the empty set maps to zero; negative shifted
    // values are rejected.
    static SetFunction table(int n, std::vector<Value> values);
    static SetFunction truncated(SetFunction inner, Value cap);
    static SetFunction augmented(SetFunction inner, Value bonus);
    static SetFunction disjoint_sum(std::vector<SetFunction> parts);

    int ground_size() const { return n_; }
    const Node& node() const { return *node_; }

private:
    SetFunction(Node node, int n);

    std::shared_ptr<const Node> node_;
    int n_ = 0;
};

Value evaluate(const SetFunction& f, const ItemSet& s);
// f(S + j) - f(S); zero when j is already in S.
Value marginal(const SetFunction& f, int item, const ItemSet& s);
// f(S u T) - f(T).
Value marginal_set(const SetFunction& f, const ItemSet& s, const ItemSet& t);
// f(S) - f(S - j); j must be in S.
Value remove_marginal(const SetFunction& f, int item, const ItemSet& s);

// Restriction to the kept items, reindexed to 0..|keep|-1 in original
// order.
SetFunction restrict_to(const SetFunction& f, const ItemSet& keep);

struct CheckOptions {
    // Exhaustive verification above this ground size is refused unless a
    // sample count is given.
    int exhaustive_limit = 14;
    std::optional<long> samples;
    std::uint64_t seed = 0;
};

struct SubmodularityWitness {
    int item;
    ItemSet smaller;
    ItemSet larger;
};

struct CheckReport {
    bool submodular = true;
    bool monotone = true;
    bool exhaustive = true;
    long samples_checked = 0;
    std::optional<SubmodularityWitness> witness;           // diminishing-returns violation
    std::optional<std::pair<int, ItemSet>> mono_witness;   // marginal < 0
};

// Verifies the diminishing-returns characterization (and monotonicity)
// either exhaustively or on seeded samples.
CheckReport check_submodular_monotone(const SetFunction& f, const CheckOptions& opts = {});

}  // namespace maxmin
