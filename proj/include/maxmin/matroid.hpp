#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maxmin/itemset.hpp"

namespace maxmin {

struct UniformMatroid {
    int rank = 0;
};

struct PartitionMatroid {
    std::vector<ItemSet> blocks;  // pairwise disjoint; uncovered items are unconstrained
    std::vector<int> capacities;
};

// Independence family listed outright. Verified at construction: the
// exchange axiom when `matroid` is requested, downward closure always.
// The downward-closed-only variant is the escape hatch for set systems
// that are subset-closed but fail exchange; reports mark it non-matroid.
struct ExplicitFamily {
    int n = 0;
    std::vector<std::uint32_t> independent;  // sorted masks
    bool matroid = true;
};

class Matroid {
public:
    static Matroid uniform(int ground, int rank);
    static Matroid partition(int ground, std::vector<ItemSet> blocks, std::vector<int> capacities);
    static Matroid explicit_family(int ground, const std::vector<ItemSet>& independent_sets);
    static Matroid downward_closed(int ground, const std::vector<ItemSet>& sets);

    int ground_size() const { return ground_; }
    bool is_true_matroid() const;
    std::string kind() const;

    using Node = std::variant<UniformMatroid, PartitionMatroid, ExplicitFamily>;
    const Node& node() const { return node_; }

private:
    Matroid(Node node, int ground) : node_(std::move(node)), ground_(ground) {}
    Node node_;
    int ground_ = 0;
};

bool is_independent(const Matroid& m, const ItemSet& s);
// Conjunction over all matroids; vacuously true for an empty list.
bool is_common_independent(std::span<const Matroid> ms, const ItemSet& s);

// Restriction to the kept items, reindexed to 0..|keep|-1 in original
// order. Matroid restrictions stay matroids.
Matroid restrict_matroid(const Matroid& m, const ItemSet& keep);

}  // namespace maxmin
