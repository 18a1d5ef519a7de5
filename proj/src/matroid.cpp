#include "maxmin/matroid.hpp"

#include <algorithm>

#include "maxmin/errors.hpp"

namespace maxmin {

namespace {

std::vector<std::uint32_t> normalize_masks(int ground, const std::vector<ItemSet>& sets) {
    if (ground > 16) throw UsageError("explicit independence families support ground sets <= 16");
    std::vector<std::uint32_t> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) {
        if (s.universe() != ground) throw DomainError("independent set over the wrong ground set");
        masks.push_back(static_cast<std::uint32_t>(s.to_mask()));
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    return masks;
}

bool contains_mask(const std::vector<std::uint32_t>& masks, std::uint32_t m) {
    return std::binary_search(masks.begin(), masks.end(), m);
}

void check_downward_closed(const std::vector<std::uint32_t>& masks) {
    if (!contains_mask(masks, 0)) throw UsageError("the empty set must be independent");
    for (std::uint32_t m : masks) {
        std::uint32_t bits = m;
        while (bits) {
            std::uint32_t low = bits & (~bits + 1);
            if (!contains_mask(masks, m ^ low))
                throw UsageError("independence family is not downward closed");
            bits ^= low;
        }
    }
}

void check_exchange(const std::vector<std::uint32_t>& masks) {
    for (std::uint32_t a : masks) {
        int ca = __builtin_popcount(a);
        for (std::uint32_t b : masks) {
            if (ca >= __builtin_popcount(b)) continue;
            std::uint32_t candidates = b & ~a;
            bool extended = false;
            while (candidates && !extended) {
                std::uint32_t low = candidates & (~candidates + 1);
                if (contains_mask(masks, a | low)) extended = true;
                candidates ^= low;
            }
            if (!extended) throw UsageError("independence family violates the exchange property");
        }
    }
}

}  // namespace

Matroid Matroid::uniform(int ground, int rank) {
    if (ground < 0 || rank < 0) throw UsageError("uniform matroid needs ground, rank >= 0");
    return Matroid(UniformMatroid{rank}, ground);
}

Matroid Matroid::partition(int ground, std::vector<ItemSet> blocks, std::vector<int> capacities) {
    if (blocks.size() != capacities.size())
        throw UsageError("partition matroid needs one capacity per block");
    ItemSet seen(ground);
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].universe() != ground) throw DomainError("block over the wrong ground set");
        if (seen.intersects(blocks[i])) throw UsageError("partition blocks must be disjoint");
        if (capacities[i] < 0) throw UsageError("block capacity must be non-negative");
        seen |= blocks[i];
    }
    return Matroid(PartitionMatroid{std::move(blocks), std::move(capacities)}, ground);
}

Matroid Matroid::explicit_family(int ground, const std::vector<ItemSet>& independent_sets) {
    auto masks = normalize_masks(ground, independent_sets);
    check_downward_closed(masks);
    check_exchange(masks);
    return Matroid(ExplicitFamily{ground, std::move(masks), true}, ground);
}

Matroid Matroid::downward_closed(int ground, const std::vector<ItemSet>& sets) {
    auto masks = normalize_masks(ground, sets);
    check_downward_closed(masks);
    return Matroid(ExplicitFamily{ground, std::move(masks), false}, ground);
}

bool Matroid::is_true_matroid() const {
    if (const auto* ef = std::get_if<ExplicitFamily>(&node_)) return ef->matroid;
    return true;
}

std::string Matroid::kind() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, UniformMatroid>) return "uniform";
            else if constexpr (std::is_same_v<T, PartitionMatroid>) return "partition";
            else return m.matroid ? "explicit" : "downward_closed";
        },
        node_);
}

bool is_independent(const Matroid& m, const ItemSet& s) {
    if (s.universe() != m.ground_size()) throw DomainError("set over the wrong ground set");
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, UniformMatroid>) {
                return s.count() <= node.rank;
            } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
                for (size_t i = 0; i < node.blocks.size(); ++i)
                    if ((s & node.blocks[i]).count() > node.capacities[i]) return false;
                return true;
            } else {
                return contains_mask(node.independent, static_cast<std::uint32_t>(s.to_mask()));
            }
        },
        m.node());
}

bool is_common_independent(std::span<const Matroid> ms, const ItemSet& s) {
    for (const auto& m : ms)
        if (!is_independent(m, s)) return false;
    return true;
}

Matroid restrict_matroid(const Matroid& m, const ItemSet& keep) {
    if (keep.universe() != m.ground_size()) throw DomainError("keep set over the wrong ground set");
    std::vector<int> kept = keep.items();
    int ground = static_cast<int>(kept.size());
    return std::visit(
        [&](const auto& node) -> Matroid {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, UniformMatroid>) {
                return Matroid::uniform(ground, node.rank);
            } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
                std::vector<ItemSet> blocks;
                std::vector<int> caps;
                for (size_t b = 0; b < node.blocks.size(); ++b) {
                    ItemSet nb(ground);
                    for (int i = 0; i < ground; ++i)
                        if (node.blocks[b].test(kept[i])) nb.set(i);
                    blocks.push_back(std::move(nb));
                    caps.push_back(node.capacities[b]);
                }
                return Matroid::partition(ground, std::move(blocks), std::move(caps));
            } else {
                std::uint32_t keep_mask = static_cast<std::uint32_t>(keep.to_mask());
                std::vector<ItemSet> sets;
                for (std::uint32_t mask : node.independent) {
                    if (mask & ~keep_mask) continue;
                    ItemSet s(ground);
                    for (int i = 0; i < ground; ++i)
                        if ((mask >> kept[i]) & 1) s.set(i);
                    sets.push_back(std::move(s));
                }
                return node.matroid ? Matroid::explicit_family(ground, sets)
                                    : Matroid::downward_closed(ground, sets);
            }
        },
        m.node());
}

}  // namespace maxmin
