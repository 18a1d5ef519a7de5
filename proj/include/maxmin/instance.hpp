#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxmin/matroid.hpp"
#include "maxmin/setfunction.hpp"

namespace maxmin {

// One max-min allocation problem: items with labels, a player count, a
// shared valuation, and optional matroid / global-cardinality
// constraints. Immutable after construction; safe to share across
// threads.
class Instance {
public:
    Instance(std::vector<std::string> labels, int players, SetFunction valuation,
             std::vector<Matroid> matroids = {}, std::optional<int> cardinality_cap = {});

    int n() const { return static_cast<int>(labels_.size()); }
    int m() const { return m_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int item) const { return labels_.at(item); }
    int item_by_label(const std::string& label) const;  // -1 when absent
    const SetFunction& valuation() const { return *valuation_; }
    const std::vector<Matroid>& matroids() const { return matroids_; }
    bool has_matroids() const { return !matroids_.empty(); }
    std::optional<int> cardinality_cap() const { return cardinality_cap_; }

    ItemSet all_items() const { return ItemSet::full(n()); }

private:
    std::vector<std::string> labels_;
    int m_ = 0;
    std::shared_ptr<const SetFunction> valuation_;
    std::vector<Matroid> matroids_;
    std::optional<int> cardinality_cap_;
};

// Convenience labels "x0", "x1", ...
std::vector<std::string> default_labels(int n);

}  // namespace maxmin
