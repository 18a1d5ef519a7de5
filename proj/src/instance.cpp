#include "maxmin/instance.hpp"

#include <unordered_set>

#include "maxmin/errors.hpp"

namespace maxmin {

Instance::Instance(std::vector<std::string> labels, int players, SetFunction valuation,
                   std::vector<Matroid> matroids, std::optional<int> cardinality_cap)
    : labels_(std::move(labels)),
      m_(players),
      valuation_(std::make_shared<const SetFunction>(std::move(valuation))),
      matroids_(std::move(matroids)),
      cardinality_cap_(cardinality_cap) {
    if (m_ < 1) throw UsageError("instance needs at least one player");
    if (valuation_->ground_size() != n())
        throw UsageError("valuation ground set does not match the item count");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw UsageError("item labels must be non-empty");
        if (!seen.insert(l).second) throw UsageError("duplicate item label: " + l);
    }
    for (const auto& mat : matroids_)
        if (mat.ground_size() != n()) throw UsageError("matroid over the wrong ground set");
    if (cardinality_cap_) {
        if (*cardinality_cap_ < 1 || *cardinality_cap_ > n())
            throw UsageError("cardinality cap must be in [1, n]");
    }
}

int Instance::item_by_label(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

}  // namespace maxmin
