#pragma once

#include <vector>

#include "maxmin/value.hpp"

namespace maxmin {

struct SimplexResult {
    Value objective;
    std::vector<Value> primal;  // one per structural variable
    std::vector<Value> dual;    // one per constraint row
    long pivots = 0;
};

// Exact primal simplex for max c'z subject to Az <= b, z >= 0 with
// b >= 0, so the slack basis is feasible and no phase one is needed.
// Bland's rule on rational data: no cycling, guaranteed termination.
// Throws Error if the objective is unbounded.
SimplexResult solve_packing_lp(const std::vector<std::vector<Value>>& rows,
                               const std::vector<Value>& rhs, const std::vector<Value>& objective);

}  // namespace maxmin
