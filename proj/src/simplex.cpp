#include "maxmin/simplex.hpp"

#include "maxmin/errors.hpp"

namespace maxmin {

SimplexResult solve_packing_lp(const std::vector<std::vector<Value>>& rows,
                               const std::vector<Value>& rhs,
                               const std::vector<Value>& objective) {
    const size_t m = rows.size();
    const size_t k = objective.size();
    if (rhs.size() != m) throw UsageError("simplex: rhs size mismatch");
    for (const auto& row : rows)
        if (row.size() != k) throw UsageError("simplex: row size mismatch");
    for (const auto& b : rhs)
        if (b < 0) throw UsageError("simplex: negative rhs breaks the slack start");

    // Tableau columns: structural 0..k-1, slacks k..k+m-1, then rhs.
    const size_t cols = k + m;
    std::vector<std::vector<Value>> tab(m, std::vector<Value>(cols + 1, Value(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < k; ++j) tab[i][j] = rows[i][j];
        tab[i][k + i] = 1;
        tab[i][cols] = rhs[i];
    }
    // Reduced-cost row for min(-c'z); value cell accumulates c'z.
    std::vector<Value> cost(cols + 1, Value(0));
    for (size_t j = 0; j < k; ++j) cost[j] = -objective[j];

    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = k + i;

    SimplexResult result;
    while (true) {
        size_t enter = cols;
        for (size_t j = 0; j < cols; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;  // Bland: smallest variable index
            }
        }
        if (enter == cols) break;

        size_t leave = m;
        Value best_ratio;
        for (size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Value ratio = tab[i][cols] / tab[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw Error("simplex: unbounded objective");

        Value pivot = tab[leave][enter];
        for (auto& cell : tab[leave]) cell /= pivot;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            if (tab[i][enter] == 0) continue;
            Value factor = tab[i][enter];
            for (size_t j = 0; j <= cols; ++j) tab[i][j] -= factor * tab[leave][j];
        }
        if (cost[enter] != 0) {
            Value factor = cost[enter];
            for (size_t j = 0; j <= cols; ++j) cost[j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
        ++result.pivots;
    }

    result.objective = cost[cols];  // accumulated c'z under the min(-c'z) convention
    result.primal.assign(k, Value(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < k) result.primal[basis[i]] = tab[i][cols];
    result.dual.assign(m, Value(0));
    for (size_t i = 0; i < m; ++i) result.dual[i] = cost[k + i];
    return result;
}

}  // namespace maxmin
