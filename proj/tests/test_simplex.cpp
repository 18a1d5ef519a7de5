#include <doctest.h>

#include <random>

#include "maxmin/configlp.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/simplex.hpp"

using namespace maxmin;

namespace {

// Covering optimum by vertex enumeration: intersect every choice of n
// linearly independent tight constraints (covering rows plus axes),
// keep the feasible points, take the best objective. Independent of the
// simplex path.
std::optional<Value> covering_by_vertices(const std::vector<ItemSet>& configs, int n) {
    std::vector<std::vector<Value>> rows;  // a'y >= 1 rows then axes y_i >= 0
    std::vector<Value> rhs;
    for (const auto& c : configs) {
        std::vector<Value> row(n, Value(0));
        c.for_each([&](int j) { row[j] = 1; });
        rows.push_back(std::move(row));
        rhs.push_back(Value(1));
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Value> row(n, Value(0));
        row[i] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(Value(0));
    }

    std::optional<Value> best;
    int total = static_cast<int>(rows.size());
    std::vector<int> pick(n);
    auto try_system = [&](const std::vector<int>& idx) {
        // Solve rows[idx] y = rhs[idx] by Gaussian elimination.
        std::vector<std::vector<Value>> a(n, std::vector<Value>(n + 1));
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) a[r][c] = rows[idx[r]][c];
            a[r][n] = rhs[idx[r]];
        }
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (a[r][col] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return;  // singular
            std::swap(a[col], a[pivot]);
            Value lead = a[col][col];
            for (int c = col; c <= n; ++c) a[col][c] /= lead;
            for (int r = 0; r < n; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Value factor = a[r][col];
                for (int c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
            }
        }
        std::vector<Value> y(n);
        for (int r = 0; r < n; ++r) y[r] = a[r][n];
        for (const auto& v : y)
            if (v < 0) return;
        for (const auto& c : configs) {
            Value s = 0;
            c.for_each([&](int j) { s += y[j]; });
            if (s < 1) return;
        }
        Value obj = 0;
        for (const auto& v : y) obj += v;
        if (!best || obj < *best) best = obj;
    };
    // enumerate n-subsets of constraints
    std::vector<int> idx(n);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == n) {
            try_system(idx);
            return;
        }
        for (int i = start; i < total; ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

ItemSet set_of(std::initializer_list<int> items, int n) {
    ItemSet s(n);
    for (int i : items) s.set(i);
    return s;
}

}  // namespace

TEST_CASE("packing solver on a tiny box") {
    std::vector<std::vector<Value>> rows = {{Value(1), Value(0)}, {Value(0), Value(1)}};
    SimplexResult res = solve_packing_lp(rows, {Value(1), Value(1)}, {Value(1), Value(1)});
    CHECK(res.objective == 2);
    CHECK(res.primal[0] == 1);
    CHECK(res.primal[1] == 1);
    CHECK(res.dual[0] == 1);
    CHECK(res.dual[1] == 1);
}

TEST_CASE("unbounded packing throws") {
    std::vector<std::vector<Value>> rows = {{Value(0)}};
    CHECK_THROWS_AS(solve_packing_lp(rows, {Value(1)}, {Value(1)}), Error);
}

TEST_CASE("disjoint singleton configurations need one unit each") {
    auto res = solve_covering_lp({set_of({0}, 2), set_of({1}, 2)}, 2);
    CHECK(res.optimum == 2);
    CHECK(res.y[0] == 1);
    CHECK(res.y[1] == 1);
}

TEST_CASE("all pairs from three items cost three halves") {
    auto res = solve_covering_lp({set_of({0, 1}, 3), set_of({0, 2}, 3), set_of({1, 2}, 3)}, 3);
    CHECK(res.optimum == value_of(3, 2));
    for (int j = 0; j < 3; ++j) CHECK(res.y[j] == value_of(1, 2));
}

TEST_CASE("an empty configuration is infeasible to cover") {
    CHECK_THROWS_AS(solve_covering_lp({ItemSet(2)}, 2), Error);
    CHECK_THROWS_AS(solve_covering_lp({}, 2), UsageError);
}

TEST_CASE("simplex matches vertex enumeration on random covering systems") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);  // up to 6 items
        int k = 1 + static_cast<int>(rng() % 12);
        std::vector<ItemSet> configs;
        for (int c = 0; c < k; ++c) {
            std::uint64_t mask = rng() & ((std::uint64_t{1} << n) - 1);
            if (mask == 0) mask = 1;
            configs.push_back(ItemSet::from_mask(mask, n));
        }
        auto fast = solve_covering_lp(configs, n);
        auto slow = covering_by_vertices(configs, n);
        REQUIRE(slow.has_value());
        CHECK(fast.optimum == *slow);
        // packing matches by strong duality
        Value packed = 0;
        for (const auto& z : fast.packing) packed += z;
        CHECK(packed == fast.optimum);
    }
}
