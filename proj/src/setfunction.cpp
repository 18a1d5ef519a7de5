#include "maxmin/setfunction.hpp"

#include <algorithm>
#include <random>

#include "maxmin/errors.hpp"

namespace maxmin {

namespace {

int node_ground_size(const SetFunction::Node& node) {
    return std::visit(
        [](const auto& fn) -> int {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                return static_cast<int>(fn.weights.size());
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                return static_cast<int>(fn.covers.size());
            } else if constexpr (std::is_same_v<T, TableFn>) {
                return fn.n;
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                return fn.inner->ground_size();
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                return fn.inner->ground_size() + 1;
            } else {
                const DisjointSumFn& ds = fn;
                int n = 0;
                for (const auto& p : ds.parts) n += p->ground_size();
                return n;
            }
        },
        node);
}

}  // namespace

SetFunction::SetFunction(Node node, int n)
    : node_(std::make_shared<const Node>(std::move(node))), n_(n) {}

SetFunction SetFunction::additive(std::vector<Value> weights) {
    for (const auto& w : weights)
        if (w < 0) throw UsageError("additive weights must be non-negative");
    int n = static_cast<int>(weights.size());
    return SetFunction(AdditiveFn{std::move(weights)}, n);
}

SetFunction SetFunction::coverage(std::vector<Value> element_weights,
                                  std::vector<std::vector<int>> covers) {
    int universe = static_cast<int>(element_weights.size());
    for (const auto& w : element_weights)
        if (w < 0) throw UsageError("coverage element weights must be non-negative");
    std::vector<std::vector<int>> covered_by(universe);
    for (size_t j = 0; j < covers.size(); ++j) {
        auto& cov = covers[j];
        std::sort(cov.begin(), cov.end());
        cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
        for (int e : cov) {
            if (e < 0 || e >= universe) throw UsageError("covered element out of range");
            covered_by[e].push_back(static_cast<int>(j));
        }
    }
    int n = static_cast<int>(covers.size());
    return SetFunction(CoverageFn{std::move(element_weights), std::move(covers), std::move(covered_by)}, n);
}

SetFunction SetFunction::table(int n, std::vector<Value> values) {
    if (n < 0 || n > 24) throw UsageError("table functions support ground sets of size <= 24");
    if (values.size() != (size_t{1} << n)) throw UsageError("table needs a value for every subset");
    Value base = values[0];
    for (auto& v : values) {
        v -= base;
        if (v < 0) throw UsageError("table values must be >= the empty-set value");
    }
    return SetFunction(TableFn{n, std::move(values)}, n);
}

SetFunction SetFunction::truncated(SetFunction inner, Value cap) {
    if (cap < 0) throw UsageError("truncation cap must be non-negative");
    int n = inner.ground_size();
    return SetFunction(TruncatedFn{std::make_shared<const SetFunction>(std::move(inner)), std::move(cap)}, n);
}

SetFunction SetFunction::augmented(SetFunction inner, Value bonus) {
    if (bonus < 0) throw UsageError("augmentation bonus must be non-negative");
    int n = inner.ground_size() + 1;
    return SetFunction(AugmentedFn{std::make_shared<const SetFunction>(std::move(inner)), std::move(bonus)}, n);
}

SetFunction SetFunction::disjoint_sum(std::vector<SetFunction> parts) {
    DisjointSumFn ds;
    int off = 0;
    for (auto& p : parts) {
        ds.offsets.push_back(off);
        off += p.ground_size();
        ds.parts.push_back(std::make_shared<const SetFunction>(std::move(p)));
    }
    return SetFunction(std::move(ds), off);
}

namespace {

void check_ground(const SetFunction& f, const ItemSet& s) {
    if (s.universe() != f.ground_size())
        throw DomainError("item set does not match the function's ground set");
}

Value coverage_evaluate(const CoverageFn& fn, const ItemSet& s) {
    std::vector<char> seen(fn.element_weights.size(), 0);
    s.for_each([&](int j) {
        for (int e : fn.covers[j]) seen[e] = 1;
    });
    Value total = 0;
    for (size_t e = 0; e < seen.size(); ++e)
        if (seen[e]) total += fn.element_weights[e];
    return total;
}

bool coverage_element_covered(const CoverageFn& fn, int element, const ItemSet& s) {
    for (int j : fn.covered_by[element])
        if (s.test(j)) return true;
    return false;
}

}  // namespace

Value evaluate(const SetFunction& f, const ItemSet& s) {
    check_ground(f, s);
    return std::visit(
        [&](const auto& fn) -> Value {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                Value total = 0;
                s.for_each([&](int j) { total += fn.weights[j]; });
                return total;
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                return coverage_evaluate(fn, s);
            } else if constexpr (std::is_same_v<T, TableFn>) {
                return fn.values[s.to_mask()];
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                Value inner = evaluate(*fn.inner, s);
                return inner > fn.cap ? fn.cap : inner;
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                int z = fn.inner->ground_size();
                if (s.test(z)) return evaluate(*fn.inner, s.without(z).resized(z)) + fn.bonus;
                return evaluate(*fn.inner, s.resized(z));
            } else {
                const DisjointSumFn& ds = fn;
                Value total = 0;
                for (size_t i = 0; i < ds.parts.size(); ++i) {
                    int off = ds.offsets[i];
                    int sz = ds.parts[i]->ground_size();
                    total += evaluate(*ds.parts[i], s.slice(off, off + sz));
                }
                return total;
            }
        },
        f.node());
}

Value marginal(const SetFunction& f, int item, const ItemSet& s) {
    check_ground(f, s);
    if (item < 0 || item >= f.ground_size()) throw DomainError("item index out of range");
    if (s.test(item)) return 0;
    return std::visit(
        [&](const auto& fn) -> Value {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                return fn.weights[item];
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                Value gain = 0;
                for (int e : fn.covers[item])
                    if (!coverage_element_covered(fn, e, s)) gain += fn.element_weights[e];
                return gain;
            } else if constexpr (std::is_same_v<T, TableFn>) {
                auto mask = s.to_mask();
                return fn.values[mask | (std::uint64_t{1} << item)] - fn.values[mask];
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                return evaluate(f, s.with(item)) - evaluate(f, s);
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                int z = fn.inner->ground_size();
                if (item == z) return fn.bonus;
                if (s.test(z)) return marginal(*fn.inner, item, s.without(z).resized(z));
                return marginal(*fn.inner, item, s.resized(z));
            } else {
                const DisjointSumFn& ds = fn;
                for (size_t i = ds.parts.size(); i-- > 0;) {
                    int off = ds.offsets[i];
                    int sz = ds.parts[i]->ground_size();
                    if (item >= off && item < off + sz)
                        return marginal(*ds.parts[i], item - off, s.slice(off, off + sz));
                }
                throw DomainError("item index out of range");
            }
        },
        f.node());
}

Value marginal_set(const SetFunction& f, const ItemSet& s, const ItemSet& t) {
    return evaluate(f, s | t) - evaluate(f, t);
}

Value remove_marginal(const SetFunction& f, int item, const ItemSet& s) {
    check_ground(f, s);
    if (item < 0 || item >= f.ground_size()) throw DomainError("item index out of range");
    if (!s.test(item)) throw DomainError("remove_marginal: item not in the set");
    return evaluate(f, s) - evaluate(f, s.without(item));
}

SetFunction restrict_to(const SetFunction& f, const ItemSet& keep) {
    check_ground(f, keep);
    std::vector<int> kept = keep.items();
    std::vector<int> new_index(f.ground_size(), -1);
    for (size_t i = 0; i < kept.size(); ++i) new_index[kept[i]] = static_cast<int>(i);

    return std::visit(
        [&](const auto& fn) -> SetFunction {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                std::vector<Value> w;
                w.reserve(kept.size());
                for (int j : kept) w.push_back(fn.weights[j]);
                return SetFunction::additive(std::move(w));
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                std::vector<std::vector<int>> covers;
                covers.reserve(kept.size());
                for (int j : kept) covers.push_back(fn.covers[j]);
                return SetFunction::coverage(fn.element_weights, std::move(covers));
            } else if constexpr (std::is_same_v<T, TableFn>) {
                int k = static_cast<int>(kept.size());
                std::vector<Value> values(size_t{1} << k);
                for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
                    std::uint64_t full = 0;
                    for (int b = 0; b < k; ++b)
                        if ((sub >> b) & 1) full |= std::uint64_t{1} << kept[b];
                    values[sub] = fn.values[full];
                }
                return SetFunction::table(k, std::move(values));
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                return SetFunction::truncated(restrict_to(*fn.inner, keep), fn.cap);
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                int z = fn.inner->ground_size();
                if (keep.test(z))
                    return SetFunction::augmented(restrict_to(*fn.inner, keep.without(z).resized(z)),
                                                  fn.bonus);
                return restrict_to(*fn.inner, keep.resized(z));
            } else {
                const DisjointSumFn& ds = fn;
                std::vector<SetFunction> parts;
                for (size_t i = 0; i < ds.parts.size(); ++i) {
                    int off = ds.offsets[i];
                    int sz = ds.parts[i]->ground_size();
                    ItemSet local = keep.slice(off, off + sz);
                    if (local.count() > 0) parts.push_back(restrict_to(*ds.parts[i], local));
                }
                return SetFunction::disjoint_sum(std::move(parts));
            }
        },
        f.node());
}

namespace {

CheckReport check_exhaustive(const SetFunction& f) {
    int n = f.ground_size();
    CheckReport report;
    report.exhaustive = true;

    std::vector<Value> v(size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        v[mask] = evaluate(f, ItemSet::from_mask(mask, n));

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && report.monotone; ++mask) {
        for (int j = 0; j < n; ++j) {
            if ((mask >> j) & 1) continue;
            if (v[mask | (std::uint64_t{1} << j)] < v[mask]) {
                report.monotone = false;
                report.mono_witness = {j, ItemSet::from_mask(mask, n)};
                break;
            }
        }
    }

    // Single-step diminishing returns implies the full S subset-of T form
    // by chaining added elements.
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n) && report.submodular; ++s) {
        for (int e = 0; e < n && report.submodular; ++e) {
            if ((s >> e) & 1) continue;
            std::uint64_t t = s | (std::uint64_t{1} << e);
            for (int j = 0; j < n; ++j) {
                if ((t >> j) & 1) continue;
                std::uint64_t jb = std::uint64_t{1} << j;
                if (v[s | jb] - v[s] < v[t | jb] - v[t]) {
                    report.submodular = false;
                    report.witness = SubmodularityWitness{j, ItemSet::from_mask(s, n),
                                                          ItemSet::from_mask(t, n)};
                    break;
                }
            }
        }
    }
    return report;
}

ItemSet random_subset(std::mt19937_64& rng, int n, int excluded) {
    ItemSet s(n);
    for (int base = 0; base < n; base += 64) {
        std::uint64_t word = rng();
        int limit = std::min(64, n - base);
        for (int b = 0; b < limit; ++b) {
            int idx = base + b;
            if (idx != excluded && ((word >> b) & 1)) s.set(idx);
        }
    }
    return s;
}

ItemSet random_subset_of(std::mt19937_64& rng, const ItemSet& t) {
    ItemSet s(t.universe());
    t.for_each([&](int j) {
        if (rng() & 1) s.set(j);
    });
    return s;
}

CheckReport check_sampled(const SetFunction& f, long samples, std::uint64_t seed) {
    int n = f.ground_size();
    CheckReport report;
    report.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (long k = 0; k < samples; ++k) {
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        ItemSet t = random_subset(rng, n, j);
        ItemSet s = random_subset_of(rng, t);
        Value small = marginal(f, j, s);
        Value large = marginal(f, j, t);
        ++report.samples_checked;
        if (report.monotone && large < 0) {
            report.monotone = false;
            report.mono_witness = {j, t};
        }
        if (report.submodular && small < large) {
            report.submodular = false;
            report.witness = SubmodularityWitness{j, s, t};
        }
        if (!report.monotone && !report.submodular) break;
    }
    return report;
}

}  // namespace

CheckReport check_submodular_monotone(const SetFunction& f, const CheckOptions& opts) {
    int n = f.ground_size();
    if (n <= opts.exhaustive_limit && n <= 20 && !opts.samples) return check_exhaustive(f);
    if (!opts.samples)
        throw UsageError("ground set too large for exhaustive checking; request sampled mode");
    if (n == 0) return CheckReport{};
    return check_sampled(f, *opts.samples, opts.seed);
}

}  // namespace maxmin
