#include "maxmin/configlp.hpp"

#include <algorithm>
#include <sstream>

#include "maxmin/errors.hpp"
#include "maxmin/simplex.hpp"

namespace maxmin {

Value DualCertificate::sum() const {
    Value s = 0;
    for (const auto& v : y) s += v;
    return s;
}

namespace {

Value config_value_sum(const std::vector<Value>& y, const ItemSet& c) {
    Value s = 0;
    c.for_each([&](int j) { s += y[j]; });
    return s;
}

std::string set_str(const Instance& inst, const ItemSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int j) {
        if (!first) out += ", ";
        out += inst.label(j);
        first = false;
    });
    return out + "}";
}

}  // namespace

CertificateCheck verify_certificate(const Instance& inst, const DualCertificate& cert,
                                    const ExactOptions& opts) {
    CertificateCheck check;
    if (static_cast<int>(cert.y.size()) != inst.n()) {
        check.reason = "certificate sized for a different instance";
        return check;
    }
    for (const auto& v : cert.y) {
        if (v < 0) {
            check.reason = "negative dual value";
            return check;
        }
    }
    Value total = cert.sum();
    if (!(total < inst.m())) {
        check.reason = "sum of dual values is not below the player count";
        return check;
    }
    std::vector<ItemSet> configs = enumerate_configurations(inst, cert.threshold, cert.strict, opts);
    for (const auto& c : configs) {
        if (config_value_sum(cert.y, c) < 1) {
            check.reason = "configuration constraint violated";
            check.violator = c;
            return check;
        }
    }
    check.ok = true;
    return check;
}

WitnessCheck verify_witness(const Instance& inst, const Value& threshold,
                            const PrimalWitness& witness) {
    WitnessCheck check;
    if (witness.configs.size() != witness.weights.size()) {
        check.reason = "weight per configuration missing";
        return check;
    }
    const SetFunction& f = inst.valuation();
    std::vector<Value> item_load(inst.n(), Value(0));
    Value total = 0;
    for (size_t i = 0; i < witness.configs.size(); ++i) {
        const ItemSet& c = witness.configs[i];
        const Value& w = witness.weights[i];
        if (w < 0) {
            check.reason = "negative configuration weight";
            return check;
        }
        if (w == 0) continue;
        if (evaluate(f, c) < threshold) {
            check.reason = "support configuration below the threshold";
            return check;
        }
        if (inst.has_matroids() && !is_common_independent(inst.matroids(), c)) {
            check.reason = "support configuration is not common-independent";
            return check;
        }
        total += w;
        c.for_each([&](int j) { item_load[j] += w; });
    }
    if (total < inst.m()) {
        check.reason = "players receive less than one unit each";
        return check;
    }
    for (const auto& load : item_load) {
        if (load > 1) {
            check.reason = "item used more than once in total";
            return check;
        }
    }
    check.ok = true;
    return check;
}

CoveringResult solve_covering_lp(const std::vector<ItemSet>& configs, int n) {
    if (configs.empty()) throw UsageError("covering LP needs at least one configuration");
    for (const auto& c : configs) {
        if (c.universe() != n) throw DomainError("configuration over the wrong ground set");
        if (c.empty()) throw Error("covering LP infeasible: empty configuration");
    }
    // Solve the packing dual max 1'z, A'z <= 1 from the slack basis; the
    // covering optimum and y fall out of the final reduced costs.
    size_t k = configs.size();
    std::vector<std::vector<Value>> rows(n, std::vector<Value>(k, Value(0)));
    for (size_t c = 0; c < k; ++c)
        configs[c].for_each([&](int j) { rows[j][c] = 1; });
    std::vector<Value> rhs(n, Value(1));
    std::vector<Value> obj(k, Value(1));
    SimplexResult res = solve_packing_lp(rows, rhs, obj);

    CoveringResult out{res.objective, res.dual, res.primal, res.pivots};
    Value ysum = 0;
    for (const auto& v : out.y) {
        if (v < 0) throw VerificationError("covering dual has a negative entry");
        ysum += v;
    }
    if (ysum != out.optimum) throw VerificationError("covering duality gap");
    for (const auto& c : configs)
        if (config_value_sum(out.y, c) < 1)
            throw VerificationError("covering solution misses a configuration");
    return out;
}

LpVerdict decide_configuration_lp(const Instance& inst, const Value& threshold,
                                  const ExactOptions& opts) {
    LpVerdict verdict;
    if (threshold <= 0) {
        // The empty configuration qualifies; one unit of it per player.
        PrimalWitness w;
        w.configs.push_back(ItemSet(inst.n()));
        w.weights.push_back(Value(inst.m()));
        auto check = verify_witness(inst, threshold, w);
        if (!check.ok) throw VerificationError("trivial witness failed: " + check.reason);
        verdict.feasible = true;
        verdict.witness = std::move(w);
        return verdict;
    }

    std::vector<ItemSet> configs = enumerate_configurations(inst, threshold, false, opts);
    if (configs.empty()) {
        DualCertificate cert;
        cert.threshold = threshold;
        cert.strict = false;
        cert.matroid_constrained = inst.has_matroids();
        cert.y.assign(inst.n(), Value(0));
        auto check = verify_certificate(inst, cert, opts);
        if (!check.ok) throw VerificationError("vacuous certificate failed: " + check.reason);
        verdict.feasible = false;
        verdict.certificate = std::move(cert);
        return verdict;
    }

    CoveringResult covering = solve_covering_lp(configs, inst.n());
    if (covering.optimum < inst.m()) {
        DualCertificate cert;
        cert.threshold = threshold;
        cert.strict = false;
        cert.matroid_constrained = inst.has_matroids();
        cert.y = covering.y;
        auto check = verify_certificate(inst, cert, opts);
        if (!check.ok) throw VerificationError("covering certificate failed: " + check.reason);
        verdict.feasible = false;
        verdict.certificate = std::move(cert);
        return verdict;
    }

    PrimalWitness w;
    Value scale = Value(inst.m()) / covering.optimum;
    for (size_t c = 0; c < configs.size(); ++c) {
        if (covering.packing[c] == 0) continue;
        w.configs.push_back(configs[c]);
        w.weights.push_back(covering.packing[c] * scale);
    }
    auto check = verify_witness(inst, threshold, w);
    if (!check.ok) throw VerificationError("primal witness failed: " + check.reason);
    verdict.feasible = true;
    verdict.witness = std::move(w);
    return verdict;
}

namespace {

// Distinct values of qualifying configurations, ascending. Feasibility
// of the LP only changes at these values.
std::vector<Value> config_value_grid(const Instance& inst, const ExactOptions& opts) {
    int n = inst.n();
    if (n > 24) throw ResourceError("grid enumeration supports at most 24 items", "n<=24");
    if ((std::uint64_t{1} << n) > static_cast<std::uint64_t>(opts.budget))
        throw ResourceError("grid enumeration exceeds the budget (MAXMIN_BUDGET)", "MAXMIN_BUDGET");
    const SetFunction& f = inst.valuation();
    std::vector<Value> grid;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ItemSet c = ItemSet::from_mask(mask, n);
        if (inst.has_matroids() && !is_common_independent(inst.matroids(), c)) continue;
        grid.push_back(evaluate(f, c));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace

Value lp_opt(const Instance& inst, const ExactOptions& opts) {
    std::vector<Value> grid = config_value_grid(inst, opts);
    // grid[0] == 0 is always feasible; search the boundary.
    size_t lo = 0, hi = grid.size() - 1;
    if (decide_configuration_lp(inst, grid[hi], opts).feasible) return grid[hi];
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (decide_configuration_lp(inst, grid[mid], opts).feasible)
            lo = mid;
        else
            hi = mid - 1;
    }
    return grid[lo];
}

Value integrality_gap(const Instance& inst, const ExactOptions& opts) {
    OptResult opt = opt_maxmin(inst, opts);
    if (opt.value == 0) throw DomainError("integrality gap undefined: the optimum is zero");
    return lp_opt(inst, opts) / opt.value;
}

namespace {

struct Reduction {
    ItemSet keep;                // surviving items, original indexing
    std::vector<int> item_map;   // reduced -> original
    std::vector<int> big_items;  // removed items, original indexing
    int removed_players = 0;
};

// Items worth more than the optimum can never help a bundle reach it;
// each one retires a player (when one exists for it).
Reduction reduce_big_items(const Instance& inst, const Value& opt, bool need_independent_singleton) {
    Reduction red;
    red.keep = ItemSet::full(inst.n());
    ItemSet empty(inst.n());
    const SetFunction& f = inst.valuation();
    for (int j = 0; j < inst.n(); ++j) {
        if (marginal(f, j, empty) > opt) {
            bool consumes_player = true;
            if (need_independent_singleton)
                consumes_player = is_common_independent(inst.matroids(), empty.with(j));
            red.keep.reset(j);
            red.big_items.push_back(j);
            if (consumes_player) {
                red.removed_players++;
                if (red.removed_players >= inst.m())
                    throw VerificationError(
                        "more oversized items than players contradicts the given optimum");
            }
        }
    }
    red.item_map = red.keep.items();
    return red;
}

struct CertificateCore {
    std::vector<Value> y;           // original indexing
    std::vector<Value> bundle_share_sum;  // T(p) per reduced player
    Allocation reduced_allocation;  // over the reduced ground set
    int min_player_original = -1;
};

// Shared y-construction: allocate the reduced instance to maximize the
// cap-truncated sum, then give every allocated item its share of its
// bundle's removal marginals under the truncated function.
CertificateCore build_core(const Instance& inst, const Instance& reduced, const Reduction& red,
                           const Value& cap, const ExactOptions& opts) {
    CertificateCore core;
    core.y.assign(inst.n(), Value(0));
    for (int j : red.big_items) core.y[j] = 1;

    TruncatedSumResult best = opt_truncated_maxsum(reduced, cap, opts);
    core.reduced_allocation = best.allocation;
    SetFunction capped = SetFunction::truncated(reduced.valuation(), cap);

    int q = min_player(reduced.valuation(), best.allocation);
    core.min_player_original = q + red.removed_players;

    for (int p = 0; p < reduced.m(); ++p) {
        const ItemSet& bundle = best.allocation.bundles[p];
        Value tp = 0;
        bundle.for_each([&](int j) { tp += remove_marginal(capped, j, bundle); });
        if (tp > cap)
            throw VerificationError("bundle share sum exceeds the truncation cap");
        core.bundle_share_sum.push_back(tp);
        if (tp == 0) continue;
        bundle.for_each([&](int j) {
            core.y[red.item_map[j]] = remove_marginal(capped, j, bundle) / tp;
        });
    }
    return core;
}

Instance make_reduced_instance(const Instance& inst, const Reduction& red, bool with_matroids) {
    std::vector<std::string> labels;
    labels.reserve(red.item_map.size());
    for (int j : red.item_map) labels.push_back(inst.label(j));
    std::vector<Matroid> mats;
    if (with_matroids)
        for (const auto& m : inst.matroids()) mats.push_back(restrict_matroid(m, red.keep));
    return Instance(std::move(labels), inst.m() - red.removed_players,
                    restrict_to(inst.valuation(), red.keep), std::move(mats));
}

void apply_strictness_repair(const Instance& inst, DualCertificate& cert,
                             const ExactOptions& opts) {
    if (cert.sum() < inst.m()) return;
    std::vector<ItemSet> configs =
        enumerate_configurations(inst, cert.threshold, cert.strict, opts);
    for (int j = 0; j < inst.n(); ++j) {
        if (cert.y[j] == 0) continue;
        bool constrained = false;
        Value min_slack;
        for (const auto& c : configs) {
            if (!c.test(j)) continue;
            Value slack = config_value_sum(cert.y, c) - 1;
            if (slack <= 0) {
                constrained = true;
                min_slack = 0;
                break;
            }
            if (!constrained || slack < min_slack) min_slack = slack;
            constrained = true;
        }
        Value amount;
        if (!constrained) {
            amount = cert.y[j] / 2;
        } else if (min_slack > 0) {
            amount = min_slack / 2;
            if (amount > cert.y[j]) amount = cert.y[j];
        } else {
            continue;  // some constraint through j is tight; try the next item
        }
        if (amount <= 0) continue;
        cert.y[j] -= amount;
        cert.repair = RepairRecord{j, amount};
        return;
    }
    throw VerificationError("cannot repair the certificate to a strict sum");
}

}  // namespace

DualCertificate build_dual_certificate(const Instance& inst, const Value& opt,
                                       const ExactOptions& opts) {
    if (inst.has_matroids())
        throw UsageError("this certificate construction requires a matroid-free instance");
    if (opt < 0) throw UsageError("optimum must be non-negative");

    Reduction red = reduce_big_items(inst, opt, false);
    DualCertificate cert;
    cert.threshold = Value(3) * opt;
    cert.strict = true;
    cert.matroid_constrained = false;

    if (red.item_map.empty()) {
        cert.y.assign(inst.n(), Value(0));
        for (int j : red.big_items) cert.y[j] = 1;
    } else {
        Instance reduced = make_reduced_instance(inst, red, false);
        CertificateCore core = build_core(inst, reduced, red, Value(2) * opt, opts);
        cert.y = std::move(core.y);
        cert.min_player = core.min_player_original;
    }

    if (!(cert.sum() <= inst.m()))
        throw VerificationError("dual values sum above the player count");
    apply_strictness_repair(inst, cert, opts);

    auto check = verify_certificate(inst, cert, opts);
    if (!check.ok) {
        std::string where = check.violator ? " violator " + set_str(inst, *check.violator) : "";
        throw VerificationError("certificate failed verification: " + check.reason + where,
                                check.violator ? set_str(inst, *check.violator) : "");
    }
    return cert;
}

DualCertificate build_matroid_dual_certificate(const Instance& inst, const Value& opt,
                                               const ExactOptions& opts) {
    if (!inst.has_matroids())
        throw UsageError("the matroid certificate construction needs at least one matroid");
    if (opt < 0) throw UsageError("optimum must be non-negative");

    Reduction red = reduce_big_items(inst, opt, true);
    DualCertificate cert;
    cert.threshold = Value(5) * opt;
    cert.strict = true;
    cert.matroid_constrained = true;

    if (red.item_map.empty()) {
        cert.y.assign(inst.n(), Value(0));
        for (int j : red.big_items) cert.y[j] = 1;
    } else {
        Instance reduced = make_reduced_instance(inst, red, true);
        CertificateCore core = build_core(inst, reduced, red, Value(2) * opt, opts);
        // Zero the minimum player's bundle and the unallocated items;
        // the remaining players contribute at most one unit each.
        int q = core.min_player_original - red.removed_players;
        core.reduced_allocation.bundles[q].for_each(
            [&](int j) { core.y[red.item_map[j]] = 0; });
        core.reduced_allocation.unallocated.for_each(
            [&](int j) { core.y[red.item_map[j]] = 0; });
        cert.y = std::move(core.y);
        cert.min_player = core.min_player_original;
    }

    if (!(cert.sum() <= Value(inst.m()) - 1))
        throw VerificationError("matroid certificate sum exceeds m - 1");

    auto check = verify_certificate(inst, cert, opts);
    if (!check.ok) {
        throw VerificationError("certificate failed verification: " + check.reason,
                                check.violator ? set_str(inst, *check.violator) : "");
    }
    return cert;
}

std::optional<ItemSet> greedy_pricing_heuristic(const Instance& inst, const std::vector<Value>& y,
                                                const Value& threshold) {
    if (static_cast<int>(y.size()) != inst.n()) throw UsageError("y sized for a different instance");
    for (const auto& v : y)
        if (v < 0) throw UsageError("y must be non-negative");
    const SetFunction& f = inst.valuation();
    int n = inst.n();

    auto admissible = [&](const ItemSet& c, int j) {
        if (!inst.has_matroids()) return true;
        return is_common_independent(inst.matroids(), c.with(j));
    };
    auto violated = [&](const ItemSet& c) {
        return evaluate(f, c) >= threshold && config_value_sum(y, c) < 1;
    };
    // Drop high-y items whose removal keeps the value at the threshold,
    // then re-test.
    auto pruned = [&](ItemSet c) {
        std::vector<int> members = c.items();
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            int cv = cmp(y[a], y[b]);
            if (cv != 0) return cv > 0;
            return a < b;
        });
        for (int j : members) {
            ItemSet without = c.without(j);
            if (evaluate(f, without) >= threshold) c = without;
        }
        return c;
    };

    // Sweep 1: density (marginal per unit of y, zero-y items first).
    // Sweep 2: plain marginal. Sweep 3: cheapest y first.
    for (int sweep = 0; sweep < 3; ++sweep) {
        ItemSet c(n);
        Value value = 0;
        while (value < threshold) {
            int best = -1;
            Value best_gain;
            for (int j = 0; j < n; ++j) {
                if (c.test(j) || !admissible(c, j)) continue;
                Value gain = marginal(f, j, c);
                if (gain <= 0) continue;
                bool better = false;
                if (best < 0) {
                    better = true;
                } else if (sweep == 0) {
                    bool j_free = y[j] == 0, b_free = y[best] == 0;
                    if (j_free != b_free)
                        better = j_free;
                    else if (j_free)
                        better = gain > best_gain;
                    else
                        better = gain * y[best] > best_gain * y[j];
                } else if (sweep == 1) {
                    better = gain > best_gain;
                } else {
                    int cv = cmp(y[j], y[best]);
                    better = cv < 0 || (cv == 0 && gain > best_gain);
                }
                if (better) {
                    best = j;
                    best_gain = gain;
                }
            }
            if (best < 0) break;
            value += best_gain;
            c.set(best);
        }
        if (value >= threshold) {
            if (violated(c)) return c;
            ItemSet trimmed = pruned(c);
            if (violated(trimmed)) return trimmed;
        }
    }
    return std::nullopt;
}

std::string render_certificate(const Instance& inst, const DualCertificate& cert,
                               const CertificateCheck& check) {
    std::ostringstream out;
    out << "threshold: " << value_str(cert.threshold) << "\n";
    out << "filter: value " << (cert.strict ? ">" : ">=") << " threshold\n";
    out << "matroid_constrained: " << (cert.matroid_constrained ? "true" : "false") << "\n";
    out << "sum_y: " << value_str(cert.sum()) << " (players: " << inst.m() << ")\n";
    for (int j = 0; j < inst.n(); ++j)
        out << "y " << inst.label(j) << " = " << value_str(cert.y[j]) << "\n";
    if (cert.repair)
        out << "repair: lowered y " << inst.label(cert.repair->item) << " by "
            << value_str(cert.repair->amount) << "\n";
    if (cert.min_player) out << "min_player: " << *cert.min_player << "\n";
    out << "verdict: " << (check.ok ? "VERIFIED" : "INVALID") << "\n";
    if (!check.ok) {
        out << "reason: " << check.reason << "\n";
        if (check.violator) out << "violator: " << set_str(inst, *check.violator) << "\n";
    }
    return out.str();
}

}  // namespace maxmin
