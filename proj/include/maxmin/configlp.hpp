#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxmin/exact.hpp"
#include "maxmin/instance.hpp"

namespace maxmin {

struct RepairRecord {
    int item;
    Value amount;  // how much y[item] was lowered to make the sum strict
};

// Fractional hitting set over the items witnessing infeasibility of the
// configuration LP: y >= 0, sum y < m, and y(C) >= 1 for every
// configuration with value >= threshold (> threshold when strict).
struct DualCertificate {
    Value threshold;
    bool strict = false;
    bool matroid_constrained = false;
    std::vector<Value> y;
    std::optional<RepairRecord> repair;
    std::optional<int> min_player;  // minimum player of the defining allocation

    Value sum() const;
};

struct CertificateCheck {
    bool ok = false;
    std::string reason;
    std::optional<ItemSet> violator;  // canonical-least violating configuration
};

CertificateCheck verify_certificate(const Instance& inst, const DualCertificate& cert,
                                    const ExactOptions& opts = {});

// Symmetric fractional solution of the configuration LP: configuration
// C carries total weight z_C, split uniformly as x_{p,C} = z_C / m.
struct PrimalWitness {
    std::vector<ItemSet> configs;
    std::vector<Value> weights;
};

struct WitnessCheck {
    bool ok = false;
    std::string reason;
};

WitnessCheck verify_witness(const Instance& inst, const Value& threshold,
                            const PrimalWitness& witness);

struct LpVerdict {
    bool feasible = false;
    std::optional<PrimalWitness> witness;
    std::optional<DualCertificate> certificate;
};

struct CoveringResult {
    Value optimum;
    std::vector<Value> y;        // covering optimum: min sum y, y(C) >= 1
    std::vector<Value> packing;  // matching packing optimum, one weight per config
    long pivots = 0;
};

// Exact optimum of min sum_j y_j subject to y(C) >= 1 for every given
// configuration, y >= 0, solved through the packing dual from the
// all-slack basis. Every configuration must be non-empty.
CoveringResult solve_covering_lp(const std::vector<ItemSet>& configs, int n);

// Feasibility of the configuration LP at the given threshold, with an
// exact witness either way. Identical valuations let the per-player
// variables collapse into per-configuration totals.
LpVerdict decide_configuration_lp(const Instance& inst, const Value& threshold,
                                  const ExactOptions& opts = {});

// Largest grid value (over configuration values) at which the LP is
// feasible.
Value lp_opt(const Instance& inst, const ExactOptions& opts = {});

// lp_opt / opt_maxmin; requires a positive optimum.
Value integrality_gap(const Instance& inst, const ExactOptions& opts = {});

// Dual certificate at threshold 3*opt for a matroid-free instance:
// items above opt are set aside with one player each, the remainder is
// allocated to maximize the 2*opt-truncated sum, and each item's y is
// its share of the bundle's truncated removal marginals. The sum-y
// constraint is made strict by the recorded repair when needed.
DualCertificate build_dual_certificate(const Instance& inst, const Value& opt,
                                       const ExactOptions& opts = {});

// Matroid-constrained variant at threshold 5*opt: the truncated-sum
// allocation runs over common-independent partial allocations, and y is
// zeroed on the minimum player's bundle and on unallocated items, which
// keeps the sum at most m-1 outright.
DualCertificate build_matroid_dual_certificate(const Instance& inst, const Value& opt,
                                               const ExactOptions& opts = {});

// Unguaranteed search for a violated configuration constraint: some C
// with f(C) >= threshold and y(C) < 1 (common-independent when the
// instance is constrained). A null result proves nothing.
std::optional<ItemSet> greedy_pricing_heuristic(const Instance& inst, const std::vector<Value>& y,
                                                const Value& threshold);

// Plain-text certificate report: threshold, y map, sum, repair record,
// verdict, violator if any.
std::string render_certificate(const Instance& inst, const DualCertificate& cert,
                               const CertificateCheck& check);

}  // namespace maxmin
