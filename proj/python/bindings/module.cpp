#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "maxmin/configlp.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/exact.hpp"
#include "maxmin/generators.hpp"
#include "maxmin/greedy.hpp"
#include "maxmin/io.hpp"

namespace py = pybind11;

namespace {

using maxmin::Instance;
using maxmin::Value;

maxmin::ExactOptions options_for(std::optional<long long> budget) {
    maxmin::ExactOptions opts;
    if (budget) opts.budget = *budget;
    return opts;
}

maxmin::ItemSet set_from_labels(const Instance& inst, const std::vector<std::string>& labels) {
    maxmin::ItemSet s(inst.n());
    for (const auto& l : labels) {
        int idx = inst.item_by_label(l);
        if (idx < 0) throw maxmin::UsageError("unknown item label: " + l);
        s.set(idx);
    }
    return s;
}

py::list labels_of(const Instance& inst, const maxmin::ItemSet& s) {
    py::list out;
    s.for_each([&](int j) { out.append(inst.label(j)); });
    return out;
}

py::dict allocation_dict(const Instance& inst, const maxmin::Allocation& alloc) {
    py::list bundles;
    for (const auto& b : alloc.bundles) bundles.append(labels_of(inst, b));
    py::dict out;
    out["bundles"] = bundles;
    out["unallocated"] = labels_of(inst, alloc.unallocated);
    return out;
}

maxmin::TieBreakPolicy policy_for(const Instance& inst,
                                  const std::optional<std::vector<std::string>>& item_order,
                                  const std::optional<std::vector<int>>& player_order) {
    if (!item_order && !player_order)
        return maxmin::TieBreakPolicy::lexicographic(inst.n(), inst.m());
    std::vector<int> items;
    if (item_order) {
        for (const auto& l : *item_order) {
            int idx = inst.item_by_label(l);
            if (idx < 0) throw maxmin::UsageError("unknown item label: " + l);
            items.push_back(idx);
        }
    } else {
        items.resize(inst.n());
        for (int i = 0; i < inst.n(); ++i) items[i] = i;
    }
    std::vector<int> players;
    if (player_order) {
        players = *player_order;
    } else {
        players.resize(inst.m());
        for (int p = 0; p < inst.m(); ++p) players[p] = p;
    }
    return maxmin::TieBreakPolicy::by_permutation(std::move(items), std::move(players));
}

py::dict certificate_dict(const Instance& inst, const maxmin::DualCertificate& cert,
                          const maxmin::CertificateCheck& check) {
    py::dict out;
    out["threshold"] = maxmin::value_str(cert.threshold);
    out["strict"] = cert.strict;
    out["matroid_constrained"] = cert.matroid_constrained;
    out["sum_y"] = maxmin::value_str(cert.sum());
    py::dict y;
    for (int j = 0; j < inst.n(); ++j)
        y[py::str(inst.label(j))] = maxmin::value_str(cert.y[j]);
    out["y"] = y;
    out["verified"] = check.ok;
    if (!check.ok) {
        out["reason"] = check.reason;
        if (check.violator) out["violator"] = labels_of(inst, *check.violator);
    }
    if (cert.repair) {
        py::dict rep;
        rep["item"] = inst.label(cert.repair->item);
        rep["amount"] = maxmin::value_str(cert.repair->amount);
        out["repair"] = rep;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_maxmin, m) {
    m.doc() = "Exact toolkit for submodular max-min allocation under identical valuations";

    static py::exception<maxmin::Error> exc(m, "MaxminError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const maxmin::Error& e) {
            py::set_error(exc, e.what());
        }
    });

    py::class_<Instance>(m, "Instance")
        .def_static("from_json", [](const std::string& text) { return maxmin::parse_instance(text); })
        .def_static("from_file", [](const std::string& path) { return maxmin::read_instance_file(path); })
        .def("to_json", [](const Instance& inst) { return maxmin::write_instance(inst); })
        .def_property_readonly("n", &Instance::n)
        .def_property_readonly("m", &Instance::m)
        .def_property_readonly("labels", [](const Instance& i) { return i.labels(); })
        .def("evaluate",
             [](const Instance& inst, const std::vector<std::string>& items) {
                 return maxmin::value_str(evaluate(inst.valuation(), set_from_labels(inst, items)));
             })
        .def("marginal",
             [](const Instance& inst, const std::string& item, const std::vector<std::string>& base) {
                 int idx = inst.item_by_label(item);
                 if (idx < 0) throw maxmin::UsageError("unknown item label: " + item);
                 return maxmin::value_str(
                     marginal(inst.valuation(), idx, set_from_labels(inst, base)));
             })
        .def("check_submodular_monotone",
             [](const Instance& inst, std::optional<long> samples, std::uint64_t seed) {
                 maxmin::CheckOptions opts;
                 opts.samples = samples;
                 opts.seed = seed;
                 auto report = maxmin::check_submodular_monotone(inst.valuation(), opts);
                 py::dict out;
                 out["submodular"] = report.submodular;
                 out["monotone"] = report.monotone;
                 out["exhaustive"] = report.exhaustive;
                 return out;
             },
             py::arg("samples") = std::nullopt, py::arg("seed") = 0);

    m.def("gen_gap_instance", &maxmin::gen_gap_instance);
    m.def(
        "gen_random",
        [](const std::string& kind, int n, int mm, std::uint64_t seed, long weight_bound) {
            maxmin::RandomKind rk = kind == "coverage" ? maxmin::RandomKind::coverage
                                                       : maxmin::RandomKind::additive;
            if (kind != "coverage" && kind != "additive")
                throw maxmin::UsageError("kind must be additive or coverage");
            return maxmin::gen_random(rk, n, mm, seed, weight_bound);
        },
        py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("weight_bound") = 10);

    m.def(
        "opt_maxmin",
        [](const Instance& inst, std::optional<long long> budget) {
            auto res = maxmin::opt_maxmin(inst, options_for(budget));
            py::dict out;
            out["opt"] = maxmin::value_str(res.value);
            out["allocation"] = allocation_dict(inst, res.allocation);
            out["nodes"] = res.nodes;
            return out;
        },
        py::arg("instance"), py::arg("budget") = std::nullopt);

    m.def(
        "solve_approx",
        [](const Instance& inst, const std::string& alpha,
           const std::optional<std::vector<std::string>>& item_order,
           const std::optional<std::vector<int>>& player_order) {
            auto policy = policy_for(inst, item_order, player_order);
            auto res = inst.cardinality_cap()
                           ? maxmin::solve_approx_cardinality(inst, maxmin::parse_value(alpha), policy)
                           : maxmin::solve_approx(inst, maxmin::parse_value(alpha), policy);
            py::dict out;
            out["achieved_min"] = maxmin::value_str(res.achieved_min);
            out["guessed_opt"] = maxmin::value_str(res.guessed_opt);
            out["allocation"] = allocation_dict(inst, res.allocation);
            return out;
        },
        py::arg("instance"), py::arg("alpha"), py::arg("item_order") = std::nullopt,
        py::arg("player_order") = std::nullopt);

    m.def(
        "greedy",
        [](const Instance& inst, const std::string& threshold,
           const std::optional<std::vector<std::string>>& item_order,
           const std::optional<std::vector<int>>& player_order) {
            auto policy = policy_for(inst, item_order, player_order);
            Value t = maxmin::parse_value(threshold);
            auto res = inst.cardinality_cap() ? maxmin::greedy_cardinality(inst, t, policy)
                                              : maxmin::greedy_with_threshold(inst, t, policy);
            py::dict out;
            out["achieved_min"] =
                maxmin::value_str(maxmin::min_bundle_value(inst.valuation(), res.allocation));
            out["allocation"] = allocation_dict(inst, res.allocation);
            out["steps"] = static_cast<long>(res.trace.steps.size());
            return out;
        },
        py::arg("instance"), py::arg("threshold"), py::arg("item_order") = std::nullopt,
        py::arg("player_order") = std::nullopt);

    m.def(
        "lp_opt",
        [](const Instance& inst, std::optional<long long> budget) {
            return maxmin::value_str(maxmin::lp_opt(inst, options_for(budget)));
        },
        py::arg("instance"), py::arg("budget") = std::nullopt);

    m.def(
        "decide_configuration_lp",
        [](const Instance& inst, const std::string& threshold, std::optional<long long> budget) {
            auto opts = options_for(budget);
            auto verdict = maxmin::decide_configuration_lp(inst, maxmin::parse_value(threshold), opts);
            py::dict out;
            out["feasible"] = verdict.feasible;
            if (verdict.certificate) {
                auto check = maxmin::verify_certificate(inst, *verdict.certificate, opts);
                out["certificate"] = certificate_dict(inst, *verdict.certificate, check);
            }
            if (verdict.witness) {
                py::list configs;
                for (size_t i = 0; i < verdict.witness->configs.size(); ++i) {
                    py::dict entry;
                    entry["items"] = labels_of(inst, verdict.witness->configs[i]);
                    entry["weight"] = maxmin::value_str(verdict.witness->weights[i]);
                    configs.append(entry);
                }
                out["witness"] = configs;
            }
            return out;
        },
        py::arg("instance"), py::arg("threshold"), py::arg("budget") = std::nullopt);

    m.def(
        "integrality_gap",
        [](const Instance& inst, std::optional<long long> budget) {
            return maxmin::value_str(maxmin::integrality_gap(inst, options_for(budget)));
        },
        py::arg("instance"), py::arg("budget") = std::nullopt);

    m.def(
        "build_dual_certificate",
        [](const Instance& inst, std::optional<std::string> opt, std::optional<long long> budget) {
            auto opts = options_for(budget);
            Value v = opt ? maxmin::parse_value(*opt) : maxmin::opt_maxmin(inst, opts).value;
            auto cert = inst.has_matroids() ? maxmin::build_matroid_dual_certificate(inst, v, opts)
                                            : maxmin::build_dual_certificate(inst, v, opts);
            auto check = maxmin::verify_certificate(inst, cert, opts);
            return certificate_dict(inst, cert, check);
        },
        py::arg("instance"), py::arg("opt") = std::nullopt, py::arg("budget") = std::nullopt);

    m.def(
        "gen_sylvester",
        [](int levels) {
            auto fam = maxmin::gen_sylvester_additive(levels);
            py::dict out;
            out["delta"] = maxmin::value_str(fam.delta);
            out["threshold"] = maxmin::value_str(fam.threshold);
            out["greedy_min"] = maxmin::value_str(fam.greedy_min);
            out["partial_min"] = maxmin::value_str(fam.partial_min);
            out["spare_item"] = fam.instance.label(fam.spare_item);
            out["greedy_reference"] = allocation_dict(fam.instance, fam.greedy_reference);
            out["partial_reference"] = allocation_dict(fam.instance, fam.partial_reference);
            py::list porder;
            for (int p : fam.policy.player_order()) porder.append(p);
            out["player_order"] = porder;
            out["instance"] = fam.instance;
            return out;
        },
        py::arg("levels") = 3);

    m.def(
        "gen_sylvester_lift",
        [](int levels) {
            auto base = maxmin::gen_sylvester_additive(levels);
            auto fam = maxmin::lift_to_submodular(base);
            py::dict out;
            out["delta"] = maxmin::value_str(fam.delta);
            out["threshold"] = maxmin::value_str(fam.threshold);
            out["special_player"] = fam.special_player;
            out["special_cap"] = maxmin::value_str(fam.special_cap);
            out["ratio"] = maxmin::value_str(fam.ratio);
            out["copies"] = fam.copies;
            out["b_star"] = allocation_dict(fam.instance, fam.b_star);
            py::list porder;
            for (int p : fam.policy.player_order()) porder.append(p);
            out["player_order"] = porder;
            out["instance"] = fam.instance;
            return out;
        },
        py::arg("levels") = 2);

    m.def("version", []() { return std::string("1.0.0"); });
}
