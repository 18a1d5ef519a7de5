#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxmin/configlp.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/exact.hpp"
#include "maxmin/generators.hpp"
#include "maxmin/greedy.hpp"
#include "maxmin/io.hpp"

namespace {

using maxmin::Value;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitBudget = 4;
constexpr int kExitVerification = 5;

maxmin::ExactOptions exact_options(std::optional<long long> budget_flag) {
    maxmin::ExactOptions opts;
    if (const char* env = std::getenv("MAXMIN_BUDGET")) {
        try {
            opts.budget = std::stoll(env);
        } catch (...) {
            throw maxmin::UsageError("MAXMIN_BUDGET is not an integer");
        }
    }
    if (budget_flag) opts.budget = *budget_flag;
    if (opts.budget < 1) throw maxmin::UsageError("budget must be positive");
    return opts;
}

maxmin::TieBreakPolicy load_policy(const std::string& spec, const maxmin::Instance& inst) {
    if (spec.empty() || spec == "lex")
        return maxmin::TieBreakPolicy::lexicographic(inst.n(), inst.m());
    return maxmin::read_policy_file(spec, inst);
}

void emit(const std::string& text) { std::cout << text; }

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw maxmin::UsageError("cannot write to " + path);
    out << text;
}

std::string allocation_text(const maxmin::Allocation& alloc, const maxmin::Instance& inst) {
    std::ostringstream out;
    for (int p = 0; p < alloc.players(); ++p) {
        out << "player " << p << ":";
        alloc.bundles[p].for_each([&](int j) { out << " " << inst.label(j); });
        out << " | value " << maxmin::value_str(evaluate(inst.valuation(), alloc.bundles[p]))
            << "\n";
    }
    out << "unallocated:";
    alloc.unallocated.for_each([&](int j) { out << " " << inst.label(j); });
    out << "\n";
    return out.str();
}

int cmd_solve(const std::string& path, const std::string& alpha_text,
              const std::string& threshold_text, const std::string& tiebreak, bool trace,
              bool as_json) {
    maxmin::Instance inst = maxmin::read_instance_file(path);
    if (inst.has_matroids())
        throw maxmin::UnsupportedError("greedy does not support matroids");
    maxmin::TieBreakPolicy policy = load_policy(tiebreak, inst);
    if (alpha_text.empty() == threshold_text.empty())
        throw maxmin::UsageError("pass exactly one of --alpha or --threshold");

    json out;
    std::ostringstream text;
    if (!alpha_text.empty()) {
        Value alpha = maxmin::parse_value(alpha_text);
        maxmin::ApproxResult res = inst.cardinality_cap()
                                       ? maxmin::solve_approx_cardinality(inst, alpha, policy)
                                       : maxmin::solve_approx(inst, alpha, policy);
        out["achieved_min"] = maxmin::value_str(res.achieved_min);
        out["guessed_opt"] = maxmin::value_str(res.guessed_opt);
        out["threshold"] = maxmin::value_str(alpha * res.guessed_opt);
        out["allocation"] = maxmin::allocation_to_json(res.allocation, inst);
        if (trace) out["trace"] = maxmin::trace_to_json(res.trace, inst);
        text << "achieved min " << maxmin::value_str(res.achieved_min) << "\n";
        text << "guessed opt " << maxmin::value_str(res.guessed_opt) << " (threshold "
             << maxmin::value_str(alpha * res.guessed_opt) << ")\n";
        text << allocation_text(res.allocation, inst);
        if (trace) text << maxmin::render_trace(res.trace, inst);
    } else {
        Value threshold = maxmin::parse_value(threshold_text);
        maxmin::GreedyResult res = inst.cardinality_cap()
                                       ? maxmin::greedy_cardinality(inst, threshold, policy)
                                       : maxmin::greedy_with_threshold(inst, threshold, policy);
        Value achieved = maxmin::min_bundle_value(inst.valuation(), res.allocation);
        out["achieved_min"] = maxmin::value_str(achieved);
        out["threshold"] = maxmin::value_str(threshold);
        out["allocation"] = maxmin::allocation_to_json(res.allocation, inst);
        if (trace) out["trace"] = maxmin::trace_to_json(res.trace, inst);
        text << "achieved min " << maxmin::value_str(achieved) << "\n";
        text << "threshold " << maxmin::value_str(threshold) << "\n";
        text << allocation_text(res.allocation, inst);
        if (trace) text << maxmin::render_trace(res.trace, inst);
    }
    emit(as_json ? maxmin::dump_json(out) : text.str());
    return kExitOk;
}

int cmd_exact(const std::string& path, std::optional<long long> budget, bool as_json) {
    maxmin::Instance inst = maxmin::read_instance_file(path);
    maxmin::OptResult res = maxmin::opt_maxmin(inst, exact_options(budget));
    if (as_json) {
        json out{{"opt", maxmin::value_str(res.value)},
                 {"allocation", maxmin::allocation_to_json(res.allocation, inst)},
                 {"nodes", res.nodes}};
        emit(maxmin::dump_json(out));
    } else {
        std::ostringstream text;
        text << "opt " << maxmin::value_str(res.value) << "\n";
        text << allocation_text(res.allocation, inst);
        text << "nodes " << res.nodes << "\n";
        emit(text.str());
    }
    return kExitOk;
}

int cmd_lp(const std::string& path, const std::string& threshold_text, bool scan, bool gap,
           std::optional<long long> budget, bool as_json) {
    maxmin::Instance inst = maxmin::read_instance_file(path);
    maxmin::ExactOptions opts = exact_options(budget);
    if (threshold_text.empty() == !scan)
        throw maxmin::UsageError("pass exactly one of --threshold or --scan");

    json out;
    std::ostringstream text;
    if (scan) {
        Value t = maxmin::lp_opt(inst, opts);
        out["lp_opt"] = maxmin::value_str(t);
        text << "lp_opt " << maxmin::value_str(t) << "\n";
        if (gap) {
            Value g = maxmin::integrality_gap(inst, opts);
            out["integrality_gap"] = maxmin::value_str(g);
            text << "gap " << maxmin::value_str(g) << "\n";
        }
    } else {
        Value t = maxmin::parse_value(threshold_text);
        maxmin::LpVerdict verdict = maxmin::decide_configuration_lp(inst, t, opts);
        out["threshold"] = maxmin::value_str(t);
        out["feasible"] = verdict.feasible;
        text << (verdict.feasible ? "FEASIBLE" : "INFEASIBLE") << " at "
             << maxmin::value_str(t) << "\n";
        if (verdict.feasible) {
            out["witness"] = maxmin::witness_to_json(*verdict.witness, inst);
            for (size_t i = 0; i < verdict.witness->configs.size(); ++i) {
                text << "weight " << maxmin::value_str(verdict.witness->weights[i]) << " on {";
                bool first = true;
                verdict.witness->configs[i].for_each([&](int j) {
                    if (!first) text << ", ";
                    text << inst.label(j);
                    first = false;
                });
                text << "}\n";
            }
        } else {
            auto check = maxmin::verify_certificate(inst, *verdict.certificate, opts);
            out["certificate"] = maxmin::certificate_to_json(*verdict.certificate, check, inst);
            text << maxmin::render_certificate(inst, *verdict.certificate, check);
        }
    }
    emit(as_json ? maxmin::dump_json(out) : text.str());
    return kExitOk;
}

int cmd_certify(const std::string& path, int theorem, std::optional<long long> budget,
                bool as_json) {
    maxmin::Instance inst = maxmin::read_instance_file(path);
    maxmin::ExactOptions opts = exact_options(budget);
    if (theorem != 3 && theorem != 8) throw maxmin::UsageError("--theorem must be 3 or 8");
    if (theorem == 3 && inst.has_matroids())
        throw maxmin::UsageError("certificate family 3 needs a matroid-free instance");
    if (theorem == 8 && !inst.has_matroids())
        throw maxmin::UsageError("certificate family 8 needs at least one matroid");

    maxmin::OptResult opt = maxmin::opt_maxmin(inst, opts);
    maxmin::DualCertificate cert = theorem == 3
                                       ? maxmin::build_dual_certificate(inst, opt.value, opts)
                                       : maxmin::build_matroid_dual_certificate(inst, opt.value, opts);
    maxmin::CertificateCheck check = maxmin::verify_certificate(inst, cert, opts);
    if (as_json) {
        json out = maxmin::certificate_to_json(cert, check, inst);
        out["opt"] = maxmin::value_str(opt.value);
        emit(maxmin::dump_json(out));
    } else {
        std::ostringstream text;
        text << "opt " << maxmin::value_str(opt.value) << "\n";
        text << maxmin::render_certificate(inst, cert, check);
        emit(text.str());
    }
    if (!check.ok) return kExitVerification;
    return kExitOk;
}

int cmd_check(const std::string& path, std::optional<long> samples, std::uint64_t seed,
              bool as_json) {
    maxmin::Instance inst = maxmin::read_instance_file(path);
    maxmin::CheckOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    maxmin::CheckReport report = maxmin::check_submodular_monotone(inst.valuation(), opts);
    if (as_json) {
        json out{{"submodular", report.submodular},
                 {"monotone", report.monotone},
                 {"exhaustive", report.exhaustive},
                 {"samples_checked", report.samples_checked}};
        if (report.witness) {
            json w{{"item", inst.label(report.witness->item)},
                   {"smaller", json::array()},
                   {"larger", json::array()}};
            report.witness->smaller.for_each(
                [&](int j) { w["smaller"].push_back(inst.label(j)); });
            report.witness->larger.for_each([&](int j) { w["larger"].push_back(inst.label(j)); });
            out["witness"] = std::move(w);
        }
        emit(maxmin::dump_json(out));
    } else {
        std::ostringstream text;
        text << "submodular: " << (report.submodular ? "yes" : "no") << "\n";
        text << "monotone: " << (report.monotone ? "yes" : "no") << "\n";
        text << "mode: " << (report.exhaustive ? "exhaustive" : "sampled") << "\n";
        if (report.witness) {
            text << "witness: item " << inst.label(report.witness->item) << " with nested sets {";
            bool first = true;
            report.witness->smaller.for_each([&](int j) {
                if (!first) text << ", ";
                text << inst.label(j);
                first = false;
            });
            text << "} within {";
            first = true;
            report.witness->larger.for_each([&](int j) {
                if (!first) text << ", ";
                text << inst.label(j);
                first = false;
            });
            text << "}\n";
        }
        emit(text.str());
    }
    return kExitOk;
}

int cmd_gen(const std::string& family, int levels, const std::string& kind, int items,
            int players, std::uint64_t seed, long weight_bound, const std::string& out_path,
            const std::string& policy_path, const std::string& refs_path) {
    auto write_policy = [&](const maxmin::TieBreakPolicy& policy, const maxmin::Instance& inst) {
        if (policy_path.empty()) return;
        write_output(maxmin::dump_json(maxmin::policy_to_json(policy, inst)), policy_path);
    };
    auto write_refs = [&](const json& refs) {
        if (refs_path.empty()) return;
        write_output(maxmin::dump_json(refs), refs_path);
    };

    if (family == "gap") {
        write_output(maxmin::write_instance(maxmin::gen_gap_instance()), out_path);
        return kExitOk;
    }
    if (family == "random") {
        maxmin::RandomKind rk;
        if (kind == "additive")
            rk = maxmin::RandomKind::additive;
        else if (kind == "coverage")
            rk = maxmin::RandomKind::coverage;
        else
            throw maxmin::UsageError("--kind must be additive or coverage");
        write_output(maxmin::write_instance(maxmin::gen_random(rk, items, players, seed, weight_bound)),
                     out_path);
        return kExitOk;
    }
    if (family == "sylvester") {
        maxmin::SylvesterFamily fam = maxmin::gen_sylvester_additive(levels);
        write_output(maxmin::write_instance(fam.instance), out_path);
        write_policy(fam.policy, fam.instance);
        write_refs(maxmin::sylvester_refs_to_json(fam));
        return kExitOk;
    }
    if (family == "sylvester-lift") {
        maxmin::SylvesterFamily base = maxmin::gen_sylvester_additive(levels);
        maxmin::LiftedFamily fam = maxmin::lift_to_submodular(base);
        write_output(maxmin::write_instance(fam.instance), out_path);
        write_policy(fam.policy, fam.instance);
        write_refs(maxmin::lift_refs_to_json(fam));
        return kExitOk;
    }
    throw maxmin::UsageError("unknown family: " + family +
                             " (expected gap, random, sylvester, sylvester-lift)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"max-min allocation toolkit: threshold greedy, exact oracles, configuration-LP"
                 " duals"};
    app.require_subcommand(1);

    std::string instance_path, alpha_text, threshold_text, tiebreak = "lex";
    bool trace = false, as_json = false, scan = false, gap = false;
    std::optional<long long> budget;
    int theorem = 0;
    std::optional<long> samples;
    std::uint64_t seed = 0;
    std::string family, kind = "additive", out_path, policy_path, refs_path;
    int levels = 3, items = 6, players = 2;
    long weight_bound = 10;

    CLI::App* solve = app.add_subcommand("solve", "run the threshold greedy");
    solve->add_option("instance", instance_path)->required();
    solve->add_option("--alpha", alpha_text, "approximation parameter p/q; searches the grid");
    solve->add_option("--threshold", threshold_text, "run once at this fixed threshold");
    solve->add_option("--tiebreak", tiebreak, "lex or a policy file path");
    solve->add_flag("--trace", trace);
    solve->add_flag("--json", as_json);

    CLI::App* exact = app.add_subcommand("exact", "exact max-min optimum by enumeration");
    exact->add_option("instance", instance_path)->required();
    exact->add_option("--budget", budget);
    exact->add_flag("--json", as_json);

    CLI::App* lp = app.add_subcommand("lp", "configuration-LP feasibility and scans");
    lp->add_option("instance", instance_path)->required();
    lp->add_option("--threshold", threshold_text);
    lp->add_flag("--scan", scan, "search the largest feasible threshold");
    lp->add_flag("--gap", gap, "with --scan, also report lp_opt / opt");
    lp->add_option("--budget", budget);
    lp->add_flag("--json", as_json);

    CLI::App* certify = app.add_subcommand("certify", "build and verify a dual certificate");
    certify->add_option("instance", instance_path)->required();
    certify->add_option("--theorem", theorem, "3 (matroid-free, 3*opt) or 8 (matroids, 5*opt)")
        ->required();
    certify->add_option("--budget", budget);
    certify->add_flag("--json", as_json);

    CLI::App* check = app.add_subcommand("check", "submodularity and monotonicity check");
    check->add_option("instance", instance_path)->required();
    check->add_option("--samples", samples, "sampled mode with this many draws");
    check->add_option("--seed", seed);
    check->add_flag("--json", as_json);

    CLI::App* gen = app.add_subcommand("gen", "write generated instances");
    gen->add_option("family", family, "gap | random | sylvester | sylvester-lift")->required();
    gen->add_option("--levels", levels, "depth of the hard additive family");
    gen->add_option("--kind", kind, "additive | coverage");
    gen->add_option("--items", items);
    gen->add_option("--players", players);
    gen->add_option("--seed", seed);
    gen->add_option("--weight-bound", weight_bound);
    gen->add_option("--out", out_path, "output path, - for stdout");
    gen->add_option("--policy-out", policy_path);
    gen->add_option("--refs-out", refs_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, alpha_text, threshold_text, tiebreak, trace, as_json);
        if (exact->parsed()) return cmd_exact(instance_path, budget, as_json);
        if (lp->parsed()) return cmd_lp(instance_path, threshold_text, scan, gap, budget, as_json);
        if (certify->parsed()) return cmd_certify(instance_path, theorem, budget, as_json);
        if (check->parsed()) return cmd_check(instance_path, samples, seed, as_json);
        if (gen->parsed())
            return cmd_gen(family, levels, kind, items, players, seed, weight_bound, out_path,
                           policy_path, refs_path);
    } catch (const maxmin::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const maxmin::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const maxmin::UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const maxmin::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const maxmin::VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
