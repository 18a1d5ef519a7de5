#include "maxmin/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "maxmin/errors.hpp"

namespace maxmin {

using nlohmann::json;

namespace {

json value_json(const Value& v) { return value_str(v); }

Value value_from(const json& j, const char* what) {
    if (!j.is_string()) throw UsageError(std::string(what) + ": rationals are \"p/q\" strings");
    return parse_value(j.get<std::string>());
}

std::string subset_key(const ItemSet& s, const std::vector<std::string>& labels) {
    std::vector<std::string> names;
    s.for_each([&](int j) { names.push_back(labels[j]); });
    std::sort(names.begin(), names.end());
    std::string key;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) key += ",";
        key += names[i];
    }
    return key;
}

json valuation_json(const SetFunction& f, const std::vector<std::string>& labels);

json valuation_json_node(const SetFunction& f, const std::vector<std::string>& labels) {
    return valuation_json(f, labels);
}

json valuation_json(const SetFunction& f, const std::vector<std::string>& labels) {
    json out;
    std::visit(
        [&](const auto& fn) {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, AdditiveFn>) {
                out["type"] = "additive";
                json w = json::object();
                for (size_t j = 0; j < fn.weights.size(); ++j) w[labels[j]] = value_json(fn.weights[j]);
                out["weights"] = std::move(w);
            } else if constexpr (std::is_same_v<T, CoverageFn>) {
                out["type"] = "coverage";
                json universe = json::array();
                for (size_t e = 0; e < fn.element_weights.size(); ++e)
                    universe.push_back({{"label", "u" + std::to_string(e)},
                                        {"weight", value_json(fn.element_weights[e])}});
                out["universe"] = std::move(universe);
                json covers = json::object();
                for (size_t j = 0; j < fn.covers.size(); ++j) {
                    json list = json::array();
                    for (int e : fn.covers[j]) list.push_back("u" + std::to_string(e));
                    covers[labels[j]] = std::move(list);
                }
                out["covers"] = std::move(covers);
            } else if constexpr (std::is_same_v<T, TableFn>) {
                out["type"] = "table";
                json values = json::object();
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fn.n); ++mask) {
                    ItemSet s = ItemSet::from_mask(mask, fn.n);
                    values[subset_key(s, labels)] = value_json(fn.values[mask]);
                }
                out["values"] = std::move(values);
            } else if constexpr (std::is_same_v<T, TruncatedFn>) {
                out["type"] = "truncated";
                out["cap"] = value_json(fn.cap);
                out["inner"] = valuation_json_node(*fn.inner, labels);
            } else if constexpr (std::is_same_v<T, AugmentedFn>) {
                out["type"] = "augmented";
                out["bonus"] = value_json(fn.bonus);
                out["item"] = labels.back();
                std::vector<std::string> inner_labels(labels.begin(), labels.end() - 1);
                out["inner"] = valuation_json_node(*fn.inner, inner_labels);
            } else {
                out["type"] = "disjoint_sum";
                json parts = json::array();
                for (size_t i = 0; i < fn.parts.size(); ++i) {
                    int off = fn.offsets[i];
                    int sz = fn.parts[i]->ground_size();
                    std::vector<std::string> part_labels(labels.begin() + off,
                                                         labels.begin() + off + sz);
                    parts.push_back({{"items", part_labels},
                                     {"function", valuation_json_node(*fn.parts[i], part_labels)}});
                }
                out["parts"] = std::move(parts);
            }
        },
        f.node());
    return out;
}

SetFunction valuation_from_json(const json& j, const std::vector<std::string>& labels) {
    if (!j.is_object() || !j.contains("type")) throw UsageError("valuation needs a type");
    std::string type = j.at("type").get<std::string>();
    auto index_of = [&](const std::string& label) -> int {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw UsageError("unknown item label: " + label);
        return static_cast<int>(it - labels.begin());
    };

    if (type == "additive") {
        const json& w = j.at("weights");
        std::vector<Value> weights(labels.size(), Value(0));
        std::vector<char> seen(labels.size(), 0);
        for (auto it = w.begin(); it != w.end(); ++it) {
            int idx = index_of(it.key());
            weights[idx] = value_from(it.value(), "weight");
            seen[idx] = 1;
        }
        for (size_t i = 0; i < labels.size(); ++i)
            if (!seen[i]) throw UsageError("missing weight for item " + labels[i]);
        return SetFunction::additive(std::move(weights));
    }
    if (type == "coverage") {
        const json& universe = j.at("universe");
        std::vector<Value> element_weights;
        std::vector<std::string> element_labels;
        for (const auto& entry : universe) {
            element_labels.push_back(entry.at("label").get<std::string>());
            element_weights.push_back(value_from(entry.at("weight"), "element weight"));
        }
        auto element_of = [&](const std::string& label) -> int {
            auto it = std::find(element_labels.begin(), element_labels.end(), label);
            if (it == element_labels.end()) throw UsageError("unknown element label: " + label);
            return static_cast<int>(it - element_labels.begin());
        };
        std::vector<std::vector<int>> covers(labels.size());
        if (j.contains("covers")) {
            const json& cov = j.at("covers");
            for (auto it = cov.begin(); it != cov.end(); ++it) {
                int idx = index_of(it.key());
                for (const auto& el : it.value()) covers[idx].push_back(element_of(el.get<std::string>()));
            }
        }
        return SetFunction::coverage(std::move(element_weights), std::move(covers));
    }
    if (type == "table") {
        int n = static_cast<int>(labels.size());
        if (n > 24) throw UsageError("table valuations support at most 24 items");
        const json& values = j.at("values");
        std::vector<Value> table(size_t{1} << n, Value(0));
        std::vector<char> seen(size_t{1} << n, 0);
        for (auto it = values.begin(); it != values.end(); ++it) {
            std::uint64_t mask = 0;
            std::stringstream parts(it.key());
            std::string token;
            while (std::getline(parts, token, ',')) {
                if (token.empty()) continue;
                mask |= std::uint64_t{1} << index_of(token);
            }
            if (seen[mask]) throw UsageError("duplicate table key: " + it.key());
            table[mask] = value_from(it.value(), "table value");
            seen[mask] = 1;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            if (!seen[mask]) throw UsageError("table is missing a subset value");
        return SetFunction::table(n, std::move(table));
    }
    if (type == "truncated") {
        return SetFunction::truncated(valuation_from_json(j.at("inner"), labels),
                                      value_from(j.at("cap"), "cap"));
    }
    if (type == "augmented") {
        if (labels.empty()) throw UsageError("augmented valuation needs at least the new item");
        std::string item = j.at("item").get<std::string>();
        if (item != labels.back())
            throw UsageError("augmented item must be the last item of its block");
        std::vector<std::string> inner_labels(labels.begin(), labels.end() - 1);
        return SetFunction::augmented(valuation_from_json(j.at("inner"), inner_labels),
                                      value_from(j.at("bonus"), "bonus"));
    }
    if (type == "disjoint_sum") {
        std::vector<SetFunction> parts;
        size_t cursor = 0;
        for (const auto& part : j.at("parts")) {
            std::vector<std::string> part_labels =
                part.at("items").get<std::vector<std::string>>();
            for (const auto& l : part_labels) {
                if (cursor >= labels.size() || labels[cursor] != l)
                    throw UsageError("disjoint_sum parts must list the items in instance order");
                ++cursor;
            }
            parts.push_back(valuation_from_json(part.at("function"), part_labels));
        }
        if (cursor != labels.size())
            throw UsageError("disjoint_sum parts do not cover every item");
        return SetFunction::disjoint_sum(std::move(parts));
    }
    throw UsageError("unknown valuation type: " + type);
}

json matroid_json(const Matroid& m, const std::vector<std::string>& labels) {
    json out;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, UniformMatroid>) {
                out["type"] = "uniform";
                out["rank"] = node.rank;
            } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
                out["type"] = "partition";
                json blocks = json::array();
                for (size_t b = 0; b < node.blocks.size(); ++b) {
                    json items = json::array();
                    node.blocks[b].for_each([&](int j) { items.push_back(labels[j]); });
                    blocks.push_back({{"items", items}, {"capacity", node.capacities[b]}});
                }
                out["blocks"] = std::move(blocks);
            } else {
                out["type"] = node.matroid ? "explicit" : "downward_closed";
                json sets = json::array();
                for (std::uint32_t mask : node.independent) {
                    json set = json::array();
                    for (int j = 0; j < node.n; ++j)
                        if ((mask >> j) & 1) set.push_back(labels[j]);
                    sets.push_back(std::move(set));
                }
                out[node.matroid ? "independent_sets" : "sets"] = std::move(sets);
            }
        },
        m.node());
    return out;
}

Matroid matroid_from_json(const json& j, const std::vector<std::string>& labels) {
    int n = static_cast<int>(labels.size());
    auto index_of = [&](const std::string& label) -> int {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw UsageError("unknown item label in matroid: " + label);
        return static_cast<int>(it - labels.begin());
    };
    std::string type = j.at("type").get<std::string>();
    if (type == "uniform") return Matroid::uniform(n, j.at("rank").get<int>());
    if (type == "partition") {
        std::vector<ItemSet> blocks;
        std::vector<int> caps;
        for (const auto& b : j.at("blocks")) {
            ItemSet block(n);
            for (const auto& l : b.at("items")) block.set(index_of(l.get<std::string>()));
            blocks.push_back(std::move(block));
            caps.push_back(b.at("capacity").get<int>());
        }
        return Matroid::partition(n, std::move(blocks), std::move(caps));
    }
    if (type == "explicit" || type == "downward_closed") {
        const json& sets = j.at(type == "explicit" ? "independent_sets" : "sets");
        std::vector<ItemSet> family;
        for (const auto& s : sets) {
            ItemSet set(n);
            for (const auto& l : s) set.set(index_of(l.get<std::string>()));
            family.push_back(std::move(set));
        }
        return type == "explicit" ? Matroid::explicit_family(n, family)
                                  : Matroid::downward_closed(n, family);
    }
    throw UsageError("unknown matroid type: " + type);
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json out;
    out["version"] = 1;
    out["n"] = inst.n();
    out["m"] = inst.m();
    out["items"] = inst.labels();
    out["valuation"] = valuation_json(inst.valuation(), inst.labels());
    json mats = json::array();
    for (const auto& m : inst.matroids()) mats.push_back(matroid_json(m, inst.labels()));
    out["matroids"] = std::move(mats);
    if (inst.cardinality_cap()) out["cardinality_cap"] = *inst.cardinality_cap();
    return out;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("instance file must hold a JSON object");
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw UsageError("unsupported instance file version");
    std::vector<std::string> labels = j.at("items").get<std::vector<std::string>>();
    if (j.at("n").get<int>() != static_cast<int>(labels.size()))
        throw UsageError("item count does not match the items list");
    int m = j.at("m").get<int>();
    SetFunction f = valuation_from_json(j.at("valuation"), labels);
    std::vector<Matroid> matroids;
    if (j.contains("matroids"))
        for (const auto& mj : j.at("matroids")) matroids.push_back(matroid_from_json(mj, labels));
    std::optional<int> cap;
    if (j.contains("cardinality_cap") && !j.at("cardinality_cap").is_null())
        cap = j.at("cardinality_cap").get<int>();
    return Instance(std::move(labels), m, std::move(f), std::move(matroids), cap);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string write_instance(const Instance& inst) { return dump_json(instance_to_json(inst)); }

Instance parse_instance(const std::string& text) {
    json j = json::parse(text, nullptr, true, false);
    return instance_from_json(j);
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const json::exception& e) {
        throw UsageError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write instance file: " + path);
    out << write_instance(inst);
}

json policy_to_json(const TieBreakPolicy& policy, const Instance& inst) {
    json out;
    out["tiebreak"] = "permutation";
    json items = json::array();
    for (int j : policy.item_order()) items.push_back(inst.label(j));
    out["item_order"] = std::move(items);
    out["player_order"] = policy.player_order();
    return out;
}

TieBreakPolicy policy_from_json(const json& j, const Instance& inst) {
    std::string kind = j.at("tiebreak").get<std::string>();
    if (kind == "lexicographic") return TieBreakPolicy::lexicographic(inst.n(), inst.m());
    if (kind != "permutation") throw UsageError("unknown tiebreak kind: " + kind);
    std::vector<int> item_order;
    for (const auto& l : j.at("item_order")) {
        int idx = inst.item_by_label(l.get<std::string>());
        if (idx < 0) throw UsageError("unknown item label in policy: " + l.get<std::string>());
        item_order.push_back(idx);
    }
    std::vector<int> player_order = j.at("player_order").get<std::vector<int>>();
    return TieBreakPolicy::by_permutation(std::move(item_order), std::move(player_order));
}

TieBreakPolicy read_policy_file(const std::string& path, const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open policy file: " + path);
    try {
        json j = json::parse(in);
        return policy_from_json(j, inst);
    } catch (const json::exception& e) {
        throw UsageError("malformed JSON in " + path + ": " + e.what());
    }
}

json allocation_to_json(const Allocation& alloc, const Instance& inst) {
    json bundles = json::array();
    for (const auto& b : alloc.bundles) {
        json bundle = json::array();
        b.for_each([&](int j) { bundle.push_back(inst.label(j)); });
        bundles.push_back(std::move(bundle));
    }
    json rest = json::array();
    alloc.unallocated.for_each([&](int j) { rest.push_back(inst.label(j)); });
    return {{"bundles", std::move(bundles)}, {"unallocated", std::move(rest)}};
}

Allocation allocation_from_json(const json& j, const Instance& inst) {
    Allocation alloc = Allocation::empty(inst.n(), inst.m());
    const json& bundles = j.at("bundles");
    if (static_cast<int>(bundles.size()) != inst.m())
        throw UsageError("allocation bundle count does not match the player count");
    auto index_of = [&](const json& l) {
        int idx = inst.item_by_label(l.get<std::string>());
        if (idx < 0) throw UsageError("unknown item label: " + l.get<std::string>());
        return idx;
    };
    for (int p = 0; p < inst.m(); ++p)
        for (const auto& l : bundles[p]) {
            int item = index_of(l);
            alloc.bundles[p].set(item);
            alloc.unallocated.reset(item);
        }
    alloc.validate(inst.n());
    return alloc;
}

json trace_to_json(const GreedyTrace& trace, const Instance& inst) {
    auto steps_json = [&](const std::vector<GreedyStep>& steps) {
        json out = json::array();
        for (const auto& s : steps)
            out.push_back({{"item", inst.label(s.item)},
                           {"player", s.player},
                           {"gain", value_str(s.gain)}});
        return out;
    };
    return {{"threshold", value_str(trace.threshold)},
            {"seeding", steps_json(trace.seeding)},
            {"steps", steps_json(trace.steps)}};
}

std::string render_trace(const GreedyTrace& trace, const Instance& inst) {
    std::ostringstream out;
    out << "threshold " << value_str(trace.threshold) << "\n";
    int index = 0;
    for (const auto& s : trace.seeding)
        out << "seed " << index++ << " item " << inst.label(s.item) << " player " << s.player
            << " gain " << value_str(s.gain) << "\n";
    index = 0;
    for (const auto& s : trace.steps)
        out << "step " << index++ << " item " << inst.label(s.item) << " player " << s.player
            << " gain " << value_str(s.gain) << "\n";
    return out.str();
}

json certificate_to_json(const DualCertificate& cert, const CertificateCheck& check,
                         const Instance& inst) {
    json y = json::object();
    for (int j = 0; j < inst.n(); ++j) y[inst.label(j)] = value_str(cert.y[j]);
    json out{{"threshold", value_str(cert.threshold)},
             {"strict", cert.strict},
             {"matroid_constrained", cert.matroid_constrained},
             {"sum_y", value_str(cert.sum())},
             {"y", std::move(y)},
             {"verified", check.ok}};
    if (cert.repair)
        out["repair"] = {{"item", inst.label(cert.repair->item)},
                         {"amount", value_str(cert.repair->amount)}};
    if (cert.min_player) out["min_player"] = *cert.min_player;
    if (!check.ok) {
        out["reason"] = check.reason;
        if (check.violator) {
            json v = json::array();
            check.violator->for_each([&](int j) { v.push_back(inst.label(j)); });
            out["violator"] = std::move(v);
        }
    }
    return out;
}

json witness_to_json(const PrimalWitness& witness, const Instance& inst) {
    json configs = json::array();
    for (size_t i = 0; i < witness.configs.size(); ++i) {
        json items = json::array();
        witness.configs[i].for_each([&](int j) { items.push_back(inst.label(j)); });
        configs.push_back({{"items", std::move(items)}, {"weight", value_str(witness.weights[i])}});
    }
    return {{"configurations", std::move(configs)},
            {"split", "uniform over players: x[p,C] = weight / m"}};
}

json sylvester_refs_to_json(const SylvesterFamily& fam) {
    return {{"delta", value_str(fam.delta)},
            {"threshold", value_str(fam.threshold)},
            {"greedy_min", value_str(fam.greedy_min)},
            {"partial_min", value_str(fam.partial_min)},
            {"spare_item", fam.instance.label(fam.spare_item)},
            {"ratio_limit", value_str(fam.ratio_limit)},
            {"greedy_reference", allocation_to_json(fam.greedy_reference, fam.instance)},
            {"partial_reference", allocation_to_json(fam.partial_reference, fam.instance)}};
}

json lift_refs_to_json(const LiftedFamily& fam) {
    return {{"delta", value_str(fam.delta)},
            {"threshold", value_str(fam.threshold)},
            {"special_player", fam.special_player},
            {"special_cap", value_str(fam.special_cap)},
            {"ratio", value_str(fam.ratio)},
            {"copies", fam.copies},
            {"b_star", allocation_to_json(fam.b_star, fam.instance)}};
}

}  // namespace maxmin
