#pragma once

#include <string>

#include <json.hpp>

#include "maxmin/configlp.hpp"
#include "maxmin/generators.hpp"
#include "maxmin/greedy.hpp"
#include "maxmin/instance.hpp"

namespace maxmin {

// Instance file format, version 1: a single JSON document with every
// number carried as an exact "p/q" string. Serialization is canonical
// (sorted keys, two-space indent), so identical instances produce
// identical bytes.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
std::string write_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

nlohmann::json policy_to_json(const TieBreakPolicy& policy, const Instance& inst);
TieBreakPolicy policy_from_json(const nlohmann::json& j, const Instance& inst);
TieBreakPolicy read_policy_file(const std::string& path, const Instance& inst);

nlohmann::json allocation_to_json(const Allocation& alloc, const Instance& inst);
Allocation allocation_from_json(const nlohmann::json& j, const Instance& inst);

nlohmann::json trace_to_json(const GreedyTrace& trace, const Instance& inst);
// One line per step: index, item label, player, gain as "p/q".
std::string render_trace(const GreedyTrace& trace, const Instance& inst);

nlohmann::json certificate_to_json(const DualCertificate& cert, const CertificateCheck& check,
                                   const Instance& inst);
nlohmann::json witness_to_json(const PrimalWitness& witness, const Instance& inst);

nlohmann::json sylvester_refs_to_json(const SylvesterFamily& fam);
nlohmann::json lift_refs_to_json(const LiftedFamily& fam);

std::string dump_json(const nlohmann::json& j);

}  // namespace maxmin
