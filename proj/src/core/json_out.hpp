#pragma once

#include <string>

#include "core/dynamics.hpp"
#include "core/experiments.hpp"
#include "core/graph.hpp"
#include "core/monopoly.hpp"

namespace mjr {

// All emitters produce deterministic, ordered, 2-space-indented JSON with a
// trailing newline. Field names are part of the output contract.

std::string sweep_to_json(const SweepResult& r, bool include_records);
std::string tree_audit_to_json(const TreeAuditResult& r);
std::string immunity_to_json(const ImmunityResult& r);
std::string propagation_to_json(const PropagationResult& r);

std::string consensus_report_to_json(const Graph& g, const ConsensusReport& rep,
                                     bool include_trajectory);
std::string immunity_report_to_json(const ImmunityReport& rep);
std::string dynamo_result_to_json(const DynamoSearchResult& res);

}  // namespace mjr
