#pragma once

#include <string>

#include "json.hpp"

#include "facline/analysis.hpp"

namespace facline {

// JSON shapes are stable: field names and order below are the contract the
// command line prints and tests parse back.
//
// ErrorReport: {"mechanism", "objective", "convention", "profile",
//               "mechanism_cost", "optimal_cost", "error"}
// DeviationWitness: {"profile", "agent", "misreport", "truthful_cost",
//                    "deviated_cost", "gain"}

std::string objective_name(const Objective& objective);      // "max" or "avg"
std::string convention_name(MaxCostConvention convention);
Objective parse_objective(const std::string& kind, const std::string& convention);
MaxCostConvention parse_convention(const std::string& name);

nlohmann::ordered_json to_json(const ErrorReport& report);
nlohmann::ordered_json to_json(const DeviationWitness& witness);

ErrorReport error_report_from_json(const nlohmann::ordered_json& value);
DeviationWitness deviation_witness_from_json(const nlohmann::ordered_json& value);

}  // namespace facline
