#include "facline/serialize.hpp"

#include <stdexcept>

namespace facline {

std::string objective_name(const Objective& objective) {
    return objective.kind == ObjectiveKind::MaxCost ? "max" : "avg";
}

std::string convention_name(MaxCostConvention convention) {
    return convention == MaxCostConvention::ExpectationOfMax
               ? "expectation-of-max"
               : "max-of-expectations";
}

MaxCostConvention parse_convention(const std::string& name) {
    if (name == "expectation-of-max") return MaxCostConvention::ExpectationOfMax;
    if (name == "max-of-expectations") return MaxCostConvention::MaxOfExpectations;
    throw std::invalid_argument("unknown max-cost convention '" + name + "'");
}

Objective parse_objective(const std::string& kind, const std::string& convention) {
    if (kind == "avg") return Objective::average_cost();
    if (kind == "max") return Objective::max_cost(parse_convention(convention));
    throw std::invalid_argument("unknown objective '" + kind +
                                "', expected 'max' or 'avg'");
}

nlohmann::ordered_json to_json(const ErrorReport& report) {
    return nlohmann::ordered_json{
        {"mechanism", report.mechanism},
        {"objective", objective_name(report.objective)},
        {"convention", convention_name(report.objective.convention)},
        {"profile", report.profile.reports()},
        {"mechanism_cost", report.mechanism_cost},
        {"optimal_cost", report.optimal_cost},
        {"error", report.error},
    };
}

nlohmann::ordered_json to_json(const DeviationWitness& witness) {
    return nlohmann::ordered_json{
        {"profile", witness.profile.reports()},
        {"agent", witness.agent},
        {"misreport", witness.misreport},
        {"truthful_cost", witness.truthful_cost},
        {"deviated_cost", witness.deviated_cost},
        {"gain", witness.gain},
    };
}

ErrorReport error_report_from_json(const nlohmann::ordered_json& value) {
    return {
        value.at("mechanism").get<std::string>(),
        parse_objective(value.at("objective").get<std::string>(),
                        value.at("convention").get<std::string>()),
        LocationProfile(value.at("profile").get<std::vector<double>>()),
        value.at("mechanism_cost").get<double>(),
        value.at("optimal_cost").get<double>(),
        value.at("error").get<double>(),
    };
}

DeviationWitness deviation_witness_from_json(const nlohmann::ordered_json& value) {
    return {
        LocationProfile(value.at("profile").get<std::vector<double>>()),
        value.at("agent").get<std::size_t>(),
        value.at("misreport").get<double>(),
        value.at("truthful_cost").get<double>(),
        value.at("deviated_cost").get<double>(),
        value.at("gain").get<double>(),
    };
}

}  // namespace facline
