#include "facline/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace facline {

namespace {

void require_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " " +
                                    std::to_string(value) +
                                    " outside [0,1]");
    }
}

}  // namespace

LocationProfile::LocationProfile(std::vector<double> reports)
    : reports_(std::move(reports)) {
    if (reports_.empty()) {
        throw std::invalid_argument("location profile needs at least one report");
    }
    for (double r : reports_) require_unit_interval(r, "report");
    std::sort(reports_.begin(), reports_.end());
}

Placement::Placement(std::vector<double> locations)
    : locations_(std::move(locations)) {
    if (locations_.empty()) {
        throw std::invalid_argument("placement needs at least one facility");
    }
    for (double l : locations_) require_unit_interval(l, "facility location");
    std::sort(locations_.begin(), locations_.end());
}

RandomizedPlacement::RandomizedPlacement(std::vector<WeightedPlacement> atoms) {
    if (atoms.empty()) {
        throw std::invalid_argument("randomized placement needs at least one atom");
    }
    const std::size_t arity = atoms.front().placement.facility_count();
    double sum = 0.0;
    for (const WeightedPlacement& a : atoms) {
        if (a.placement.facility_count() != arity) {
            throw std::invalid_argument("atoms mix placements of different arity");
        }
        if (!(a.probability >= 0.0)) {
            throw std::invalid_argument("atom probability is negative");
        }
        sum += a.probability;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        throw std::invalid_argument("atom probabilities sum to " +
                                    std::to_string(sum) + ", expected 1");
    }

    // Canonical form: merge coinciding placements, drop zero-mass atoms,
    // order atoms by their location vectors.
    std::map<std::vector<double>, double> merged;
    for (WeightedPlacement& a : atoms) {
        merged[a.placement.locations()] += a.probability;
    }
    for (auto& [locations, probability] : merged) {
        if (probability > 0.0) {
            atoms_.push_back({Placement(locations), probability});
        }
    }
}

RandomizedPlacement RandomizedPlacement::degenerate(Placement placement) {
    return RandomizedPlacement({{std::move(placement), 1.0}});
}

std::size_t RandomizedPlacement::facility_count() const noexcept {
    return atoms_.front().placement.facility_count();
}

double RandomizedPlacement::total_probability() const noexcept {
    double sum = 0.0;
    for (const WeightedPlacement& a : atoms_) sum += a.probability;
    return sum;
}

double point_cost(double p, const Placement& placement) {
    double best = 2.0;
    for (double l : placement.locations()) {
        best = std::min(best, std::abs(p - l));
    }
    return best;
}

double expected_point_cost(double p, const RandomizedPlacement& distribution) {
    double total = 0.0;
    for (const WeightedPlacement& a : distribution.atoms()) {
        total += a.probability * point_cost(p, a.placement);
    }
    return total;
}

double max_cost(const LocationProfile& profile, const Placement& placement) {
    double worst = 0.0;
    for (double r : profile.reports()) {
        worst = std::max(worst, point_cost(r, placement));
    }
    return worst;
}

double max_cost(const LocationProfile& profile,
                const RandomizedPlacement& distribution,
                MaxCostConvention convention) {
    if (convention == MaxCostConvention::ExpectationOfMax) {
        double total = 0.0;
        for (const WeightedPlacement& a : distribution.atoms()) {
            total += a.probability * max_cost(profile, a.placement);
        }
        return total;
    }
    double worst = 0.0;
    for (double r : profile.reports()) {
        worst = std::max(worst, expected_point_cost(r, distribution));
    }
    return worst;
}

double average_cost(const LocationProfile& profile, const Placement& placement) {
    double total = 0.0;
    for (double r : profile.reports()) total += point_cost(r, placement);
    return total / static_cast<double>(profile.size());
}

double average_cost(const LocationProfile& profile,
                    const RandomizedPlacement& distribution) {
    double total = 0.0;
    for (double r : profile.reports()) total += expected_point_cost(r, distribution);
    return total / static_cast<double>(profile.size());
}

std::size_t facility_count(const FacilityOutcome& outcome) {
    if (const auto* p = std::get_if<Placement>(&outcome)) return p->facility_count();
    return std::get<RandomizedPlacement>(outcome).facility_count();
}

double expected_point_cost(double p, const FacilityOutcome& outcome) {
    if (const auto* placed = std::get_if<Placement>(&outcome)) {
        return point_cost(p, *placed);
    }
    return expected_point_cost(p, std::get<RandomizedPlacement>(outcome));
}

double objective_cost(const LocationProfile& profile, const FacilityOutcome& outcome,
                      const Objective& objective) {
    if (const auto* placed = std::get_if<Placement>(&outcome)) {
        return objective.kind == ObjectiveKind::MaxCost
                   ? max_cost(profile, *placed)
                   : average_cost(profile, *placed);
    }
    const auto& distribution = std::get<RandomizedPlacement>(outcome);
    return objective.kind == ObjectiveKind::MaxCost
               ? max_cost(profile, distribution, objective.convention)
               : average_cost(profile, distribution);
}

}  // namespace facline
