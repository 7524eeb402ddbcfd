#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace facline {

/// Probability mass of a distribution must sum to 1 within this slack.
inline constexpr double kProbabilitySumTolerance = 1e-12;

/// Agent reports on the unit interval, stored in non-decreasing order.
/// Mechanisms here are anonymous, so sorting loses no information and makes
/// order statistics (median, percentiles) direct index lookups.
class LocationProfile {
public:
    explicit LocationProfile(std::vector<double> reports);

    std::size_t size() const noexcept { return reports_.size(); }
    double operator[](std::size_t i) const { return reports_[i]; }
    const std::vector<double>& reports() const noexcept { return reports_; }

    double leftmost() const noexcept { return reports_.front(); }
    double rightmost() const noexcept { return reports_.back(); }
    /// Midpoint of the extreme reports.
    double center() const noexcept { return (reports_.front() + reports_.back()) / 2.0; }

private:
    std::vector<double> reports_;
};

/// A set of facility locations on [0,1]. Duplicates are allowed; locations
/// are stored sorted so equal placements compare equal element-wise.
class Placement {
public:
    explicit Placement(std::vector<double> locations);

    std::size_t facility_count() const noexcept { return locations_.size(); }
    const std::vector<double>& locations() const noexcept { return locations_; }

    friend bool operator==(const Placement& a, const Placement& b) {
        return a.locations_ == b.locations_;
    }

private:
    std::vector<double> locations_;
};

struct WeightedPlacement {
    Placement placement;
    double probability;
};

/// Finite distribution over placements of equal arity. Construction merges
/// coinciding atoms, drops zero-probability atoms, and requires the
/// probabilities to sum to 1 within kProbabilitySumTolerance.
class RandomizedPlacement {
public:
    explicit RandomizedPlacement(std::vector<WeightedPlacement> atoms);

    static RandomizedPlacement degenerate(Placement placement);

    const std::vector<WeightedPlacement>& atoms() const noexcept { return atoms_; }
    std::size_t facility_count() const noexcept;
    double total_probability() const noexcept;

private:
    std::vector<WeightedPlacement> atoms_;
};

enum class ObjectiveKind { MaxCost, AverageCost };

/// How the maximum cost of a randomized placement is aggregated: the
/// expectation of the per-draw maximum, or the maximum of the per-agent
/// expected costs. Jensen's inequality makes the first never smaller.
enum class MaxCostConvention { ExpectationOfMax, MaxOfExpectations };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::MaxCost;
    MaxCostConvention convention = MaxCostConvention::ExpectationOfMax;

    static Objective max_cost(
        MaxCostConvention convention = MaxCostConvention::ExpectationOfMax) {
        return Objective{ObjectiveKind::MaxCost, convention};
    }
    static Objective average_cost() {
        return Objective{ObjectiveKind::AverageCost,
                         MaxCostConvention::ExpectationOfMax};
    }
};

/// What a mechanism produces: a placement, or a distribution over them.
using FacilityOutcome = std::variant<Placement, RandomizedPlacement>;

/// Distance from p to its closest facility.
double point_cost(double p, const Placement& placement);

/// Probability-weighted point cost over the distribution's atoms.
double expected_point_cost(double p, const RandomizedPlacement& distribution);

double max_cost(const LocationProfile& profile, const Placement& placement);
double max_cost(const LocationProfile& profile,
                const RandomizedPlacement& distribution,
                MaxCostConvention convention = MaxCostConvention::ExpectationOfMax);

/// Mean agent cost. For randomized placements linearity makes the
/// expectation of the mean equal the mean of expectations, so one code
/// path serves both conventions.
double average_cost(const LocationProfile& profile, const Placement& placement);
double average_cost(const LocationProfile& profile,
                    const RandomizedPlacement& distribution);

std::size_t facility_count(const FacilityOutcome& outcome);
double expected_point_cost(double p, const FacilityOutcome& outcome);
double objective_cost(const LocationProfile& profile, const FacilityOutcome& outcome,
                      const Objective& objective);

}  // namespace facline
