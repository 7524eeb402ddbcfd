#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "facline/core.hpp"
#include "facline/mechanisms.hpp"
#include "facline/optimal.hpp"

namespace facline {

/// A deviation only counts as a truthfulness violation above this gain.
inline constexpr double kGainTolerance = 1e-9;

/// Grid enumerations refuse to start past this many mechanism evaluations
/// unless the caller raises the limit.
inline constexpr std::uint64_t kDefaultEvaluationBudget = 20'000'000;

/// Thrown before any work happens when an enumeration would exceed its
/// evaluation budget. No partial results are produced.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How much worse a mechanism did than the exact optimum on one profile.
struct ErrorReport {
    std::string mechanism;
    Objective objective;
    LocationProfile profile;
    double mechanism_cost = 0.0;
    double optimal_cost = 0.0;
    double error = 0.0;  // mechanism_cost - optimal_cost
};

/// A profitable misreport found by truthfulness_check.
struct DeviationWitness {
    LocationProfile profile;  // the truthful profile
    std::size_t agent = 1;    // 1-based index into the sorted profile
    double misreport = 0.0;
    double truthful_cost = 0.0;
    double deviated_cost = 0.0;
    double gain = 0.0;  // truthful_cost - deviated_cost
};

/// Single-facility distribution collapsed onto the five points
/// {0, leftmost, center, rightmost, 1} of a profile. Each original atom is
/// split between its two neighbours in that set so the mean is preserved;
/// by convexity of distances no point's expected cost decreases.
struct FivePointDistribution {
    double left = 0.0;
    double center = 0.0;
    double right = 0.0;
    double p_zero = 0.0;
    double p_left = 0.0;
    double p_center = 0.0;
    double p_right = 0.0;
    double p_one = 0.0;

    double expected_location() const;
    RandomizedPlacement to_randomized() const;
};

/// Cost the wrapped mechanism incurs minus the exact optimum for the same
/// facility count and objective.
ErrorReport additive_error(const Mechanism& mechanism,
                           const LocationProfile& profile,
                           const Objective& objective);

struct ScanOptions {
    double resolution = 0.01;  // grid step over [0,1]
    int refine_rounds = 0;     // coordinate refinement passes at step/10
    std::uint64_t max_evaluations = kDefaultEvaluationBudget;
};

/// Largest additive error over all sorted n-agent profiles on the grid
/// {0, g, 2g, ..., 1}, optionally refined coordinate-wise at step g/10.
/// The result is a lower bound on the true worst case; for mechanisms
/// whose error is 1-Lipschitz per coordinate it is within n*g of it.
/// Ties keep the lexicographically smallest profile.
ErrorReport worst_case_scan(const Mechanism& mechanism, int agents,
                            const Objective& objective,
                            const ScanOptions& options = {});

struct CheckOptions {
    double resolution = 0.1;
    int coalition_size = 1;
    std::uint64_t max_evaluations = kDefaultEvaluationBudget;
};

/// Searches grid profiles for profitable misreports, judging each agent by
/// the expected distance from her true position. With coalition_size c > 1,
/// c co-located agents are appended to every grid profile and deviate
/// jointly to a common misreport. Returns every deviation whose gain
/// exceeds kGainTolerance.
std::vector<DeviationWitness> truthfulness_check(const Mechanism& mechanism,
                                                 int agents,
                                                 const CheckOptions& options = {});

/// Wraps a mechanism to answer q-fold duplicated profiles by evaluating the
/// inner mechanism on one copy of each report. Preserves truthfulness and
/// worst-case error of the inner mechanism.
Mechanism duplicate_reduction(Mechanism inner, int copies);

/// Wraps a mechanism to repeat the largest report once before evaluating,
/// turning an n-agent instance into an (n+1)-agent one.
Mechanism clone_last_reduction(Mechanism inner);

/// Splits every atom of a single-facility distribution between its
/// neighbours in {0, leftmost, center, rightmost, 1}. Mass landing on a
/// point shared by two roles is credited to the earlier role in the order
/// zero, left, center, right, one.
FivePointDistribution five_point_project(const RandomizedPlacement& distribution,
                                         const LocationProfile& profile);

/// Expected distance from the point 1/3 under the symmetric five-point
/// distribution over {0, 1/3, 1/2, 2/3, 1} that places mass p_ends on each
/// endpoint, p_extremes on each of 1/3 and 2/3, and p_center on 1/2. On
/// the simplex 2*p_ends + 2*p_extremes + p_center = 1 this simplifies to
/// 1/2 - p_center/3 - 2*p_extremes/3, which is at least 1/6 everywhere.
double symmetric_five_point_left_cost(double p_ends, double p_extremes,
                                      double p_center);

/// Minimum of symmetric_five_point_left_cost over the simplex, explored at
/// step h. Any grid (the step always admits p_ends = 0) yields exactly
/// 1/6, certifying that no truthful randomized mechanism that is symmetric
/// and supported on these five points beats a 1/6 max-cost error on the
/// two-agent profile (1/3, 2/3). Requires 0 < h <= 1/10.
double randomized_lb_certificate(double grid_step);

/// Evaluates a deterministic single-facility mechanism on (0, 1), moves the
/// far agent onto the returned facility, and measures both the error at the
/// moved profile and the gain from deviating back. For truthful mechanisms
/// the larger of the two is at least 1/4.
ErrorReport deterministic_probe_single(const Mechanism& mechanism);

/// k-facility analogue on the profile (0, 2/(3k), 2/k, 3/k, ..., 1). If the
/// mechanism leaves one of the probe's disjoint segments unserved, that
/// profile already has error 1/(6k); otherwise the agent pair at 0 and
/// 2/(3k) is squeezed as in the single-facility probe. For truthful
/// mechanisms the reported error is at least 1/(6k).
ErrorReport deterministic_probe_k(const Mechanism& mechanism);

/// Worst-case additive error this library asserts for a mechanism under an
/// objective, when it asserts one.
std::optional<double> known_error_bound(const MechanismSpec& spec,
                                        const Objective& objective);

}  // namespace facline
