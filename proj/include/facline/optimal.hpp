#pragma once

#include "facline/core.hpp"

namespace facline {

struct OptResult {
    Placement placement;
    double cost = 0.0;
    Objective objective;
};

/// Midpoint of the extreme reports; cost is half the report span.
OptResult opt_max_single(const LocationProfile& profile);

/// Lower median of the reports; cost is the mean absolute deviation.
OptResult opt_avg_single(const LocationProfile& profile);

/// Exact k-facility max-cost optimum. The optimal radius is half the gap
/// between some pair of reports, so we binary-search those candidates with
/// a greedy left-to-right coverage check.
OptResult opt_max_k(const LocationProfile& profile, int facility_count);

/// Exact k-facility average-cost optimum. An optimal solution serves
/// contiguous runs of the sorted reports, each from its lower median;
/// dynamic programming over run boundaries, O(k n^2).
OptResult opt_avg_k(const LocationProfile& profile, int facility_count);

OptResult optimal_for(const LocationProfile& profile, int facility_count,
                      ObjectiveKind kind);

}  // namespace facline
