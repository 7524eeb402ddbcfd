#include "facline/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace facline {

namespace {

// Slack for "is this report already covered" comparisons. Candidate radii
// are exact half-gaps, but re-adding them to a report costs a few ulps.
constexpr double kCoverSlack = 1e-12;

void require_positive_k(int facility_count) {
    if (facility_count < 1) {
        throw std::invalid_argument("facility count must be at least 1");
    }
}

// Greedy coverage check: place each facility as far right as the radius
// allows for the leftmost uncovered report. Fills `out` when given.
bool coverable(const std::vector<double>& reports, int facility_count,
               double radius, std::vector<double>* out) {
    int used = 0;
    std::size_t i = 0;
    while (i < reports.size()) {
        if (++used > facility_count) return false;
        double facility = std::min(reports[i] + radius, 1.0);
        if (out) out->push_back(facility);
        double reach = facility + radius + kCoverSlack;
        while (i < reports.size() && reports[i] <= reach) ++i;
    }
    return true;
}

}  // namespace

OptResult opt_max_single(const LocationProfile& profile) {
    return {Placement({profile.center()}),
            (profile.rightmost() - profile.leftmost()) / 2.0,
            Objective::max_cost()};
}

OptResult opt_avg_single(const LocationProfile& profile) {
    double median = profile[(profile.size() - 1) / 2];
    double total = 0.0;
    for (double r : profile.reports()) total += std::abs(r - median);
    return {Placement({median}), total / static_cast<double>(profile.size()),
            Objective::average_cost()};
}

OptResult opt_max_k(const LocationProfile& profile, int facility_count) {
    require_positive_k(facility_count);
    const auto& r = profile.reports();

    std::vector<double> candidates;
    candidates.reserve(r.size() * (r.size() + 1) / 2);
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i; j < r.size(); ++j) {
            candidates.push_back((r[j] - r[i]) / 2.0);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    auto first_feasible = std::partition_point(
        candidates.begin(), candidates.end(), [&](double radius) {
            return !coverable(r, facility_count, radius, nullptr);
        });
    // Half the full span always suffices for one facility, so some
    // candidate is feasible and the iterator cannot be the end.
    double radius = *first_feasible;

    std::vector<double> facilities;
    coverable(r, facility_count, radius, &facilities);
    while (facilities.size() < static_cast<std::size_t>(facility_count)) {
        facilities.push_back(facilities.back());
    }
    return {Placement(std::move(facilities)), radius, Objective::max_cost()};
}

OptResult opt_avg_k(const LocationProfile& profile, int facility_count) {
    require_positive_k(facility_count);
    const auto& r = profile.reports();
    const std::size_t n = r.size();

    // A facility per agent costs exactly zero; skip the DP so prefix-sum
    // rounding cannot smear the result by an ulp.
    if (static_cast<std::size_t>(facility_count) >= n) {
        std::vector<double> spots = r;
        while (spots.size() < static_cast<std::size_t>(facility_count))
            spots.push_back(r.back());
        return {Placement(spots), 0.0, Objective::average_cost()};
    }

    const std::size_t clusters =
        std::min<std::size_t>(static_cast<std::size_t>(facility_count), n);

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + r[i];

    // Total distance from reports i..j (inclusive) to their lower median.
    // Clamped at zero: prefix-sum cancellation can leave a few negative ulps.
    auto run_cost = [&](std::size_t i, std::size_t j) {
        std::size_t m = (i + j) / 2;
        double med = r[m];
        double left = med * static_cast<double>(m - i + 1) - (prefix[m + 1] - prefix[i]);
        double right = (prefix[j + 1] - prefix[m + 1]) - med * static_cast<double>(j - m);
        return std::max(left + right, 0.0);
    };

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // best[c][t]: minimal total distance serving the first t reports with c runs
    std::vector<std::vector<double>> best(
        clusters + 1, std::vector<double>(n + 1, kInf));
    std::vector<std::vector<std::size_t>> split(
        clusters + 1, std::vector<std::size_t>(n + 1, 0));
    best[0][0] = 0.0;
    for (std::size_t c = 1; c <= clusters; ++c) {
        for (std::size_t t = c; t <= n; ++t) {
            for (std::size_t s = c - 1; s < t; ++s) {
                if (best[c - 1][s] == kInf) continue;
                double total = best[c - 1][s] + run_cost(s, t - 1);
                if (total < best[c][t]) {
                    best[c][t] = total;
                    split[c][t] = s;
                }
            }
        }
    }

    std::vector<double> facilities;
    std::size_t end = n;
    for (std::size_t c = clusters; c >= 1; --c) {
        std::size_t start = split[c][end];
        facilities.push_back(r[(start + end - 1) / 2]);
        end = start;
    }
    std::reverse(facilities.begin(), facilities.end());
    while (facilities.size() < static_cast<std::size_t>(facility_count)) {
        facilities.push_back(facilities.back());
    }
    return {Placement(std::move(facilities)),
            best[clusters][n] / static_cast<double>(n),
            Objective::average_cost()};
}

OptResult optimal_for(const LocationProfile& profile, int facility_count,
                      ObjectiveKind kind) {
    return kind == ObjectiveKind::MaxCost ? opt_max_k(profile, facility_count)
                                          : opt_avg_k(profile, facility_count);
}

}  // namespace facline
