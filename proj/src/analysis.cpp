#include "facline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace facline {

namespace {

std::vector<double> grid_points(double resolution) {
    if (!(resolution > 0.0 && resolution <= 1.0)) {
        throw std::invalid_argument("grid resolution must lie in (0, 1]");
    }
    std::vector<double> pts;
    const int steps = static_cast<int>(std::floor(1.0 / resolution + 1e-9));
    pts.reserve(static_cast<std::size_t>(steps) + 2);
    for (int i = 0; i <= steps; ++i) {
        pts.push_back(std::min(i * resolution, 1.0));
    }
    if (pts.back() < 1.0 - 1e-9) pts.push_back(1.0);
    return pts;
}

// Number of non-decreasing n-tuples over m grid values, C(m+n-1, n).
// long double keeps the budget guard monotone even when the count is huge.
long double sorted_profile_count(std::size_t points, int agents) {
    long double count = 1.0L;
    for (int i = 1; i <= agents; ++i) {
        count *= static_cast<long double>(points - 1 + static_cast<std::size_t>(i));
        count /= static_cast<long double>(i);
    }
    return count;
}

void require_budget(long double needed, std::uint64_t budget, const char* what) {
    if (needed > static_cast<long double>(budget)) {
        throw BudgetExceeded(std::string(what) + " would take about " +
                             std::to_string(static_cast<double>(needed)) +
                             " mechanism evaluations, over the budget of " +
                             std::to_string(budget));
    }
}

// Visits all sorted n-tuples over pts in lexicographic order.
template <typename Fn>
void for_each_sorted_profile(const std::vector<double>& pts, int agents, Fn&& fn) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(agents), 0);
    std::vector<double> xs(static_cast<std::size_t>(agents));
    const std::size_t top = pts.size() - 1;
    while (true) {
        for (std::size_t i = 0; i < idx.size(); ++i) xs[i] = pts[idx[i]];
        fn(xs);
        std::size_t i = idx.size();
        while (i > 0 && idx[i - 1] == top) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[i - 1];
    }
}

const Placement& deterministic_placement(const FacilityOutcome& outcome,
                                         const std::string& name) {
    const Placement* placed = std::get_if<Placement>(&outcome);
    if (placed == nullptr) {
        throw std::invalid_argument("mechanism '" + name +
                                    "' produced a randomized placement in a "
                                    "deterministic probe");
    }
    return *placed;
}

}  // namespace

double FivePointDistribution::expected_location() const {
    return p_zero * 0.0 + p_left * left + p_center * center + p_right * right +
           p_one * 1.0;
}

RandomizedPlacement FivePointDistribution::to_randomized() const {
    const double positions[5] = {0.0, left, center, right, 1.0};
    const double masses[5] = {p_zero, p_left, p_center, p_right, p_one};
    std::vector<WeightedPlacement> atoms;
    for (int i = 0; i < 5; ++i) {
        if (masses[i] > 0.0) atoms.push_back({Placement({positions[i]}), masses[i]});
    }
    return RandomizedPlacement(std::move(atoms));
}

ErrorReport additive_error(const Mechanism& mechanism,
                           const LocationProfile& profile,
                           const Objective& objective) {
    FacilityOutcome outcome = mechanism(profile);
    double mech = objective_cost(profile, outcome, objective);
    OptResult opt = optimal_for(profile, mechanism.facility_count(), objective.kind);
    return {mechanism.name(), objective, profile, mech, opt.cost, mech - opt.cost};
}

ErrorReport worst_case_scan(const Mechanism& mechanism, int agents,
                            const Objective& objective,
                            const ScanOptions& options) {
    if (agents < 1) throw std::invalid_argument("scan needs at least one agent");
    if (options.refine_rounds < 0) {
        throw std::invalid_argument("refine rounds must be non-negative");
    }
    const std::vector<double> pts = grid_points(options.resolution);
    const long double evaluations =
        sorted_profile_count(pts.size(), agents) +
        static_cast<long double>(options.refine_rounds) * agents * 21;
    require_budget(evaluations, options.max_evaluations, "worst-case scan");

    std::optional<ErrorReport> best;
    for_each_sorted_profile(pts, agents, [&](const std::vector<double>& xs) {
        ErrorReport rep = additive_error(mechanism, LocationProfile(xs), objective);
        // strict improvement only: lexicographic enumeration then makes the
        // first maximizer, the smallest such profile, the one we keep
        if (!best || rep.error > best->error) best = std::move(rep);
    });

    const double step = options.resolution / 10.0;
    for (int round = 0; round < options.refine_rounds; ++round) {
        bool improved = false;
        for (int i = 0; i < agents; ++i) {
            for (int j = -10; j <= 10; ++j) {
                if (j == 0) continue;
                std::vector<double> xs = best->profile.reports();
                auto& coord = xs[static_cast<std::size_t>(i)];
                coord = std::clamp(coord + j * step, 0.0, 1.0);
                ErrorReport rep =
                    additive_error(mechanism, LocationProfile(std::move(xs)), objective);
                if (rep.error > best->error) {
                    best = std::move(rep);
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return *best;
}

std::vector<DeviationWitness> truthfulness_check(const Mechanism& mechanism,
                                                 int agents,
                                                 const CheckOptions& options) {
    if (agents < 1) throw std::invalid_argument("check needs at least one agent");
    if (options.coalition_size < 1) {
        throw std::invalid_argument("coalition size must be at least 1");
    }
    const std::vector<double> pts = grid_points(options.resolution);
    const long double m = static_cast<long double>(pts.size());
    const long double profiles = sorted_profile_count(pts.size(), agents);
    const long double evaluations =
        options.coalition_size == 1 ? profiles * (1.0L + agents * (m - 1))
                                    : profiles * m * m;
    require_budget(evaluations, options.max_evaluations, "truthfulness check");

    std::vector<DeviationWitness> witnesses;
    if (options.coalition_size == 1) {
        for_each_sorted_profile(pts, agents, [&](const std::vector<double>& xs) {
            LocationProfile profile(xs);
            FacilityOutcome honest = mechanism(profile);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double truthful = expected_point_cost(xs[i], honest);
                for (double lie : pts) {
                    if (lie == xs[i]) continue;
                    std::vector<double> ys = xs;
                    ys[i] = lie;
                    double deviated = expected_point_cost(
                        xs[i], mechanism(LocationProfile(std::move(ys))));
                    double gain = truthful - deviated;
                    if (gain > kGainTolerance) {
                        witnesses.push_back(
                            {profile, i + 1, lie, truthful, deviated, gain});
                    }
                }
            }
        });
        return witnesses;
    }

    const std::size_t group = static_cast<std::size_t>(options.coalition_size);
    for_each_sorted_profile(pts, agents, [&](const std::vector<double>& base) {
        for (double at : pts) {
            std::vector<double> xs = base;
            xs.insert(xs.end(), group, at);
            LocationProfile profile(std::move(xs));
            double truthful = expected_point_cost(at, mechanism(profile));
            for (double lie : pts) {
                if (lie == at) continue;
                std::vector<double> ys = base;
                ys.insert(ys.end(), group, lie);
                double deviated = expected_point_cost(
                    at, mechanism(LocationProfile(std::move(ys))));
                double gain = truthful - deviated;
                if (gain > kGainTolerance) {
                    const auto& sorted = profile.reports();
                    auto first = std::lower_bound(sorted.begin(), sorted.end(), at);
                    std::size_t index =
                        static_cast<std::size_t>(first - sorted.begin());
                    witnesses.push_back(
                        {profile, index + 1, lie, truthful, deviated, gain});
                }
            }
        }
    });
    return witnesses;
}

Mechanism duplicate_reduction(Mechanism inner, int copies) {
    if (copies < 1) {
        throw std::invalid_argument("duplication factor must be at least 1");
    }
    std::string name = "dup:q=" + std::to_string(copies) + ":" + inner.name();
    int facilities = inner.facility_count();
    bool randomized = inner.randomized();
    auto fn = [inner = std::move(inner), copies](const LocationProfile& profile) {
        const std::size_t q = static_cast<std::size_t>(copies);
        if (profile.size() % q != 0) {
            throw std::invalid_argument(
                "profile size is not divisible by the duplication factor");
        }
        std::vector<double> kept;
        kept.reserve(profile.size() / q);
        for (std::size_t i = 0; i < profile.size(); i += q) kept.push_back(profile[i]);
        return inner(LocationProfile(std::move(kept)));
    };
    return Mechanism(std::move(name), facilities, randomized, std::move(fn));
}

Mechanism clone_last_reduction(Mechanism inner) {
    std::string name = "clone-last:" + inner.name();
    int facilities = inner.facility_count();
    bool randomized = inner.randomized();
    auto fn = [inner = std::move(inner)](const LocationProfile& profile) {
        std::vector<double> extended = profile.reports();
        extended.push_back(profile.rightmost());
        return inner(LocationProfile(std::move(extended)));
    };
    return Mechanism(std::move(name), facilities, randomized, std::move(fn));
}

FivePointDistribution five_point_project(const RandomizedPlacement& distribution,
                                         const LocationProfile& profile) {
    if (distribution.facility_count() != 1) {
        throw std::invalid_argument(
            "five-point projection needs a single-facility distribution");
    }
    const double support[5] = {0.0, profile.leftmost(), profile.center(),
                               profile.rightmost(), 1.0};
    double mass[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    auto credit = [&](double position, double amount) {
        for (int role = 0; role < 5; ++role) {
            if (support[role] == position) {
                mass[role] += amount;
                return;
            }
        }
        throw std::logic_error("projection split landed off the support set");
    };
    for (const WeightedPlacement& atom : distribution.atoms()) {
        const double z = atom.placement.locations().front();
        const double p = atom.probability;
        double below = 0.0;
        double above = 1.0;
        for (double s : support) {
            if (s <= z) below = std::max(below, s);
            if (s >= z) above = std::min(above, s);
        }
        if (below == above) {
            credit(z, p);
            continue;
        }
        const double span = above - below;
        credit(below, p * ((above - z) / span));
        credit(above, p * ((z - below) / span));
    }
    return {profile.leftmost(), profile.center(), profile.rightmost(),
            mass[0],            mass[1],          mass[2],
            mass[3],            mass[4]};
}

double symmetric_five_point_left_cost(double p_ends, double p_extremes,
                                      double p_center) {
    // distances from 1/3: 1/3 and 2/3 to the endpoints, 0 and 1/3 to the
    // extreme reports, 1/6 to the center
    return p_ends + p_extremes / 3.0 + p_center / 6.0;
}

double randomized_lb_certificate(double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 0.1 + 1e-12) {
        throw std::invalid_argument("certificate grid step must lie in (0, 0.1]");
    }
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0;; ++a) {
        const double p_ends = a * grid_step;
        if (2.0 * p_ends > 1.0 + 1e-12) break;
        for (int b = 0;; ++b) {
            const double p_extremes = b * grid_step;
            double p_center = 1.0 - 2.0 * p_ends - 2.0 * p_extremes;
            if (p_center < -1e-12) break;
            p_center = std::max(p_center, 0.0);
            best = std::min(best,
                            symmetric_five_point_left_cost(p_ends, p_extremes,
                                                           p_center));
        }
    }
    return best;
}

ErrorReport deterministic_probe_single(const Mechanism& mechanism) {
    if (mechanism.randomized() || mechanism.facility_count() != 1) {
        throw std::invalid_argument(
            "single-facility probe needs a deterministic mechanism placing one "
            "facility");
    }
    auto place = [&](const LocationProfile& profile) {
        FacilityOutcome outcome = mechanism(profile);
        return deterministic_placement(outcome, mechanism.name())
            .locations()
            .front();
    };
    const LocationProfile boundary({0.0, 1.0});
    const double anchor = place(boundary);
    // Move the far agent onto the facility; she now has cost zero, and
    // misreporting her old boundary position recreates `boundary` exactly.
    const LocationProfile probe = anchor >= 0.5 ? LocationProfile({0.0, anchor})
                                                : LocationProfile({anchor, 1.0});
    ErrorReport report = additive_error(mechanism, probe, Objective::max_cost());
    const double moved = place(probe);
    const double gain = std::abs(moved - anchor);
    if (gain > report.error) report.error = gain;
    return report;
}

ErrorReport deterministic_probe_k(const Mechanism& mechanism) {
    if (mechanism.randomized()) {
        throw std::invalid_argument("probe needs a deterministic mechanism");
    }
    const int k = mechanism.facility_count();
    const double kk = static_cast<double>(k);

    // Agents: a pair at 0 and 2/(3k), then one isolated agent at each of
    // 2/k, 3/k, ..., 1. Serving everyone well needs all k facilities.
    std::vector<double> agents;
    agents.push_back(0.0);
    agents.push_back(2.0 / (3.0 * kk));
    for (int i = 3; i <= k + 1; ++i) {
        agents.push_back(static_cast<double>(i - 1) / kk);
    }
    const LocationProfile base(agents);
    const Objective objective = Objective::max_cost();
    ErrorReport base_report = additive_error(mechanism, base, objective);

    FacilityOutcome base_outcome = mechanism(base);
    const Placement& placed = deterministic_placement(base_outcome, mechanism.name());

    // The pair needs a facility in [0, 1/k]; each isolated agent needs one
    // within 1/(2k). The segments are disjoint, so k facilities can only
    // cover them one apiece. A miss leaves `base` with error above 1/(6k),
    // which base_report already measures.
    struct Segment {
        double lo, hi;
    };
    std::vector<Segment> segments;
    segments.push_back({0.0, 1.0 / kk});
    for (int j = 2; j <= k; ++j) {
        segments.push_back({(2.0 * j - 1.0) / (2.0 * kk),
                            std::min((2.0 * j + 1.0) / (2.0 * kk), 1.0)});
    }
    const auto& locations = placed.locations();
    std::size_t next = 0;
    double pair_facility = -1.0;
    bool covered = true;
    for (const Segment& segment : segments) {
        while (next < locations.size() && locations[next] < segment.lo) ++next;
        if (next == locations.size() || locations[next] > segment.hi) {
            covered = false;
            break;
        }
        if (pair_facility < 0.0) pair_facility = locations[next];
        ++next;
    }
    if (!covered) return base_report;

    // Squeeze the pair: move whichever of its two agents the facility
    // betrayed onto the facility itself. Misreporting her old position
    // recreates `base`, where her cost is exactly zero.
    std::vector<double> moved = agents;
    if (pair_facility >= 1.0 / (3.0 * kk)) {
        moved[1] = pair_facility;
    } else {
        moved[0] = pair_facility;
    }
    const LocationProfile probe(moved);
    ErrorReport report = additive_error(mechanism, probe, objective);
    FacilityOutcome probe_outcome = mechanism(probe);
    const double gain =
        point_cost(pair_facility,
                   deterministic_placement(probe_outcome, mechanism.name())) -
        point_cost(pair_facility, placed);
    if (gain > report.error) report.error = gain;
    return base_report.error > report.error ? base_report : report;
}

std::optional<double> known_error_bound(const MechanismSpec& spec,
                                        const Objective& objective) {
    const bool max_objective = objective.kind == ObjectiveKind::MaxCost;
    const double k = static_cast<double>(spec.facility_count);
    switch (spec.kind) {
        case MechanismKind::Median:
            return max_objective ? 0.5 : 0.0;
        case MechanismKind::Dictator:
            if (max_objective) return 0.5;
            return std::nullopt;
        case MechanismKind::FixedPoint:
            return std::max(spec.position, 1.0 - spec.position);
        case MechanismKind::Lrc:
            if (max_objective) return 0.25;
            return std::nullopt;
        case MechanismKind::Blrc:
            if (max_objective) return 1.0 / 6.0;
            return std::nullopt;
        case MechanismKind::PhantomHalf:
            if (max_objective) return 0.25;
            return std::nullopt;
        case MechanismKind::EqualSpread:
            return 1.0 / (2.0 * k - 1.0);
        case MechanismKind::Pec:
            if (!max_objective) return 1.0 / (4.0 * k - 2.0);
            // per-draw maxima stay within one grid step; the tighter
            // 1/(4k-2) holds only for per-agent expectations
            return objective.convention == MaxCostConvention::MaxOfExpectations
                       ? 1.0 / (4.0 * k - 2.0)
                       : 1.0 / (2.0 * k - 1.0);
        case MechanismKind::Epec:
            return max_objective ? 1.0 / (2.0 * k - 1.0) : 3.0 / (8.0 * k - 4.0);
        case MechanismKind::Fifths:
            if (max_objective) return std::nullopt;
            return 0.2;
        case MechanismKind::Mean:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace facline
