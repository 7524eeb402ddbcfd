#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "facline/core.hpp"

namespace facline {

// Single-facility rules. All of these are truthful except mean_mechanism,
// which is kept as a negative control for the truthfulness checker.

/// Lower median of the reports.
Placement median_mechanism(const LocationProfile& profile);

/// The agent_index-th smallest report (1-based). Throws when out of range.
Placement dictator(const LocationProfile& profile, int agent_index);

/// Ignores the profile and places at a fixed position.
Placement fixed_point(double position);

/// Arithmetic mean of the reports. Not truthful.
Placement mean_mechanism(const LocationProfile& profile);

/// Leftmost w.p. 1/4, rightmost w.p. 1/4, their midpoint w.p. 1/2.
RandomizedPlacement lrc(const LocationProfile& profile);

/// Mixes a coin-flip toward 1/2 into lrc: 1/2 w.p. 1/3, leftmost and
/// rightmost w.p. 1/6 each, midpoint w.p. 1/3.
RandomizedPlacement blrc(const LocationProfile& profile);

/// Median of {leftmost, rightmost, 1/2}, i.e. 1/2 clamped to the report range.
Placement phantom_half(const LocationProfile& profile);

// Multi-facility rules for k facilities on [0,1].

/// Fixed grid {i/(2k-1) : i odd}; ignores the profile.
Placement equal_spread(int facility_count);

/// The two alternating grids equal_spread chooses between: even multiples
/// 2j/(2k-1) and odd multiples (2j+1)/(2k-1), j = 0..k-1.
Placement pec_even_option(int facility_count);
Placement pec_odd_option(int facility_count);

/// Fair coin over the even and odd grids; ignores the profile. Every point
/// of [0,1] then has expected cost exactly 1/(4k-2).
RandomizedPlacement pec(int facility_count);

/// Majority vote between the even and odd grids. An agent strictly closer
/// to one grid votes for it; an equidistant agent counts for neither; the
/// even grid wins ties.
Placement epec(const LocationProfile& profile, int facility_count);

/// Two facilities at the 20th and 80th percentile reports, indices
/// ceil(n/5) and ceil(4n/5) (1-based) of the sorted profile.
Placement fifths(const LocationProfile& profile);

enum class MechanismKind {
    Median,
    Dictator,
    FixedPoint,
    Lrc,
    Blrc,
    PhantomHalf,
    EqualSpread,
    Pec,
    Epec,
    Fifths,
    Mean,
};

/// Parsed description of a mechanism, with a canonical string form used by
/// the command line: "median", "dictator:i=1", "fixed:p=0.5", "lrc",
/// "blrc", "phantom-half", "equal-spread:k=4", "pec:k=3", "epec:k=2",
/// "fifths", "mean".
struct MechanismSpec {
    MechanismKind kind = MechanismKind::Median;
    int agent_index = 1;     // dictator
    double position = 0.5;   // fixed
    int facility_count = 1;  // equal-spread, pec, epec

    static MechanismSpec parse(std::string_view text);
    std::string to_string() const;

    bool randomized() const noexcept;
    /// Number of facilities the mechanism places.
    int facilities() const noexcept;
    FacilityOutcome apply(const LocationProfile& profile) const;
};

/// Type-erased mechanism: a pure map from profiles to outcomes, carrying
/// the metadata the analysis routines need. Wrappers (input reductions)
/// produce instances that have no MechanismSpec form.
class Mechanism {
public:
    using Fn = std::function<FacilityOutcome(const LocationProfile&)>;

    Mechanism(std::string name, int facility_count, bool randomized, Fn fn);

    static Mechanism from_spec(const MechanismSpec& spec);
    static Mechanism parse(std::string_view text) {
        return from_spec(MechanismSpec::parse(text));
    }

    const std::string& name() const noexcept { return name_; }
    int facility_count() const noexcept { return facility_count_; }
    bool randomized() const noexcept { return randomized_; }
    FacilityOutcome operator()(const LocationProfile& profile) const {
        return fn_(profile);
    }

private:
    std::string name_;
    int facility_count_;
    bool randomized_;
    Fn fn_;
};

}  // namespace facline
