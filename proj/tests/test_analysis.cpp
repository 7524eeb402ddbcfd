#include "facline/analysis.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace facline;
using oracle::approx;

namespace {

Mechanism mech(const char* text) { return Mechanism::parse(text); }

// The balanced lottery's expected max cost on (0, z), summed atom by atom:
// 1/2 w.p. 1/3 (max cost 1/2), each extreme w.p. 1/6 (max cost z), the
// midpoint w.p. 1/3 (max cost z/2).
double balanced_lottery_expected_max(double z) {
    return (1.0 / 3.0) * 0.5 + (1.0 / 6.0) * z + (1.0 / 6.0) * z +
           (1.0 / 3.0) * (z / 2.0);
}

}  // namespace

TEST_CASE("additive error subtracts the exact optimum") {
    for (double z : {0.1, 0.5, 2.0 / 3.0, 1.0}) {
        ErrorReport rep = additive_error(mech("blrc"), LocationProfile({0.0, z}),
                                         Objective::max_cost());
        CHECK(approx(rep.mechanism_cost, balanced_lottery_expected_max(z), 1e-12));
        CHECK(approx(rep.optimal_cost, z / 2.0, 1e-12));
        CHECK(approx(rep.error, 1.0 / 6.0, 1e-12));
        CHECK(rep.mechanism == "blrc");
    }

    // placing at 1/2 is optimal for (0, 1), so the error vanishes
    CHECK(additive_error(mech("fixed:p=0.5"), LocationProfile({0.0, 1.0}),
                         Objective::max_cost())
              .error == 0.0);

    // a lone agent at 2/3 sits one grid step from the fixed two-grid
    ErrorReport spread =
        additive_error(mech("equal-spread:k=2"), LocationProfile({2.0 / 3.0}),
                       Objective::max_cost());
    CHECK(approx(spread.error, 1.0 / 3.0, 1e-12));

    // convention matters for randomized max cost
    ErrorReport eom = additive_error(mech("lrc"), LocationProfile({0.0, 1.0}),
                                     Objective::max_cost());
    ErrorReport moe = additive_error(
        mech("lrc"), LocationProfile({0.0, 1.0}),
        Objective::max_cost(MaxCostConvention::MaxOfExpectations));
    CHECK(approx(eom.error, 0.25, 1e-12));
    CHECK(approx(moe.error, 0.0, 1e-12));
}

TEST_CASE("the worst-case scan finds the sharpest grid profile") {
    ScanOptions options;
    options.resolution = 0.05;
    ErrorReport worst =
        worst_case_scan(mech("phantom-half"), 2, Objective::max_cost(), options);
    CHECK(approx(worst.error, 0.25, 1e-12));
    // ties resolve to the lexicographically smallest profile
    CHECK(worst.profile.reports() == std::vector<double>{0.0, 0.5});

    options.resolution = 0.1;
    ErrorReport median_avg =
        worst_case_scan(mech("median"), 3, Objective::average_cost(), options);
    CHECK(median_avg.error <= 1e-12);  // the median is average-optimal

    options.resolution = 0.25;
    ErrorReport mean_scan =
        worst_case_scan(mech("mean"), 2, Objective::max_cost(), options);
    CHECK(mean_scan.error >= 0.0);
}

TEST_CASE("coordinate refinement sharpens an off-grid maximum") {
    ScanOptions coarse;
    coarse.resolution = 0.03;  // the grid misses 0.5
    ErrorReport plain =
        worst_case_scan(mech("phantom-half"), 2, Objective::max_cost(), coarse);

    ScanOptions refined = coarse;
    refined.refine_rounds = 2;
    ErrorReport sharper =
        worst_case_scan(mech("phantom-half"), 2, Objective::max_cost(), refined);
    CHECK(sharper.error > plain.error + 0.003);
    CHECK(sharper.error <= 0.25 + 1e-12);
}

TEST_CASE("scans refuse to start past their evaluation budget") {
    ScanOptions options;
    options.resolution = 0.001;
    CHECK_THROWS_AS(
        worst_case_scan(mech("median"), 6, Objective::max_cost(), options),
        BudgetExceeded);

    CheckOptions check;
    check.resolution = 0.001;
    CHECK_THROWS_AS(truthfulness_check(mech("mean"), 4, check), BudgetExceeded);
}

TEST_CASE("the deviation search clears truthful rules and catches the mean") {
    CheckOptions coarse;
    coarse.resolution = 0.25;
    CHECK(truthfulness_check(mech("median"), 2, coarse).empty());
    CHECK(truthfulness_check(mech("blrc"), 2, coarse).empty());

    std::vector<DeviationWitness> caught = truthfulness_check(mech("mean"), 2, coarse);
    REQUIRE(!caught.empty());
    bool found = false;
    for (const DeviationWitness& w : caught) {
        // an agent at 0.5 next to an agent at 0 drags the average to 0.5
        // by exaggerating to 1
        if (w.profile.reports() == std::vector<double>{0.0, 0.5} && w.agent == 2 &&
            w.misreport == 1.0) {
            found = true;
            CHECK(approx(w.truthful_cost, 0.25, 1e-12));
            CHECK(approx(w.deviated_cost, 0.0, 1e-12));
            CHECK(approx(w.gain, 0.25, 1e-12));
        }
        CHECK(w.gain > kGainTolerance);
    }
    CHECK(found);

    CheckOptions vote;
    vote.resolution = 0.25;
    CHECK(truthfulness_check(mech("epec:k=2"), 3, vote).empty());
}

TEST_CASE("co-located groups cannot game the truthful rules either") {
    CheckOptions options;
    options.resolution = 0.25;
    options.coalition_size = 2;
    CHECK(truthfulness_check(mech("blrc"), 1, options).empty());
    CHECK(truthfulness_check(mech("phantom-half"), 1, options).empty());

    // the mean moves with group size, so a pair gains even more
    CHECK(!truthfulness_check(mech("mean"), 1, options).empty());
}

TEST_CASE("deduplicating wrapper answers repeated profiles like the original") {
    Mechanism halved = duplicate_reduction(mech("median"), 3);
    CHECK(halved.name() == "dup:q=3:median");
    FacilityOutcome out =
        halved(LocationProfile({0.2, 0.2, 0.2, 0.8, 0.8, 0.8}));
    CHECK(std::get<Placement>(out) == Placement({0.2}));
    CHECK_THROWS_AS(halved(LocationProfile({0.1, 0.1})), std::invalid_argument);

    // additive error carries over exactly on duplicated profiles
    for (const char* name : {"blrc", "phantom-half"}) {
        Mechanism base = mech(name);
        Mechanism wrapped = duplicate_reduction(base, 2);
        LocationProfile thin({0.1, 0.7});
        LocationProfile thick({0.1, 0.1, 0.7, 0.7});
        double direct =
            additive_error(base, thin, Objective::max_cost()).error;
        double reduced =
            additive_error(wrapped, thick, Objective::max_cost()).error;
        CHECK(approx(direct, reduced, 1e-12));
    }
}

TEST_CASE("cloning wrapper repeats the largest report once") {
    Mechanism extended = clone_last_reduction(mech("median"));
    CHECK(extended.name() == "clone-last:median");
    // (0, 1) becomes (0, 1, 1), whose lower median is 1
    CHECK(std::get<Placement>(extended(LocationProfile({0.0, 1.0}))) ==
          Placement({1.0}));

    Mechanism base = mech("phantom-half");
    Mechanism wrapped = clone_last_reduction(base);
    LocationProfile profile({0.2, 0.6});
    LocationProfile longer({0.2, 0.6, 0.6});
    CHECK(approx(additive_error(wrapped, profile, Objective::max_cost()).error,
                 additive_error(base, longer, Objective::max_cost()).error,
                 1e-12));
}

TEST_CASE("five-point projection splits atoms between their neighbours") {
    LocationProfile profile({0.0, 1.0});
    RandomizedPlacement lone = RandomizedPlacement::degenerate(Placement({0.3}));
    FivePointDistribution projected = five_point_project(lone, profile);
    CHECK(approx(projected.p_zero, 0.4, 1e-12));
    CHECK(approx(projected.p_center, 0.6, 1e-12));
    CHECK(projected.p_left == 0.0);  // the leftmost report coincides with 0
    CHECK(projected.p_right == 0.0);
    CHECK(projected.p_one == 0.0);
    CHECK(approx(projected.expected_location(), 0.3, 1e-12));

    // atoms already on the support pass through
    RandomizedPlacement anchored =
        RandomizedPlacement::degenerate(Placement({0.5}));
    CHECK(approx(five_point_project(anchored, profile).p_center, 1.0, 1e-12));

    CHECK_THROWS_AS(
        five_point_project(
            RandomizedPlacement::degenerate(Placement({0.2, 0.8})), profile),
        std::invalid_argument);
}

TEST_CASE("projection keeps the mean and never helps any point") {
    oracle::Rng rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        LocationProfile profile({rng.unit(), rng.unit()});
        int atom_count = rng.between(1, 5);
        std::vector<WeightedPlacement> atoms;
        double mass_left = 1.0;
        for (int a = 0; a < atom_count - 1; ++a) {
            double mass = mass_left * rng.unit();
            atoms.push_back({Placement({rng.unit()}), mass});
            mass_left -= mass;
        }
        atoms.push_back({Placement({rng.unit()}), mass_left});
        RandomizedPlacement original(atoms);

        FivePointDistribution projected = five_point_project(original, profile);
        RandomizedPlacement spread = projected.to_randomized();

        double mean_before = 0.0;
        for (const auto& atom : original.atoms()) {
            mean_before += atom.probability * atom.placement.locations().front();
        }
        CHECK(approx(projected.expected_location(), mean_before, 1e-12));
        double mass = projected.p_zero + projected.p_left + projected.p_center +
                      projected.p_right + projected.p_one;
        CHECK(approx(mass, 1.0, 1e-12));

        for (int i = 0; i <= 50; ++i) {
            double p = i / 50.0;
            CHECK(expected_point_cost(p, spread) >=
                  expected_point_cost(p, original) - 1e-12);
        }

        // spreading along straight segments of the distance function keeps
        // these costs exact: the endpoints and the profile midpoint
        for (double p : {0.0, profile.center(), 1.0}) {
            CHECK(approx(expected_point_cost(p, spread),
                         expected_point_cost(p, original), 1e-12));
        }

        // the per-draw max over the profile is linear between support
        // points too, so the expected max survives the projection
        CHECK(approx(max_cost(profile, spread, MaxCostConvention::ExpectationOfMax),
                     max_cost(profile, original, MaxCostConvention::ExpectationOfMax),
                     1e-12));
    }
}

TEST_CASE("the symmetric five-point cost matches its hand values") {
    CHECK(approx(symmetric_five_point_left_cost(0.5, 0.0, 0.0), 0.5, 1e-15));
    CHECK(approx(symmetric_five_point_left_cost(0.0, 0.5, 0.0), 1.0 / 6.0, 1e-15));
    CHECK(approx(symmetric_five_point_left_cost(0.0, 0.0, 1.0), 1.0 / 6.0, 1e-15));
}

TEST_CASE("the lottery lower-bound certificate bottoms out at one sixth") {
    CHECK(approx(randomized_lb_certificate(0.01), 1.0 / 6.0, 1e-12));
    CHECK(approx(randomized_lb_certificate(0.1), 1.0 / 6.0, 1e-12));
    CHECK_THROWS_AS(randomized_lb_certificate(0.0), std::invalid_argument);
    CHECK_THROWS_AS(randomized_lb_certificate(0.2), std::invalid_argument);
}

TEST_CASE("the two-agent squeeze certifies one quarter for fixed rules") {
    CHECK(approx(deterministic_probe_single(mech("phantom-half")).error, 0.25, 1e-12));
    CHECK(approx(deterministic_probe_single(mech("fixed:p=0.5")).error, 0.25, 1e-12));
    CHECK(approx(deterministic_probe_single(mech("median")).error, 0.5, 1e-12));
    CHECK(approx(deterministic_probe_single(mech("dictator:i=2")).error, 0.5, 1e-12));
    // the mean's certificate comes from the deviation gain, not the error
    CHECK(approx(deterministic_probe_single(mech("mean")).error, 0.25, 1e-12));
    CHECK_THROWS_AS(deterministic_probe_single(mech("lrc")), std::invalid_argument);
    CHECK_THROWS_AS(deterministic_probe_single(mech("fifths")), std::invalid_argument);
}

TEST_CASE("the k-facility squeeze certifies a sixth of a grid step") {
    CHECK(approx(deterministic_probe_k(mech("equal-spread:k=2")).error, 1.0 / 6.0,
                 1e-12));
    CHECK(approx(deterministic_probe_k(mech("equal-spread:k=3")).error, 0.1, 1e-12));
    CHECK(approx(deterministic_probe_k(mech("epec:k=2")).error, 1.0 / 6.0, 1e-12));
    CHECK(approx(deterministic_probe_k(mech("epec:k=3")).error, 0.1, 1e-12));
    CHECK(approx(deterministic_probe_k(mech("fifths")).error, 1.0 / 6.0, 1e-12));
    for (const char* name : {"equal-spread:k=2", "equal-spread:k=3", "epec:k=2",
                             "epec:k=3", "fifths"}) {
        Mechanism m = mech(name);
        CHECK(deterministic_probe_k(m).error >=
              1.0 / (6.0 * m.facility_count()) - 1e-9);
    }
    CHECK_THROWS_AS(deterministic_probe_k(mech("pec:k=2")), std::invalid_argument);
}

TEST_CASE("asserted worst-case bounds exist exactly where documented") {
    Objective max_eom = Objective::max_cost();
    Objective avg = Objective::average_cost();
    CHECK(known_error_bound(MechanismSpec::parse("blrc"), max_eom) ==
          doctest::Approx(1.0 / 6.0));
    CHECK(known_error_bound(MechanismSpec::parse("phantom-half"), max_eom) ==
          doctest::Approx(0.25));
    CHECK(known_error_bound(MechanismSpec::parse("dictator:i=1"), max_eom) ==
          doctest::Approx(0.5));
    CHECK(!known_error_bound(MechanismSpec::parse("dictator:i=1"), avg));
    CHECK(known_error_bound(MechanismSpec::parse("pec:k=3"), avg) ==
          doctest::Approx(0.1));
    CHECK(known_error_bound(MechanismSpec::parse("epec:k=2"), avg) ==
          doctest::Approx(0.25));
    CHECK(known_error_bound(MechanismSpec::parse("fifths"), avg) ==
          doctest::Approx(0.2));
    CHECK(!known_error_bound(MechanismSpec::parse("mean"), max_eom));
    // the coin-flip grids obey the tight per-agent bound only in the
    // weaker max-cost reading
    Objective max_moe = Objective::max_cost(MaxCostConvention::MaxOfExpectations);
    CHECK(known_error_bound(MechanismSpec::parse("pec:k=2"), max_moe) ==
          doctest::Approx(1.0 / 6.0));
    CHECK(known_error_bound(MechanismSpec::parse("pec:k=2"), max_eom) ==
          doctest::Approx(1.0 / 3.0));
}
