#include "facline/core.hpp"

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace facline;
using oracle::approx;

TEST_CASE("profiles sort their reports and validate the range") {
    LocationProfile p({0.9, 0.1, 0.5});
    CHECK(p[0] == 0.1);
    CHECK(p[1] == 0.5);
    CHECK(p[2] == 0.9);
    CHECK(p.leftmost() == 0.1);
    CHECK(p.rightmost() == 0.9);
    CHECK(p.center() == 0.5);

    CHECK_THROWS_AS(LocationProfile({}), std::invalid_argument);
    CHECK_THROWS_AS(LocationProfile({-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(LocationProfile({0.2, 1.5}), std::invalid_argument);
}

TEST_CASE("placements sort and validate like profiles") {
    Placement p({0.7, 0.1});
    CHECK(p.locations() == std::vector<double>{0.1, 0.7});
    CHECK(p.facility_count() == 2);
    CHECK_THROWS_AS(Placement({}), std::invalid_argument);
    CHECK_THROWS_AS(Placement({2.0}), std::invalid_argument);
}

TEST_CASE("point cost is the distance to the nearest facility") {
    CHECK(point_cost(0.3, Placement({0.1, 0.7})) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(point_cost(0.5, Placement({0.5})) == 0.0);
    CHECK(approx(point_cost(2.0 / 3.0, Placement({1.0 / 3.0, 1.0})), 1.0 / 3.0, 1e-15));
}

TEST_CASE("randomized placements merge equal atoms and prune zero mass") {
    RandomizedPlacement merged({
        {Placement({0.5}), 0.25},
        {Placement({0.5}), 0.25},
        {Placement({0.2}), 0.5},
        {Placement({0.9}), 0.0},
    });
    CHECK(merged.atoms().size() == 2);
    CHECK(merged.atoms()[0].placement == Placement({0.2}));
    CHECK(approx(merged.atoms()[0].probability, 0.5, 1e-15));
    CHECK(merged.atoms()[1].placement == Placement({0.5}));
    CHECK(approx(merged.atoms()[1].probability, 0.5, 1e-15));
    CHECK(approx(merged.total_probability(), 1.0, 1e-12));
}

TEST_CASE("randomized placements reject bad mass or mixed arity") {
    CHECK_THROWS_AS(RandomizedPlacement({{Placement({0.5}), 0.9}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RandomizedPlacement({{Placement({0.5}), 1.2},
                                         {Placement({0.1}), -0.2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RandomizedPlacement({{Placement({0.5}), 0.5},
                                         {Placement({0.1, 0.9}), 0.5}}),
                    std::invalid_argument);
    CHECK(RandomizedPlacement::degenerate(Placement({0.3})).atoms().size() == 1);
}

TEST_CASE("expected point cost sums atom costs with their probabilities") {
    // hand-built mix: 0.2 w.p. 0.75, 0.8 w.p. 0.25, queried from 0.4
    RandomizedPlacement mix({{Placement({0.2}), 0.75}, {Placement({0.8}), 0.25}});
    double direct = 0.75 * 0.2 + 0.25 * 0.4;
    CHECK(approx(expected_point_cost(0.4, mix), direct, 1e-15));

    RandomizedPlacement sure = RandomizedPlacement::degenerate(Placement({0.9}));
    CHECK(approx(expected_point_cost(0.4, sure), 0.5, 1e-15));
}

TEST_CASE("deterministic max and average cost match direct sums") {
    LocationProfile profile({0.0, 0.1, 0.9, 1.0});
    Placement two({0.05, 0.95});
    CHECK(approx(max_cost(LocationProfile({0.0, 1.0}), Placement({0.5})), 0.5, 1e-15));
    CHECK(approx(average_cost(profile, two), 0.05, 1e-15));
    CHECK(average_cost(LocationProfile({0.4, 0.4, 0.4}), Placement({0.4})) == 0.0);
}

TEST_CASE("the two randomized max-cost readings differ as expected") {
    // mix of the extremes and the midpoint of (0, 1), mirroring a
    // left/right/center lottery: per-draw maxima are 1, 1, 0.5
    LocationProfile profile({0.0, 1.0});
    RandomizedPlacement mix({
        {Placement({0.0}), 0.25},
        {Placement({1.0}), 0.25},
        {Placement({0.5}), 0.5},
    });
    double expectation_of_max = 0.25 * 1.0 + 0.25 * 1.0 + 0.5 * 0.5;
    CHECK(approx(max_cost(profile, mix, MaxCostConvention::ExpectationOfMax),
                 expectation_of_max, 1e-15));
    // each agent's expected cost is 0.25*0 + 0.25*1 + 0.5*0.5 = 0.5
    CHECK(approx(max_cost(profile, mix, MaxCostConvention::MaxOfExpectations),
                 0.5, 1e-15));
}

TEST_CASE("expectation-of-max dominates max-of-expectations everywhere") {
    oracle::Rng rng(20260819);
    for (int trial = 0; trial < 200; ++trial) {
        LocationProfile profile(rng.profile(rng.between(1, 4)));
        int atom_count = rng.between(1, 4);
        std::vector<WeightedPlacement> atoms;
        double left = 1.0;
        for (int a = 0; a < atom_count; ++a) {
            double mass = (a == atom_count - 1) ? left : left * rng.unit();
            left -= (a == atom_count - 1) ? 0.0 : mass;
            atoms.push_back({Placement({rng.unit()}), mass});
        }
        // fix the remainder so the masses sum to exactly 1
        double sum = 0.0;
        for (auto& atom : atoms) sum += atom.probability;
        atoms.back().probability += 1.0 - sum;
        RandomizedPlacement mix(atoms);
        double eom = max_cost(profile, mix, MaxCostConvention::ExpectationOfMax);
        double moe = max_cost(profile, mix, MaxCostConvention::MaxOfExpectations);
        CHECK(eom >= moe - 1e-12);
        CHECK(eom >= 0.0);
        CHECK(eom <= 1.0 + 1e-12);
        CHECK(average_cost(profile, mix) <= eom + 1e-12);
    }
}

TEST_CASE("point cost is 1-Lipschitz in the query point") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Placement placement(rng.profile(rng.between(1, 3)));
        double a = rng.unit();
        double b = rng.unit();
        double da = point_cost(a, placement);
        double db = point_cost(b, placement);
        CHECK(std::abs(da - db) <= std::abs(a - b) + 1e-12);
    }
}

TEST_CASE("outcome helpers dispatch across the variant") {
    LocationProfile profile({0.0, 1.0});
    FacilityOutcome fixed = Placement({0.5});
    FacilityOutcome mix = RandomizedPlacement(
        {{Placement({0.0}), 0.5}, {Placement({1.0}), 0.5}});
    CHECK(facility_count(fixed) == 1);
    CHECK(facility_count(mix) == 1);
    CHECK(approx(expected_point_cost(0.25, fixed), 0.25, 1e-15));
    CHECK(approx(expected_point_cost(0.25, mix), 0.5, 1e-15));
    CHECK(approx(objective_cost(profile, fixed, Objective::max_cost()), 0.5, 1e-15));
    CHECK(approx(objective_cost(profile, mix, Objective::average_cost()), 0.5, 1e-15));
}
