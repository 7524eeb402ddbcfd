#include "facline/optimal.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace facline;
using oracle::approx;

TEST_CASE("single-facility closed forms hit the known optima") {
    OptResult span = opt_max_single(LocationProfile({0.1, 0.5}));
    CHECK(span.placement == Placement({0.3}));
    CHECK(approx(span.cost, 0.2, 1e-15));

    OptResult mad = opt_avg_single(LocationProfile({0.0, 1.0}));
    CHECK(mad.placement == Placement({0.0}));  // lower median
    CHECK(approx(mad.cost, 0.5, 1e-15));

    CHECK(approx(opt_avg_single(LocationProfile({0.0, 0.0, 1.0})).cost, 1.0 / 3.0,
                 1e-15));
    OptResult skew = opt_avg_single(LocationProfile({0.2, 0.4, 0.9}));
    CHECK(skew.placement == Placement({0.4}));
    CHECK(approx(skew.cost, 7.0 / 30.0, 1e-15));
}

TEST_CASE("single-facility closed forms agree with dense grid search") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> reports = rng.profile(rng.between(1, 7));
        LocationProfile profile(reports);
        CHECK(approx(opt_max_single(profile).cost,
                     oracle::grid_opt_single(reports, true), 1e-4));
        CHECK(approx(opt_avg_single(profile).cost,
                     oracle::grid_opt_single(reports, false), 1e-4));
    }
}

TEST_CASE("k-facility max solver splits where it should") {
    OptResult r = opt_max_k(LocationProfile({0.0, 0.4, 1.0}), 2);
    CHECK(approx(r.cost, 0.2, 1e-15));
    CHECK(approx(max_cost(LocationProfile({0.0, 0.4, 1.0}), r.placement), r.cost,
                 1e-12));
    CHECK(opt_max_k(LocationProfile({0.0, 0.5, 1.0}), 3).cost == 0.0);
    CHECK(opt_max_k(LocationProfile({0.3, 0.3}), 1).cost == 0.0);
}

TEST_CASE("k-facility average solver serves runs from their medians") {
    LocationProfile profile({0.0, 0.1, 0.9, 1.0});
    OptResult r = opt_avg_k(profile, 2);
    CHECK(approx(r.cost, 0.05, 1e-15));
    CHECK(r.placement == Placement({0.0, 0.9}));
    CHECK(approx(average_cost(profile, r.placement), r.cost, 1e-12));
}

TEST_CASE("returned placements actually achieve the reported cost") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        LocationProfile profile(rng.profile(rng.between(1, 8)));
        int k = rng.between(1, 3);
        OptResult mx = opt_max_k(profile, k);
        OptResult av = opt_avg_k(profile, k);
        CHECK(mx.placement.facility_count() == static_cast<std::size_t>(k));
        CHECK(av.placement.facility_count() == static_cast<std::size_t>(k));
        CHECK(approx(max_cost(profile, mx.placement), mx.cost, 1e-12));
        CHECK(approx(average_cost(profile, av.placement), av.cost, 1e-12));
    }
}

TEST_CASE("exact solvers match exhaustive assignment search") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> reports = rng.profile(rng.between(1, 8));
        int k = rng.between(1, 3);
        LocationProfile profile(reports);
        CHECK(approx(opt_max_k(profile, k).cost,
                     oracle::brute_force_opt_max(reports, k), 1e-12));
        CHECK(approx(opt_avg_k(profile, k).cost,
                     oracle::brute_force_opt_avg(reports, k), 1e-12));
    }
}

TEST_CASE("optimal cost never rises with more facilities") {
    oracle::Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        LocationProfile profile(rng.profile(rng.between(2, 8)));
        for (int k = 1; k < 4; ++k) {
            CHECK(opt_max_k(profile, k + 1).cost <= opt_max_k(profile, k).cost + 1e-12);
            CHECK(opt_avg_k(profile, k + 1).cost <= opt_avg_k(profile, k).cost + 1e-12);
        }
    }
}

TEST_CASE("general solvers at k=1 collapse to the closed forms") {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        LocationProfile profile(rng.profile(rng.between(1, 8)));
        CHECK(approx(opt_max_k(profile, 1).cost, opt_max_single(profile).cost, 1e-12));
        CHECK(approx(opt_avg_k(profile, 1).cost, opt_avg_single(profile).cost, 1e-12));
    }
}

TEST_CASE("max-cost optimum is always half a gap between two reports") {
    oracle::Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> reports = rng.profile(rng.between(2, 8));
        LocationProfile profile(reports);
        double cost = opt_max_k(profile, rng.between(1, 3)).cost;
        bool found = false;
        for (std::size_t i = 0; i < reports.size() && !found; ++i) {
            for (std::size_t j = 0; j < reports.size() && !found; ++j) {
                found = approx(std::abs(reports[j] - reports[i]) / 2.0, cost, 1e-12);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("enough facilities drive both objectives to zero") {
    oracle::Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int n = rng.between(1, 5);
        LocationProfile profile(rng.profile(n));
        CHECK(opt_max_k(profile, n).cost == 0.0);
        CHECK(opt_avg_k(profile, n).cost == 0.0);
        CHECK(opt_max_k(profile, n + 2).cost == 0.0);
    }
}

TEST_CASE("objective dispatch picks the matching solver") {
    LocationProfile profile({0.0, 0.4, 1.0});
    CHECK(approx(optimal_for(profile, 2, ObjectiveKind::MaxCost).cost, 0.2, 1e-15));
    CHECK(optimal_for(profile, 2, ObjectiveKind::AverageCost).cost <
          optimal_for(profile, 1, ObjectiveKind::AverageCost).cost);
}
