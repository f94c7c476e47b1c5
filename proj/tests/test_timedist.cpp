#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "seqinfo/timedist.hpp"

using namespace seqinfo;

TEST_CASE("means") {
    CHECK(DecisionTimeDistribution::deterministic(1.0).mean() == doctest::Approx(1.0));
    CHECK(DecisionTimeDistribution::exponential(1.0).mean() == doctest::Approx(1.0).epsilon(1e-6));
    // Geometric mean identity: per-period stop probability 1/2 waits 2.
    CHECK(DecisionTimeDistribution::geometric(0.5).mean() == doctest::Approx(2.0));
    CHECK(DecisionTimeDistribution::geometric(1.0).cdf(1.0) == doctest::Approx(1.0));
}

TEST_CASE("improper distribution flagged") {
    auto d = DecisionTimeDistribution::from_grid({0.0, 1.0, 2.0}, {0.0, 0.3, 0.6});
    CHECK_FALSE(d.proper());
    CHECK_THROWS_AS(d.mean(), std::domain_error);
}

TEST_CASE("integrated cdf") {
    auto det = DecisionTimeDistribution::deterministic(1.0);
    CHECK(det.integrated_cdf(1.0) == doctest::Approx(0.0));
    CHECK(det.integrated_cdf(2.5) == doctest::Approx(1.5));
    auto exp1 = DecisionTimeDistribution::exponential(1.0);
    CHECK(exp1.integrated_cdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(exp1.integrated_cdf(0.0) == doctest::Approx(0.0));
    // Numeric grid agrees with the analytic path it tabulates.
    auto grid = exp1.grid();
    std::vector<double> cdf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = 1.0 - std::exp(-grid[i]);
    auto numeric = DecisionTimeDistribution::from_grid(grid, cdf);
    for (double s : {0.3, 1.0, 2.7, 9.0})
        CHECK(numeric.integrated_cdf(s) == doctest::Approx(exp1.integrated_cdf(s)).epsilon(1e-6));
}

TEST_CASE("integrated cdf is convex in s") {
    auto exp1 = DecisionTimeDistribution::exponential(1.3);
    auto det = DecisionTimeDistribution::deterministic(0.7);
    for (const auto& d : {exp1, det}) {
        double h = 0.05;
        for (int i = 1; i < 100; ++i) {
            double s = i * h;
            double second = d.integrated_cdf(s + h) + d.integrated_cdf(s - h) -
                            2.0 * d.integrated_cdf(s);
            CHECK(second >= -1e-12);
        }
    }
}

TEST_CASE("sosd verdicts for the canonical pair") {
    auto det = DecisionTimeDistribution::deterministic(1.0);
    auto exp1 = DecisionTimeDistribution::exponential(1.0);
    auto r = sosd_compare(det, exp1);
    CHECK(r.verdict == SosdVerdict::d2_mps_of_d1);  // exponential spreads the deterministic
    auto r2 = sosd_compare(exp1, det);
    CHECK(r2.verdict == SosdVerdict::d1_mps_of_d2);
    auto r3 = sosd_compare(exp1, exp1);
    CHECK(r3.verdict == SosdVerdict::equal);
}

TEST_CASE("sosd rejects unequal means") {
    auto d1 = DecisionTimeDistribution::deterministic(1.0);
    auto d2 = DecisionTimeDistribution::deterministic(2.0);
    auto r = sosd_compare(d1, d2);
    CHECK(r.verdict == SosdVerdict::incomparable);
    CHECK(r.reason.find("means differ") != std::string::npos);
}

TEST_CASE("sosd detects crossing integrated cdfs") {
    // Equal means 1: a 50/50 two-point distribution at {0.5, 1.5} versus a
    // 80/20 at {0.75, 2.0}; their integrated CDFs cross.
    auto a = DecisionTimeDistribution::empirical(
        []{ std::vector<double> v; for (int i = 0; i < 5000; ++i) { v.push_back(0.5); v.push_back(1.5);} return v; }());
    auto b = DecisionTimeDistribution::empirical(
        []{ std::vector<double> v; for (int i = 0; i < 8000; ++i) v.push_back(0.75);
            for (int i = 0; i < 2000; ++i) v.push_back(2.0); return v; }());
    // Means: 1.0 vs 0.6+0.4 = 1.0.
    auto r = sosd_compare(a, b);
    CHECK(r.verdict == SosdVerdict::incomparable);
}

TEST_CASE("empirical distribution basics") {
    std::vector<double> times{0.5, 1.0, 1.5};
    auto d = DecisionTimeDistribution::empirical(times);
    CHECK(d.mean() == doctest::Approx(1.0));
    CHECK(d.cdf(0.99) == doctest::Approx(1.0 / 3.0));
    CHECK(d.integrated_cdf(1.5) == doctest::Approx((1.0 + 0.5) / 3.0));
}

TEST_CASE("exhaustiveness check") {
    CHECK(exhaustiveness_check(DecisionTimeDistribution::geometric(0.5), 1.0, 2.0, 1e-9));
    CHECK(exhaustiveness_check(DecisionTimeDistribution::deterministic(2.0), 1.0, 2.0, 1e-9));
    CHECK_FALSE(exhaustiveness_check(DecisionTimeDistribution::deterministic(4.0), 1.0, 2.0, 1e-6));
}
