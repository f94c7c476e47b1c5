#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "seqinfo/dp.hpp"

using namespace seqinfo;
namespace dp = seqinfo::dp;

TEST_CASE("closed-form value examples") {
    auto tl4 = DiscountFunction::truncated_linear(4.0);
    // c >= Ibar stops in one period.
    CHECK(dp::closed_form_value(1.0, 1.0, 1.0, tl4, 100).value ==
          doctest::Approx(tl4.value(1.0)).epsilon(1e-14));
    // Finite hand sum: (3/4)(1/2) + (2/4)(1/4) + (1/4)(1/8) = 0.53125.
    CHECK(dp::closed_form_value(1.0, 2.0, 1.0, tl4, 100).value ==
          doctest::Approx(0.53125).epsilon(1e-14));
    // Continuous-mode analog of the stationary value.
    CHECK(dp::closed_form_value_continuous(1.0, 1.0, 1.0, DiscountFunction::exponential(1.0),
                                           50.0)
              .value == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(dp::closed_form_value(0.0, 1.0, 1.0, tl4, 10), std::invalid_argument);
    CHECK_THROWS_AS(dp::closed_form_value(1.0, -1.0, 1.0, tl4, 10), std::invalid_argument);
}

TEST_CASE("closed-form table spot values") {
    auto grid = dp::uniform_grid(0.0, 2.0, 101);
    auto table = dp::closed_form_table(1.0, 2.0, 1.0, 4, grid);
    // V_T(I) = 0 for all I.
    for (double v : table.value[3]) CHECK(v == doctest::Approx(0.0));
    // V_1(0) matches the hand sum.
    CHECK(table.value[0][0] == doctest::Approx(0.53125).epsilon(1e-14));
    // At I = Ibar - c the two branches agree: V_t = (T-t)/T V*.
    auto grid2 = dp::uniform_grid(0.0, 1.0, 5);  // contains 0.75
    auto table2 = dp::closed_form_table(0.25, 1.0, 1.0, 6, grid2);
    CHECK(table2.value[1][3] == doctest::Approx((6.0 - 2.0) / 6.0).epsilon(1e-14));
}

TEST_CASE("backward induction matches the closed form") {
    const double c = 0.25, Ibar = 1.0, Vstar = 1.0;
    const int T = 6;
    auto grid = dp::uniform_grid(0.0, Ibar, 101);
    auto bi = dp::backward_induction(c, Ibar, Vstar, T, grid);
    auto cf = dp::closed_form_table(c, Ibar, Vstar, T, grid);
    CHECK(bi.max_abs_diff(cf) < 1e-10);
    CHECK(bi.monotone_in_info());
    // Last period before the deadline: V_{T-1}(I) = (1/T)((c+I)/Ibar) V*.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (c + grid[i] < Ibar)
            CHECK(bi.value[T - 2][i] ==
                  doctest::Approx((1.0 / T) * (c + grid[i]) / Ibar).epsilon(1e-12));
    }
    // Banking is never recorded as optimal below the stop-now boundary.
    for (int t = 1; t <= T - 1; ++t)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (c + grid[i] < Ibar) CHECK(bi.opt_next_info[t - 1][i] == doctest::Approx(0.0));
    // Cells that can already stop for sure collect (T-t)/T V*.
    for (int t = 1; t <= T; ++t)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (c + grid[i] >= Ibar)
                CHECK(bi.value[t - 1][i] ==
                      doctest::Approx((static_cast<double>(T - t) / T) * Vstar).epsilon(1e-12));
}

TEST_CASE("backward induction, several (c, Ibar, T)") {
    std::vector<std::pair<double, double>> pairs{{1.0, 2.0}, {0.25, 1.0}, {0.5, 1.5}, {0.2, 0.6}};
    for (auto [c, Ibar] : pairs) {
        for (int T : {3, 5, 8}) {
            auto grid = dp::uniform_grid(0.0, Ibar, 41);
            auto bi = dp::backward_induction(c, Ibar, 1.0, T, grid);
            auto cf = dp::closed_form_table(c, Ibar, 1.0, T, grid);
            CHECK(bi.max_abs_diff(cf) < 1e-10);
            CHECK(bi.monotone_in_info());
        }
    }
}

TEST_CASE("brute force oracle finds the stationary policy") {
    auto rho = DiscountFunction::truncated_linear(3.0);
    std::vector<double> p_grid, I_grid;
    for (int i = 0; i <= 10; ++i) p_grid.push_back(i / 10.0);
    for (int i = 0; i <= 10; ++i) I_grid.push_back(0.2 * i);
    auto res = dp::brute_force_oracle(1.0, 2.0, 1.0, rho, 3, p_grid, I_grid);
    CHECK(res.horizon == 2);  // rho_3 = 0
    for (double p : res.best.p) CHECK(p == doctest::Approx(0.5));
    for (double I : res.best.I) CHECK(I == doctest::Approx(0.0));
    CHECK(res.value == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
    CHECK(res.best.feasibility_gap(1.0, 2.0) <= 1e-12);
}

TEST_CASE("oracle stops immediately when capacity covers the target") {
    auto rho = DiscountFunction::truncated_linear(2.0);
    std::vector<double> grid01{0.0, 0.25, 0.5, 0.75, 1.0};
    auto res = dp::brute_force_oracle(1.5, 1.0, 1.0, rho, 2, grid01, {0.0, 0.5, 1.0});
    CHECK(res.best.p[0] == doctest::Approx(1.0));
}

TEST_CASE("oracle value never beats the closed form; banking never strict") {
    auto rho = DiscountFunction::exponential(1.0);
    std::vector<double> p_grid{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> I_grid{0.0, 0.5, 1.0};
    auto res = dp::brute_force_oracle(0.5, 1.0, 1.0, rho, 4, p_grid, I_grid);
    auto cf = dp::closed_form_value(0.5, 1.0, 1.0, rho, res.horizon);
    CHECK(res.value <= cf.value + 1e-12);
    // p-grid contains c/Ibar: the oracle recovers the closed form exactly.
    CHECK(res.value == doctest::Approx(cf.value).epsilon(1e-13));
    for (double I : res.best.I) CHECK(I == doctest::Approx(0.0));
}

TEST_CASE("oracle dominance on random instances") {
    // Any finite enumeration is a feasible prefix of an infinite-horizon
    // policy, so its value never beats the closed-form optimum. With a
    // truncated-linear discount the horizon is intrinsic and the oracle
    // recovers the optimum exactly when c/Ibar is on the p-grid.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        double Ibar = 0.5 + 1.5 * unif(rng);
        double c = Ibar * (0.2 + 0.6 * unif(rng));
        int T = 3 + k % 3;
        DiscountFunction rho = k % 2 ? DiscountFunction::exponential(0.5 + unif(rng))
                                     : DiscountFunction::hyperbolic(0.5 + unif(rng));
        std::vector<double> p_grid{0.0, 0.25, 0.5, 0.75, 1.0, c / Ibar};
        std::sort(p_grid.begin(), p_grid.end());
        std::vector<double> I_grid{0.0, Ibar / 2.0, Ibar};
        auto res = dp::brute_force_oracle(c, Ibar, 1.0, rho, T, p_grid, I_grid);
        auto cf = dp::closed_form_value(c, Ibar, 1.0, rho, 4000);
        CHECK(res.value <= cf.value + 1e-12);

        auto tl = DiscountFunction::truncated_linear(static_cast<double>(T));
        auto res_tl = dp::brute_force_oracle(c, Ibar, 1.0, tl, T, p_grid, I_grid);
        auto cf_tl = dp::closed_form_value(c, Ibar, 1.0, tl, T);
        CHECK(res_tl.value == doctest::Approx(cf_tl.value).epsilon(1e-12));
        for (double I : res_tl.best.I) CHECK(I == doctest::Approx(0.0));
        for (double p : res_tl.best.p) CHECK(p == doctest::Approx(c / Ibar));
    }
}

TEST_CASE("oracle refuses past the budget") {
    auto rho = DiscountFunction::exponential(0.5);
    auto grid = dp::uniform_grid(0.0, 1.0, 21);
    CHECK_THROWS_AS(dp::brute_force_oracle(0.5, 1.0, 1.0, rho, 8, grid, grid),
                    std::invalid_argument);
}

TEST_CASE("stationary policy distribution") {
    // c = Ibar stops in the first period with certainty.
    auto d1 = dp::stationary_policy_distribution(1.0, 1.0, 50.0, false);
    CHECK(d1.cdf(1.0) == doctest::Approx(1.0));
    auto d2 = dp::stationary_policy_distribution(1.0, 2.0, 200.0, false);
    CHECK(d2.cdf(3.0) == doctest::Approx(0.875).epsilon(1e-14));
    CHECK(d2.mean() == doctest::Approx(2.0));
    auto dc = dp::stationary_policy_distribution(1.0, 1.0, 40.0, true);
    CHECK(dc.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(dc.mean() == doctest::Approx(1.0));
}

TEST_CASE("expected time lower bound") {
    CHECK(dp::expected_time_lower_bound(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(dp::expected_time_lower_bound(2.0, 1.0) == doctest::Approx(0.5));
    CHECK(dp::expected_time_lower_bound(1.0, 4.0) == doctest::Approx(4.0));
}

TEST_CASE("discretization certificate: stationary path is tight") {
    double c = 1.0, Ibar = 1.0;
    auto rho = DiscountFunction::exponential(1.0);
    auto rep = dp::discretization_certificate([&](double) { return c / Ibar; }, c, Ibar, 1.0,
                                              rho, 10.0, 1e-3);
    CHECK(rep.pass);
    CHECK(std::abs(rep.min_info) < 1e-10);
    CHECK(rep.max_feasibility_violation <= rep.feasibility_tol);
    CHECK(rep.max_recursion_error < 1e-13);
    CHECK(rep.discretized_objective <= rep.closed_form_bound + 1e-4);
}

TEST_CASE("discretization certificate: ramp keeps the bank nonnegative") {
    double c = 1.0, Ibar = 1.0;
    auto rho = DiscountFunction::exponential(1.0);
    auto ramp = [&](double t) { return std::min(2.0 * t, 2.0) * c / Ibar; };
    auto rep = dp::discretization_certificate(ramp, c, Ibar, 1.0, rho, 1.0, 1e-3);
    CHECK(rep.info_nonnegative);
    CHECK(rep.feasibility_ok);
    CHECK(rep.objective_dominated);
}

TEST_CASE("discretization certificate: infeasible path flagged") {
    double c = 1.0, Ibar = 1.0;
    auto rho = DiscountFunction::exponential(1.0);
    auto rep = dp::discretization_certificate([](double) { return 2.0; }, c, Ibar, 1.0, rho,
                                              2.0, 1e-3);
    CHECK_FALSE(rep.info_nonnegative);
    CHECK(rep.first_violation_time >= 0.0);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("convex reduction certificate") {
    for (auto rho : {DiscountFunction::exponential(1.0), DiscountFunction::hyperbolic(1.0)}) {
        auto rep = dp::convex_reduction_certificate(1.0, 2.0, 1.0, rho, 1e-6);
        CHECK(rep.pass);
        CHECK(std::abs(rep.diff) <= 2e-6);
        CHECK(rep.max_reconstruction_error < 1e-10);
    }
}

TEST_CASE("value table rejects bad inputs") {
    CHECK_THROWS_AS(dp::backward_induction(1.0, 1.0, 1.0, 4, {}), std::invalid_argument);
    CHECK_THROWS_AS(dp::stationary_policy_distribution(2.0, 1.0, 10.0, true),
                    std::invalid_argument);
}
