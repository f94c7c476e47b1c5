#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "seqinfo/fpt.hpp"

using namespace seqinfo;
using fpt::FptProblem;

namespace {

FptProblem paper_problem() {
    FptProblem p;
    p.start = 0.5;
    p.lo = 0.0;
    p.hi = 1.0;
    p.sigma2 = 0.25;
    p.horizon = 16.0;
    p.grid_dt = 1e-3;
    return p;
}

}  // namespace

TEST_CASE("problem validation") {
    FptProblem p = paper_problem();
    p.start = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = paper_problem();
    p.sigma2 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("series: no absorption at time zero") {
    auto p = paper_problem();
    CHECK(fpt::series_survival(p, 0.0) == doctest::Approx(1.0));
    auto res = fpt::fpt_series(p);
    CHECK(res.dist.cdf(0.0) == doctest::Approx(0.0));
    CHECK_FALSE(res.horizon_warning);
}

TEST_CASE("series: mean matches the analytic identity") {
    auto p = paper_problem();
    auto res = fpt::fpt_series(p);
    CHECK(res.dist.mean() == doctest::Approx(p.mean_analytic()).epsilon(1e-6));
    CHECK(p.mean_analytic() == doctest::Approx(1.0));

    // Off-center start.
    p.start = 0.3;
    auto res2 = fpt::fpt_series(p);
    CHECK(res2.dist.mean() == doctest::Approx(0.3 * 0.7 / 0.25).epsilon(1e-6));
}

TEST_CASE("series: short horizon raises the warning flag") {
    auto p = paper_problem();
    p.horizon = 2.0;
    auto res = fpt::fpt_series(p);
    CHECK(res.horizon_warning);
    CHECK(res.tail_mass > 1e-6);
}

TEST_CASE("pde: hitting probabilities and conservation") {
    auto p = paper_problem();
    p.horizon = 14.0;
    auto res = fpt::fpt_pde(p, 201, 1e-3);
    // Symmetric split.
    CHECK(std::abs(res.final_absorbed_lo - res.final_absorbed_hi) < 1e-10);
    CHECK(res.max_conservation_error < 1e-6);

    p.start = 0.75;
    auto res2 = fpt::fpt_pde(p, 401, 5e-4);
    CHECK(res2.final_absorbed_hi == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("pde agrees with the series; refinement shrinks the gap") {
    auto p = paper_problem();
    p.horizon = 10.0;
    auto series = fpt::fpt_series(p);
    auto pde = fpt::fpt_pde(p);
    const auto& g = series.dist.grid();
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 7)
        sup = std::max(sup, std::abs(series.dist.grid_cdf()[i] - pde.dist.cdf(g[i])));
    CHECK(sup < 1e-3);

    // First order in time: halving the step roughly halves the gap.
    auto coarse = fpt::fpt_pde(p, 401, 1e-3);
    auto fine = fpt::fpt_pde(p, 401, 5e-4);
    double sup_c = 0.0, sup_f = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 7) {
        sup_c = std::max(sup_c, std::abs(series.dist.grid_cdf()[i] - coarse.dist.cdf(g[i])));
        sup_f = std::max(sup_f, std::abs(series.dist.grid_cdf()[i] - fine.dist.cdf(g[i])));
    }
    CHECK(sup_f < 0.75 * sup_c);
    CHECK(sup_f > 0.25 * sup_c);
}

TEST_CASE("pde rejects undersized grids") {
    CHECK_THROWS_AS(fpt::fpt_pde(paper_problem(), 100), std::invalid_argument);
}

TEST_CASE("cross-section: delta at time zero") {
    auto p = paper_problem();
    auto cs = fpt::cross_section(p, 0.0, 2001);
    CHECK(cs.mass_lo == doctest::Approx(0.0));
    CHECK(cs.mass_hi == doctest::Approx(0.0));
    CHECK(cs.interior_mass() == doctest::Approx(1.0).epsilon(1e-9));
    // All mass sits at the start.
    std::size_t peak = 0;
    for (std::size_t i = 0; i < cs.density.size(); ++i)
        if (cs.density[i] > cs.density[peak]) peak = i;
    CHECK(cs.x[peak] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("cross-section: symmetry and conservation at t = 0.5") {
    auto p = paper_problem();
    auto cs = fpt::cross_section(p, 0.5, 2001);
    CHECK(std::abs(cs.mass_lo - cs.mass_hi) < 1e-9);
    for (std::size_t i = 0; i < cs.x.size() / 2; ++i)
        CHECK(std::abs(cs.density[i] - cs.density[cs.x.size() - 1 - i]) < 1e-9);
    CHECK(cs.interior_mass() + cs.mass_lo + cs.mass_hi == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cross-section: absorption empties the interior") {
    auto p = paper_problem();
    auto cs = fpt::cross_section(p, 40.0, 1001);
    CHECK(cs.interior_mass() < 1e-6);
    CHECK(cs.mass_lo == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cs.mass_hi == doctest::Approx(0.5).epsilon(1e-6));

    p.start = 0.7;
    auto cs2 = fpt::cross_section(p, 40.0, 1001);
    CHECK(cs2.mass_hi == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("conservation holds across output times") {
    auto p = paper_problem();
    for (double t : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
        auto cs = fpt::cross_section(p, t, 2001);
        double lo, hi;
        fpt::series_barrier_masses(p, t, lo, hi);
        CHECK(cs.interior_mass() + lo + hi == doctest::Approx(1.0).epsilon(1e-6));
        // Survival equals the interior mass.
        CHECK(fpt::series_survival(p, t) == doctest::Approx(cs.interior_mass()).epsilon(1e-6));
    }
}
