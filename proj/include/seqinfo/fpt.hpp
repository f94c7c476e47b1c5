#pragma once

#include <vector>

#include "seqinfo/timedist.hpp"

namespace seqinfo::fpt {

/// First-passage problem for a zero-drift diffusion with two absorbing
/// barriers. grid_dt is the time step of the returned CDF grid.
struct FptProblem {
    double start = 0.5;
    double lo = 0.0;
    double hi = 1.0;
    double sigma2 = 0.25;
    double horizon = 10.0;
    double grid_dt = 1e-3;

    void validate() const;
    double width() const { return hi - lo; }
    /// E[T] = (start-lo)(hi-start)/sigma2 (martingale identity).
    double mean_analytic() const { return (start - lo) * (hi - start) / sigma2; }
    /// P(hit hi) = (start-lo)/(hi-lo).
    double hit_hi_analytic() const { return (start - lo) / (hi - lo); }
};

struct FptResult {
    DecisionTimeDistribution dist;
    bool horizon_warning = false;  // mass past the horizon exceeds 1e-6
    double tail_mass = 0.0;
};

/// Survival probability of the absorbing heat equation by the spectral
/// sine series, truncated adaptively when the next term's magnitude bound
/// drops below 1e-12 (at least 5 terms). The CDF is clamped to [0,1];
/// the series can undershoot by ~1e-9 near t = 0.
FptResult fpt_series(const FptProblem& problem);

/// Survival at a single time by the same series.
double series_survival(const FptProblem& problem, double t);

/// Absorbed barrier masses up to time t by the integrated boundary-flux
/// series (computed against the exact hitting probabilities so the
/// truncation stays rigorous).
void series_barrier_masses(const FptProblem& problem, double t, double& mass_lo,
                           double& mass_hi);

struct PdeResult {
    DecisionTimeDistribution dist;
    std::vector<double> absorbed_lo;  // per grid time
    std::vector<double> absorbed_hi;
    double final_absorbed_lo = 0.0;
    double final_absorbed_hi = 0.0;
    double max_conservation_error = 0.0;  // |interior + absorbed - 1|
};

/// Independent cross-check: implicit (backward Euler) finite differences
/// on the same heat equation, absorbing rows pinned to zero. Barrier
/// absorption is accounted through the discrete boundary flux, which
/// keeps interior + absorbed mass conserved to roundoff. The output grid
/// is sub-stepped down to max_dt_step (the scheme is first order in time).
PdeResult fpt_pde(const FptProblem& problem, int nx = 401, double max_dt_step = 2.5e-4);

/// Distribution over beliefs at a fixed time: interior density on a grid
/// plus the accumulated point masses at the barriers. At t = 0 the unit
/// point mass at the start is returned as a discrete delta on the grid.
struct CrossSection {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> density;
    double mass_lo = 0.0;
    double mass_hi = 0.0;

    /// Trapezoid integral of the interior density.
    double interior_mass() const;
};

CrossSection cross_section(const FptProblem& problem, double t, int nx = 2001);

}  // namespace seqinfo::fpt
