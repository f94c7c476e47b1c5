#pragma once

#include <optional>
#include <vector>

#include "seqinfo/discount.hpp"
#include "seqinfo/fpt.hpp"
#include "seqinfo/measure.hpp"
#include "seqinfo/timedist.hpp"

namespace seqinfo::strategies {

enum class StrategyKind { pure_accumulation, gaussian, poisson };

/// A canonical learning strategy: flow capacity c, uncertainty measure H
/// and the target lottery to implement. info_total() is the posterior-
/// separable measure of the target.
struct StrategySpec {
    StrategyKind kind = StrategyKind::poisson;
    double c = 1.0;
    UncertaintyMeasure H = UncertaintyMeasure::quadratic();
    PosteriorLottery target = PosteriorLottery::binary_full_revelation(0.5);
    double horizon_multiple = 10.0;  // decision-time grid spans [0, multiple * Ibar/c]
    std::size_t grid_points = 10000;

    void validate() const;
    double info_total() const;
    /// Arrival rate of the stationary decisive signal, c / Ibar.
    double poisson_rate() const;
};

/// Sampled belief path (pure accumulation in the paper's symmetric
/// configuration only).
struct BeliefPath {
    std::vector<double> t;
    std::vector<double> mu;
};

struct StrategyOutcome {
    DecisionTimeDistribution time_dist;
    double mean_decision_time = 0.0;  // Ibar / c for exhaustive strategies
    double v_star = 1.0;              // expected decision value of the target
    std::optional<BeliefPath> path;   // pure accumulation, paper configuration
    std::optional<double> sigma2;     // gaussian only

    /// Expected utility under the discount: E[rho_T] * V*.
    double value(const DiscountFunction& rho) const;
};

/// Deterministic decision at Ibar/c after banking all capacity. For the
/// paper's symmetric configuration (binary, prior 1/2, quadratic H,
/// full-revelation target) the belief path mu(t) = (1+sqrt(ct))/2 is
/// sampled as well; other targets produce the time-only outcome.
StrategyOutcome pure_accumulation(const StrategySpec& spec, const DecisionUtility& F);

/// Stationary decisive signal at rate c/Ibar; exponential decision time.
StrategyOutcome poisson(const StrategySpec& spec, const DecisionUtility& F);

/// Zero-drift belief diffusion with absorbing barriers at the target
/// posteriors. Requires the symmetric binary configuration (prior 1/2,
/// equal-probability atoms {nu, 1-nu}, quadratic-family H) where the
/// capacity constraint pins sigma^2 = 2c/(-H''). The decision time is the
/// first-passage law from the series solver.
StrategyOutcome gaussian(const StrategySpec& spec, const DecisionUtility& F);

/// Closed-form value of Gaussian learning at the paper's parameters
/// (c = 1, unit exponential discount, quadratic H):
/// V(x) = (e^{2 sqrt 2} + e^{4 sqrt 2 x}) / (1 + e^{2 sqrt 2}) e^{-2 sqrt 2 x}.
double gaussian_value_analytic(double mu);

}  // namespace seqinfo::strategies
