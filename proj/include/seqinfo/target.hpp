#pragma once

#include <string>
#include <vector>

#include "seqinfo/discount.hpp"
#include "seqinfo/measure.hpp"

namespace seqinfo::target {

/// Stationary value of implementing target lottery pi forever under
/// exponential discounting at rate rho:
/// V = c E_pi[F] / (c + rho (H(mu) - E_pi[H])).
double stationary_value(const PosteriorLottery& pi, const DecisionUtility& F,
                        const UncertaintyMeasure& H, double c, double rho_rate);

/// Shadow price of residual uncertainty,
/// g(x) = int (-rho'_t) e^{-ct/(H(mu)-x)} t/(H(mu)-x) dt / int rho_t e^{-ct/(H(mu)-x)} dt,
/// by composite Simpson quadrature with adaptive refinement. Requires
/// x < H_mu; exponential discounts admit the closed form
/// rate / (c + rate (H_mu - x)).
double g_function(double x, const DiscountFunction& discount, double c, double H_mu,
                  double tol = 1e-9);

/// Value of the full objective for a candidate lottery under a general
/// differentiable discount (quadrature; closed form when exponential).
double objective_value(const PosteriorLottery& pi, const DecisionUtility& F,
                       const UncertaintyMeasure& H, double c,
                       const DiscountFunction& discount);

struct Concavification {
    double value = 0.0;
    PosteriorLottery lottery;  // supporting lottery at the prior
};

/// Concave envelope of G(nu) = F(nu) + lambda H(nu) at the prior, with a
/// supporting lottery of grid atoms. Binary beliefs use a monotone-chain
/// upper hull on [0,1]; up to four states are handled by an exact LP over
/// simplex-grid samples (basic solutions keep support <= |X|).
Concavification concavify(const std::function<double(const Belief&)>& G, const Belief& mu,
                          int grid_points = 16001);

struct TargetSolution {
    PosteriorLottery lottery;
    double lambda = 0.0;
    double value = 0.0;
    double residual = 0.0;  // last fixed-point value change
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;  // value iterates, for non-convergence reports
};

/// Optimal target information structure by damped fixed-point iteration
/// on the multiplier: from pi_k compute the stationary value, set
/// lambda_k (exponential: (rho/c) V_k; general: g(E[H]) E[F]), concavify
/// F + lambda_k H and repeat until the value stabilizes. Non-convergence
/// is returned with the iterate trace, never silently patched.
TargetSolution solve_target(const DecisionUtility& F, const UncertaintyMeasure& H,
                            const Belief& mu, double c, const DiscountFunction& discount,
                            int max_iter = 500, double tol = 1e-8, int grid_points = 16001);

}  // namespace seqinfo::target
