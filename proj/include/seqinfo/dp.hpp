#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "seqinfo/discount.hpp"
#include "seqinfo/timedist.hpp"

namespace seqinfo::dp {

/// Per-period policy for the relaxed stopping problem: conditional stop
/// probabilities p_t and banked information I_t (I_1 = 0).
struct RelaxedPolicy {
    std::vector<double> p;  // p[t-1] = stop probability in period t
    std::vector<double> I;  // I[t-1] = information banked entering period t

    /// Max violation of (Ibar - I_t) p_t + (I_{t+1} - I_t)(1 - p_t) <= c.
    double feasibility_gap(double c, double info_total) const;
};

struct ValueResult {
    double value = 0.0;
    double tail_bound = 0.0;  // bound on the truncated mass past the horizon
};

/// Optimal value of the relaxed problem in discrete time:
/// sum_{t>=1} rho_t (1 - c/Ibar)^{t-1} (c/Ibar) V*. If c >= Ibar the
/// decision maker stops in the first period and the value is rho_1 V*.
ValueResult closed_form_value(double c, double info_total, double v_star,
                              const std::function<double(double)>& rho, int horizon);
ValueResult closed_form_value(double c, double info_total, double v_star,
                              const DiscountFunction& rho, int horizon);

/// Continuous-time analog: int rho_t e^{-(c/Ibar) t} (c/Ibar) dt V*.
/// Exponential discounts use the closed form, others composite Simpson.
ValueResult closed_form_value_continuous(double c, double info_total, double v_star,
                                         const DiscountFunction& rho, double horizon);

/// Value table V_t(I) for t = 1..T on a grid of banked-information levels,
/// with the maximizing (p, I') recorded per cell.
struct ValueTable {
    int T = 0;
    std::vector<double> info_grid;
    std::vector<std::vector<double>> value;   // [t-1][i]
    std::vector<std::vector<double>> opt_p;   // [t-1][i]
    std::vector<std::vector<double>> opt_next_info;

    double max_abs_diff(const ValueTable& other) const;
    bool monotone_in_info(double slack = 1e-12) const;
};

/// Backward induction for the truncated-linear discount (T-t)/T.
/// The p-search grid is n_p uniform points on [0,1] plus the exact
/// points (c+I)/Ibar for every grid level I, so the conjectured optimum
/// is representable and the certificate against the closed-form table is
/// exact up to roundoff.
ValueTable backward_induction(double c, double info_total, double v_star, int T,
                              const std::vector<double>& info_grid, int n_p = 51);

/// Direct evaluation of the conjectured solution of the functional
/// equation under the truncated-linear discount.
ValueTable closed_form_table(double c, double info_total, double v_star, int T,
                             const std::vector<double>& info_grid);

std::vector<double> uniform_grid(double lo, double hi, int n);

struct OracleResult {
    RelaxedPolicy best;
    double value = 0.0;
    std::uint64_t evaluations = 0;
    int horizon = 0;  // number of enumerated periods (those with rho_t > 0)
};

/// Exhaustive enumeration of per-period (p_t, I_{t+1}) grid policies.
/// Enumerates the periods with rho_t > 0 (stopping later earns nothing).
/// Refuses to start past the evaluation budget.
OracleResult brute_force_oracle(double c, double info_total, double v_star,
                                const DiscountFunction& rho, int T,
                                const std::vector<double>& p_grid,
                                const std::vector<double>& info_grid,
                                std::uint64_t budget = 10'000'000);

/// Decision-time law of the stationary policy p = c/Ibar: geometric in
/// discrete time, exponential with rate c/Ibar in continuous time.
DecisionTimeDistribution stationary_policy_distribution(double c, double info_total,
                                                        double horizon, bool continuous);

/// Lemma bound: any feasible strategy has E[T] >= Ibar / c.
double expected_time_lower_bound(double c, double info_total);

/// Report of the continuous-to-discrete mapping check for a rate path p:
/// builds p-hat, P-hat, I-hat, c-hat = c dt and verifies the discrete
/// feasibility constraint and survival recursion, plus dominance of the
/// discretized objective by the closed-form bound at the hatted inputs.
struct DiscretizationReport {
    double dt = 0.0;
    double c_hat = 0.0;
    double max_feasibility_violation = 0.0;  // max_k lhs_k - c_hat
    double feasibility_tol = 0.0;            // pinned O(dt^2) tolerance
    double max_recursion_error = 0.0;        // survival recursion residual
    double min_info = 0.0;                   // min_t I_t along the path
    bool info_nonnegative = false;
    double first_violation_time = -1.0;      // where I_t < 0, if anywhere
    double discretized_objective = 0.0;
    double closed_form_bound = 0.0;
    bool feasibility_ok = false;
    bool objective_dominated = false;
    bool pass = false;
};

DiscretizationReport discretization_certificate(const std::function<double(double)>& rate_path,
                                                double c, double info_total, double v_star,
                                                const DiscountFunction& rho, double horizon,
                                                double dt);

/// Convex-discount reduction: the value under a convex rho is recovered
/// by summing the values under its truncated-linear pieces, up to the
/// weighted tail past the decomposition horizon (< epsilon by the choice
/// of T). Mirrors the proof chain behind the optimality of the
/// stationary policy for general convex discounting.
struct ConvexReductionReport {
    int T = 0;
    double direct = 0.0;
    double piece_sum = 0.0;
    double weighted_tail = 0.0;
    double diff = 0.0;
    double max_reconstruction_error = 0.0;
    bool pass = false;
};

ConvexReductionReport convex_reduction_certificate(double c, double info_total, double v_star,
                                                   const DiscountFunction& rho, double epsilon,
                                                   int max_T = 400, int horizon = 4000);

}  // namespace seqinfo::dp
