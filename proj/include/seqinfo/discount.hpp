#pragma once

#include <functional>
#include <vector>

#include "seqinfo/timedist.hpp"

namespace seqinfo {

/// One truncated-linear component of a convex discount function:
/// tau -> max{level + (tau - anchor_time) * slope, 0}, slope <= 0.
struct LinearPiece {
    int anchor_time = 0;
    double level = 0.0;
    double slope = 0.0;

    double value(double tau) const {
        double v = level + (tau - anchor_time) * slope;
        return v > 0.0 ? v : 0.0;
    }
};

/// Weakly decreasing, weakly convex discount function of time.
///
/// Families: exponential e^{-rate t}, hyperbolic 1/(1+k t), truncated
/// linear max{(T-t)/T, 0}, constant 1 (the risk-neutral knife edge;
/// equivalently the affine delay cost max{1-kappa t,0} is truncated
/// linear with T = 1/kappa), and tabulated values with linear
/// interpolation. Tabulated inputs are validated for monotonicity and
/// convexity unless explicitly constructed unchecked (negative controls).
class DiscountFunction {
  public:
    enum class Kind { exponential, hyperbolic, truncated_linear, constant, tabulated };

    static DiscountFunction exponential(double rate);
    static DiscountFunction hyperbolic(double k);
    static DiscountFunction truncated_linear(double T);
    static DiscountFunction constant();
    static DiscountFunction tabulated(std::vector<double> t, std::vector<double> v);
    /// Skips the monotone/convexity validation; for adversarial inputs.
    static DiscountFunction tabulated_unchecked(std::vector<double> t, std::vector<double> v);

    Kind kind() const { return kind_; }
    double param() const { return param_; }

    /// rho_t; throws for negative time.
    double value(double t) const;
    double operator()(double t) const { return value(t); }

    /// d rho / dt (analytic for the built-in families, central difference
    /// with the given step for tabulated ones).
    double derivative(double t, double h = 1e-6) const;

    /// sum_{tau = from}^{horizon} rho_tau over integer periods.
    double tail_sum(int from, int horizon) const;

    /// Finite-difference monotonicity/convexity test on [0,horizon].
    bool convex_decreasing_on_grid(double horizon, int n = 512, double slack = 1e-9) const;

  private:
    DiscountFunction(Kind k) : kind_(k) {}
    Kind kind_;
    double param_ = 0.0;
    std::vector<double> tab_t_, tab_v_;
};

/// Result of the truncated-linear decomposition of a convex discount.
struct Decomposition {
    std::vector<LinearPiece> pieces;  // anchors T, T-2, ..., 2 (zero pieces dropped)
    double tail_mass = 0.0;           // sum_{t >= T} rho_t to the report horizon
    bool tail_below_epsilon = false;
    double max_reconstruction_error = 0.0;  // max_{1<=t<=T-1} |rho_t - sum pieces|

    double sum_at(double tau) const {
        double s = 0.0;
        for (const auto& p : pieces) s += p.value(tau);
        return s;
    }
};

/// Splits a convex decreasing discount into truncated-linear pieces
/// anchored at T, T-2, ..., 2. The pieces reproduce rho exactly on the
/// integer periods 1..T-1 and never exceed it; mass past T (bounded by
/// epsilon for admissible T) is dropped and reported. A residual that
/// turns negative flags a non-convex input.
Decomposition decompose_truncated_linear(const DiscountFunction& rho, int T, double epsilon,
                                         int report_horizon = 10000);

/// E[rho_T] for decision time T ~ dist. Closed forms for analytic
/// distribution kinds (and exponential/constant discounts); grid kinds
/// use right-point Stieltjes sums on the CDF increments.
double expected_discount(const DiscountFunction& rho, const DecisionTimeDistribution& dist);

}  // namespace seqinfo
