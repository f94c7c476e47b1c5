#include "seqinfo/discount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqinfo/quadrature.hpp"

namespace seqinfo {

DiscountFunction DiscountFunction::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("DiscountFunction: rate must be positive");
    DiscountFunction d(Kind::exponential);
    d.param_ = rate;
    return d;
}

DiscountFunction DiscountFunction::hyperbolic(double k) {
    if (k <= 0.0) throw std::invalid_argument("DiscountFunction: k must be positive");
    DiscountFunction d(Kind::hyperbolic);
    d.param_ = k;
    return d;
}

DiscountFunction DiscountFunction::truncated_linear(double T) {
    if (T <= 0.0) throw std::invalid_argument("DiscountFunction: T must be positive");
    DiscountFunction d(Kind::truncated_linear);
    d.param_ = T;
    return d;
}

DiscountFunction DiscountFunction::constant() { return DiscountFunction(Kind::constant); }

DiscountFunction DiscountFunction::tabulated_unchecked(std::vector<double> t,
                                                       std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("DiscountFunction: tabulated needs matching t/v, size >= 2");
    if (!std::is_sorted(t.begin(), t.end()))
        throw std::invalid_argument("DiscountFunction: tabulated times not increasing");
    if (t.front() > 1e-12)
        throw std::invalid_argument("DiscountFunction: tabulated grid must start at 0");
    for (double x : v)
        if (x < 0.0) throw std::invalid_argument("DiscountFunction: negative discount value");
    DiscountFunction d(Kind::tabulated);
    d.tab_t_ = std::move(t);
    d.tab_v_ = std::move(v);
    return d;
}

DiscountFunction DiscountFunction::tabulated(std::vector<double> t, std::vector<double> v) {
    DiscountFunction d = tabulated_unchecked(std::move(t), std::move(v));
    const auto& tt = d.tab_t_;
    const auto& vv = d.tab_v_;
    for (std::size_t i = 1; i < tt.size(); ++i)
        if (vv[i] > vv[i - 1] + 1e-9)
            throw std::invalid_argument("DiscountFunction: tabulated values increase at t=" +
                                        std::to_string(tt[i]));
    for (std::size_t i = 1; i + 1 < tt.size(); ++i) {
        double s0 = (vv[i] - vv[i - 1]) / (tt[i] - tt[i - 1]);
        double s1 = (vv[i + 1] - vv[i]) / (tt[i + 1] - tt[i]);
        if (s1 < s0 - 1e-9)
            throw std::invalid_argument("DiscountFunction: tabulated values not convex at t=" +
                                        std::to_string(tt[i]));
    }
    return d;
}

double DiscountFunction::value(double t) const {
    if (t < 0.0) throw std::invalid_argument("DiscountFunction: negative time");
    switch (kind_) {
        case Kind::exponential:
            return std::exp(-param_ * t);
        case Kind::hyperbolic:
            return 1.0 / (1.0 + param_ * t);
        case Kind::truncated_linear:
            return std::max(0.0, (param_ - t) / param_);
        case Kind::constant:
            return 1.0;
        case Kind::tabulated: {
            if (t <= tab_t_.front()) return tab_v_.front();
            if (t >= tab_t_.back()) return tab_v_.back();
            auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
            std::size_t j = static_cast<std::size_t>(it - tab_t_.begin());
            double w = (t - tab_t_[j - 1]) / (tab_t_[j] - tab_t_[j - 1]);
            return (1.0 - w) * tab_v_[j - 1] + w * tab_v_[j];
        }
    }
    throw std::logic_error("DiscountFunction: unknown kind");
}

double DiscountFunction::derivative(double t, double h) const {
    if (t < 0.0) throw std::invalid_argument("DiscountFunction: negative time");
    switch (kind_) {
        case Kind::exponential:
            return -param_ * std::exp(-param_ * t);
        case Kind::hyperbolic: {
            double u = 1.0 + param_ * t;
            return -param_ / (u * u);
        }
        case Kind::truncated_linear:
            return t < param_ ? -1.0 / param_ : 0.0;
        case Kind::constant:
            return 0.0;
        case Kind::tabulated: {
            double lo = std::max(t - h, 0.0);
            return (value(t + h) - value(lo)) / (t + h - lo);
        }
    }
    throw std::logic_error("DiscountFunction: unknown kind");
}

double DiscountFunction::tail_sum(int from, int horizon) const {
    double s = 0.0;
    for (int t = from; t <= horizon; ++t) {
        double v = value(static_cast<double>(t));
        s += v;
        if (kind_ == Kind::exponential && v < 1e-18) break;
        if (kind_ == Kind::truncated_linear && v == 0.0) break;
    }
    return s;
}

bool DiscountFunction::convex_decreasing_on_grid(double horizon, int n, double slack) const {
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = value(horizon * i / n);
    for (int i = 1; i <= n; ++i)
        if (v[i] > v[i - 1] + slack) return false;
    for (int i = 1; i < n; ++i)
        if (v[i + 1] + v[i - 1] - 2.0 * v[i] < -slack) return false;
    return true;
}

Decomposition decompose_truncated_linear(const DiscountFunction& rho, int T, double epsilon,
                                         int report_horizon) {
    if (T < 2 || T % 2 != 0)
        throw std::invalid_argument("decompose_truncated_linear: T must be a positive even integer");
    std::vector<double> residual(T + 1);
    for (int t = 0; t <= T; ++t) residual[t] = rho.value(static_cast<double>(t));

    Decomposition out;
    out.tail_mass = rho.tail_sum(T, report_horizon);
    out.tail_below_epsilon = out.tail_mass < epsilon;

    for (int anchor = T; anchor >= 2; anchor -= 2) {
        double slope = residual[anchor] - residual[anchor - 1];
        if (slope > 1e-12)
            throw std::invalid_argument(
                "decompose_truncated_linear: residual increases at t=" + std::to_string(anchor) +
                "; discount is not decreasing");
        LinearPiece piece{anchor, residual[anchor], std::min(slope, 0.0)};
        for (int t = 0; t <= T; ++t) {
            residual[t] -= piece.value(static_cast<double>(t));
            if (residual[t] < -1e-9)
                throw std::invalid_argument(
                    "decompose_truncated_linear: residual negative at t=" + std::to_string(t) +
                    "; discount is not convex");
            residual[t] = std::max(residual[t], 0.0);
        }
        // Skip pieces that vanished (the recursion has bottomed out).
        if (piece.value(0.0) > 1e-15) out.pieces.push_back(piece);
    }

    for (int t = 1; t <= T - 1; ++t) {
        double err = std::abs(rho.value(static_cast<double>(t)) - out.sum_at(t));
        out.max_reconstruction_error = std::max(out.max_reconstruction_error, err);
    }
    return out;
}

namespace {

/// E[rho(T)] for T ~ Exp(lambda); exact on the discount's piecewise
/// structure where available, adaptive Simpson otherwise.
double value_against_exponential(const DiscountFunction& rho, double lambda) {
    switch (rho.kind()) {
        case DiscountFunction::Kind::exponential:
            return lambda / (lambda + rho.param());
        case DiscountFunction::Kind::constant:
            return 1.0;
        case DiscountFunction::Kind::truncated_linear: {
            double T = rho.param();
            return quad::linear_times_expdens(1.0, -1.0 / T, lambda, 0.0, T);
        }
        case DiscountFunction::Kind::hyperbolic: {
            double horizon = 40.0 / lambda;
            return quad::simpson_adaptive(
                [&](double t) { return rho.value(t) * lambda * std::exp(-lambda * t); }, 0.0,
                horizon, 1e-12);
        }
        case DiscountFunction::Kind::tabulated: {
            // Piecewise linear in t: closed-form cells on a fine mesh.
            double total = 0.0;
            double prev_t = 0.0;
            double prev_v = rho.value(0.0);
            const int n = 1 << 14;
            double horizon = 40.0 / lambda;
            double h = horizon / n;
            for (int i = 1; i <= n; ++i) {
                double t = i * h;
                double v = rho.value(t);
                double beta = (v - prev_v) / h;
                double alpha = prev_v - beta * prev_t;
                total += quad::linear_times_expdens(alpha, beta, lambda, prev_t, t);
                prev_t = t;
                prev_v = v;
            }
            total += rho.value(horizon) * std::exp(-lambda * horizon);
            return total;
        }
    }
    throw std::logic_error("DiscountFunction: unknown kind");
}

}  // namespace

double expected_discount(const DiscountFunction& rho, const DecisionTimeDistribution& dist) {
    using Kind = DecisionTimeDistribution::Kind;
    switch (dist.kind()) {
        case Kind::deterministic:
            return rho.value(dist.param());
        case Kind::exponential:
            return value_against_exponential(rho, dist.param());
        case Kind::geometric: {
            double p = dist.param();
            double total = 0.0;
            double survive = 1.0;  // (1-p)^{t-1}
            for (int t = 1; t <= 10'000'000; ++t) {
                total += rho.value(static_cast<double>(t)) * survive * p;
                survive *= 1.0 - p;
                if (survive < 1e-16) break;
            }
            return total;
        }
        case Kind::empirical: {
            // Exact Stieltjes sum over the sample atoms; censored paths
            // are valued at the horizon (their discount is at most that)
            // and carry at most the properness tolerance in mass.
            const auto& g = dist.grid();
            const auto& F = dist.grid_cdf();
            double total = 0.0;
            double prev = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                total += rho.value(g[i]) * (F[i] - prev);
                prev = F[i];
            }
            total += rho.value(dist.horizon()) * dist.tail_mass();
            return total;
        }
        case Kind::numeric: {
            const auto& g = dist.grid();
            const auto& F = dist.grid_cdf();
            double tail = 1.0 - F.back();
            if (tail * rho.value(g.back()) > 1e-6)
                throw std::domain_error(
                    "expected_discount: CDF does not reach 1 by the horizon and the discount "
                    "is not negligible there (tail mass " + std::to_string(tail) + ")");
            // Right-point Stieltjes sum on the CDF increments.
            double total = 0.0;
            double prev = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                total += rho.value(g[i]) * (F[i] - prev);
                prev = F[i];
            }
            return total;
        }
    }
    throw std::logic_error("DecisionTimeDistribution: unknown kind");
}

}  // namespace seqinfo
