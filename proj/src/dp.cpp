#include "seqinfo/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqinfo/quadrature.hpp"

namespace seqinfo::dp {

namespace {

constexpr double kFeasSlack = 1e-12;

void check_params(double c, double info_total) {
    if (c <= 0.0) throw std::invalid_argument("dp: capacity c must be positive");
    if (info_total <= 0.0) throw std::invalid_argument("dp: total information must be positive");
}

}  // namespace

double RelaxedPolicy::feasibility_gap(double c, double info_total) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < p.size(); ++t) {
        double It = I[t];
        double In = t + 1 < I.size() ? I[t + 1] : 0.0;
        double lhs = (info_total - It) * p[t] + (In - It) * (1.0 - p[t]);
        worst = std::max(worst, lhs - c);
    }
    return worst;
}

ValueResult closed_form_value(double c, double info_total, double v_star,
                              const std::function<double(double)>& rho, int horizon) {
    check_params(c, info_total);
    ValueResult res;
    if (c >= info_total) {
        // Stopping in the first period is feasible and dominant.
        res.value = rho(1.0) * v_star;
        return res;
    }
    double q = c / info_total;
    double survive = 1.0;  // (1 - q)^{t-1}
    for (int t = 1; t <= horizon; ++t) {
        res.value += rho(static_cast<double>(t)) * survive * q * v_star;
        survive *= 1.0 - q;
        if (survive < 1e-18) {
            survive = 0.0;
            break;
        }
    }
    // rho is decreasing, so the dropped mass is at most rho(H+1) (1-q)^H.
    res.tail_bound = rho(static_cast<double>(horizon + 1)) * survive * v_star;
    return res;
}

ValueResult closed_form_value(double c, double info_total, double v_star,
                              const DiscountFunction& rho, int horizon) {
    return closed_form_value(c, info_total, v_star,
                             [&rho](double t) { return rho.value(t); }, horizon);
}

ValueResult closed_form_value_continuous(double c, double info_total, double v_star,
                                         const DiscountFunction& rho, double horizon) {
    check_params(c, info_total);
    double lam = c / info_total;
    ValueResult res;
    if (rho.kind() == DiscountFunction::Kind::exponential) {
        res.value = lam / (lam + rho.param()) * v_star;
        return res;
    }
    res.value = v_star * quad::simpson_adaptive(
                             [&](double t) { return rho.value(t) * lam * std::exp(-lam * t); },
                             0.0, horizon, 1e-12);
    res.tail_bound = rho.value(horizon) * std::exp(-lam * horizon) * v_star;
    return res;
}

double ValueTable::max_abs_diff(const ValueTable& other) const {
    double worst = 0.0;
    for (std::size_t t = 0; t < value.size(); ++t)
        for (std::size_t i = 0; i < value[t].size(); ++i)
            worst = std::max(worst, std::abs(value[t][i] - other.value[t][i]));
    return worst;
}

bool ValueTable::monotone_in_info(double slack) const {
    for (const auto& row : value)
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i] < row[i - 1] - slack) return false;
    return true;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2 || hi <= lo) throw std::invalid_argument("uniform_grid: bad parameters");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

ValueTable backward_induction(double c, double info_total, double v_star, int T,
                              const std::vector<double>& info_grid, int n_p) {
    check_params(c, info_total);
    if (T < 1) throw std::invalid_argument("backward_induction: T must be >= 1");
    if (info_grid.empty()) throw std::invalid_argument("backward_induction: empty info grid");
    if (!std::is_sorted(info_grid.begin(), info_grid.end()))
        throw std::invalid_argument("backward_induction: info grid not sorted");

    // p-grid: uniform points plus the conjectured optimizers (c+I)/Ibar,
    // so the certificate against the closed form is exact, not snapped.
    std::vector<double> p_grid;
    for (int i = 0; i < n_p; ++i) p_grid.push_back(static_cast<double>(i) / (n_p - 1));
    for (double I : info_grid) p_grid.push_back(std::clamp((c + I) / info_total, 0.0, 1.0));
    p_grid.push_back(1.0);
    std::sort(p_grid.begin(), p_grid.end());
    p_grid.erase(std::unique(p_grid.begin(), p_grid.end()), p_grid.end());

    const std::size_t nI = info_grid.size();
    ValueTable table;
    table.T = T;
    table.info_grid = info_grid;
    table.value.assign(T, std::vector<double>(nI, 0.0));
    table.opt_p.assign(T, std::vector<double>(nI, 0.0));
    table.opt_next_info.assign(T, std::vector<double>(nI, 0.0));

    std::vector<double> next(nI, 0.0);  // V_{t+1}; V_{T+1} = 0
    for (int t = T; t >= 1; --t) {
        double w = static_cast<double>(T - t) / T;
        for (std::size_t i = 0; i < nI; ++i) {
            double I = info_grid[i];
            double best = -std::numeric_limits<double>::infinity();
            double best_p = 0.0, best_next = 0.0;
            for (std::size_t j = 0; j < nI; ++j) {  // next-period bank, ascending
                double In = info_grid[j];
                for (double p : p_grid) {
                    double lhs = (info_total - I) * p + (In - I) * (1.0 - p);
                    if (lhs > c + kFeasSlack) continue;
                    double val = w * p * v_star + (1.0 - p) * next[j];
                    if (val > best) {
                        best = val;
                        best_p = p;
                        best_next = In;
                    }
                }
            }
            table.value[t - 1][i] = best;
            table.opt_p[t - 1][i] = best_p;
            table.opt_next_info[t - 1][i] = best_next;
        }
        next = table.value[t - 1];
    }
    return table;
}

ValueTable closed_form_table(double c, double info_total, double v_star, int T,
                             const std::vector<double>& info_grid) {
    check_params(c, info_total);
    ValueTable table;
    table.T = T;
    table.info_grid = info_grid;
    table.value.assign(T, std::vector<double>(info_grid.size(), 0.0));
    double q = c / info_total;
    for (int t = 1; t <= T; ++t) {
        // S_t = sum_{tau=t+1}^{T} (T-tau)/T q (1-q)^{tau-t-1} V*
        double S = 0.0;
        double geo = 1.0;
        for (int tau = t + 1; tau <= T; ++tau) {
            S += static_cast<double>(T - tau) / T * q * geo * v_star;
            geo *= 1.0 - q;
        }
        double w = static_cast<double>(T - t) / T;
        for (std::size_t i = 0; i < info_grid.size(); ++i) {
            double ratio = (c + info_grid[i]) / info_total;
            table.value[t - 1][i] =
                ratio >= 1.0 ? w * v_star : w * ratio * v_star + (1.0 - ratio) * S;
        }
    }
    return table;
}

OracleResult brute_force_oracle(double c, double info_total, double v_star,
                                const DiscountFunction& rho, int T,
                                const std::vector<double>& p_grid,
                                const std::vector<double>& info_grid, std::uint64_t budget) {
    check_params(c, info_total);
    if (T < 1 || T > 16) throw std::invalid_argument("brute_force_oracle: T out of range");
    if (p_grid.empty() || info_grid.empty())
        throw std::invalid_argument("brute_force_oracle: empty grid");

    // Stopping in a period with rho_t = 0 earns nothing, so enumeration
    // covers the periods with positive weight only; the final period's
    // bank choice is payoff-irrelevant and pinned to 0 (most permissive).
    int T_eff = 0;
    for (int t = 1; t <= T; ++t)
        if (rho.value(static_cast<double>(t)) > 0.0) T_eff = t;
    if (T_eff == 0) throw std::invalid_argument("brute_force_oracle: discount vanishes everywhere");
    std::vector<double> weights(T_eff);
    for (int t = 1; t <= T_eff; ++t) weights[t - 1] = rho.value(static_cast<double>(t));

    double per_period = static_cast<double>(p_grid.size()) * info_grid.size();
    double worst_case = std::pow(per_period, std::max(T_eff - 1, 0)) * p_grid.size();
    if (worst_case > static_cast<double>(budget))
        throw std::invalid_argument("brute_force_oracle: enumeration of ~" +
                                    std::to_string(worst_case) +
                                    " policies exceeds the budget");

    OracleResult res;
    res.horizon = T_eff;
    res.best.p.assign(T_eff, 0.0);
    res.best.I.assign(T_eff, 0.0);
    res.value = -std::numeric_limits<double>::infinity();

    std::vector<double> cur_p(T_eff, 0.0), cur_I(T_eff, 0.0);

    // Iteration order (bank ascending outer, p ascending inner) together
    // with strict improvement implements the lowest-I', lowest-p tie break.
    auto dfs = [&](auto&& self, int t, double I, double survive, double val) -> void {
        if (t == T_eff) {
            // Last weighted period: the most permissive feasible set takes
            // the next bank to zero, p Ibar <= c + I.
            for (double p : p_grid) {
                if (info_total * p > c + I + kFeasSlack) continue;
                ++res.evaluations;
                double total = val + weights[t - 1] * survive * p * v_star;
                if (total > res.value) {
                    res.value = total;
                    cur_p[t - 1] = p;
                    cur_I[t - 1] = I;
                    res.best.p = cur_p;
                    res.best.I = cur_I;
                }
            }
            return;
        }
        cur_I[t - 1] = I;
        for (double In : info_grid) {
            for (double p : p_grid) {
                double lhs = (info_total - I) * p + (In - I) * (1.0 - p);
                if (lhs > c + kFeasSlack) continue;
                cur_p[t - 1] = p;
                self(self, t + 1, In, survive * (1.0 - p),
                     val + weights[t - 1] * survive * p * v_star);
            }
        }
    };
    dfs(dfs, 1, 0.0, 1.0, 0.0);
    return res;
}

DecisionTimeDistribution stationary_policy_distribution(double c, double info_total,
                                                        double horizon, bool continuous) {
    check_params(c, info_total);
    if (c > info_total)
        throw std::invalid_argument("stationary_policy_distribution: requires c <= Ibar");
    double q = c / info_total;
    if (continuous) return DecisionTimeDistribution::exponential(q, horizon);
    std::size_t n = horizon > 0 ? static_cast<std::size_t>(std::ceil(horizon)) : 0;
    return DecisionTimeDistribution::geometric(q, n);
}

double expected_time_lower_bound(double c, double info_total) {
    check_params(c, info_total);
    return info_total / c;
}

DiscretizationReport discretization_certificate(const std::function<double(double)>& rate_path,
                                                double c, double info_total, double v_star,
                                                const DiscountFunction& rho, double horizon,
                                                double dt) {
    check_params(c, info_total);
    if (dt <= 0.0 || horizon <= dt)
        throw std::invalid_argument("discretization_certificate: bad horizon/dt");

    const int K = static_cast<int>(std::floor(horizon / dt + 0.5));
    DiscretizationReport rep;
    rep.dt = dt;
    rep.c_hat = c * dt;

    // Window integrals of the rate path (Simpson per cell) and the banked
    // information ODE I' = c - p (Ibar - I) by RK4 on the same cells.
    std::vector<double> window(K, 0.0);  // int_{k dt}^{(k+1) dt} p
    std::vector<double> info(K + 1, 0.0);
    double p_max = 0.0;
    rep.min_info = 0.0;
    double I = 0.0;
    for (int k = 0; k < K; ++k) {
        double a = k * dt;
        window[k] = quad::simpson(rate_path, a, a + dt, 8);
        for (int s = 0; s < 2; ++s) {
            double h = dt / 2.0;
            double t0 = a + s * h;
            auto f = [&](double t, double y) { return c - rate_path(t) * (info_total - y); };
            double k1 = f(t0, I);
            double k2 = f(t0 + h / 2, I + h / 2 * k1);
            double k3 = f(t0 + h / 2, I + h / 2 * k2);
            double k4 = f(t0 + h, I + h * k3);
            I += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            if (I < rep.min_info) {
                rep.min_info = I;
                if (rep.first_violation_time < 0.0 && I < -1e-9 * std::max(1.0, info_total))
                    rep.first_violation_time = t0 + h;
            }
        }
        info[k + 1] = I;
        p_max = std::max({p_max, rate_path(a), rate_path(a + dt)});
    }
    rep.info_nonnegative = rep.min_info >= -1e-9 * std::max(1.0, info_total);

    // Hatted sequence: p_hat over each window, P from the cumulative
    // integral, I_hat at the window ends.
    std::vector<double> p_hat(K, 0.0), P(K + 1, 0.0);
    double cum = 0.0;
    for (int k = 0; k < K; ++k) {
        p_hat[k] = 1.0 - std::exp(-window[k]);
        cum += window[k];
        P[k + 1] = 1.0 - std::exp(-cum);
    }

    // Discrete feasibility (Ibar - I_k) p_k + (I_{k+1} - I_k)(1 - p_k) <= c_hat,
    // and the survival recursion P_k = P_{k-1} + (1 - P_{k-1}) p_k.
    rep.feasibility_tol = std::max(c, 1.0) * std::max(p_max, 1e-6) * dt * dt + 1e-12;
    for (int k = 0; k < K; ++k) {
        double lhs = (info_total - info[k]) * p_hat[k] + (info[k + 1] - info[k]) * (1.0 - p_hat[k]);
        rep.max_feasibility_violation =
            std::max(rep.max_feasibility_violation, lhs - rep.c_hat);
        double rec = std::abs(P[k + 1] - (P[k] + (1.0 - P[k]) * p_hat[k]));
        rep.max_recursion_error = std::max(rep.max_recursion_error, rec);
    }
    rep.feasibility_ok = rep.max_feasibility_violation <= rep.feasibility_tol;

    // Discretized objective vs the optimal value at the hatted inputs.
    for (int k = 1; k < K; ++k)
        rep.discretized_objective += rho.value(k * dt) * (1.0 - P[k]) * p_hat[k] * v_star;
    rep.closed_form_bound =
        closed_form_value(rep.c_hat, info_total, v_star,
                          [&](double k) { return rho.value(k * dt); }, K)
            .value;
    rep.objective_dominated = rep.discretized_objective <= rep.closed_form_bound + 1e-4;

    rep.pass = rep.feasibility_ok && rep.info_nonnegative &&
               rep.max_recursion_error <= 1e-12 && rep.objective_dominated;
    return rep;
}

ConvexReductionReport convex_reduction_certificate(double c, double info_total, double v_star,
                                                   const DiscountFunction& rho, double epsilon,
                                                   int max_T, int horizon) {
    check_params(c, info_total);
    if (c >= info_total)
        throw std::invalid_argument("convex_reduction_certificate: degenerate case c >= Ibar");
    double q = c / info_total;

    ConvexReductionReport rep;
    // Smallest even T whose weighted tail is below epsilon; the weights
    // (1-q)^{t-1} q are the stationary policy's stopping probabilities.
    auto weighted_tail = [&](int T) {
        double tail = 0.0;
        double survive = std::pow(1.0 - q, T - 1);
        for (int t = T; t <= horizon && survive > 1e-20; ++t) {
            tail += rho.value(static_cast<double>(t)) * survive * q * v_star;
            survive *= 1.0 - q;
        }
        return tail;
    };
    int T = 4;
    while (T < max_T && weighted_tail(T) >= epsilon) T += 2;
    rep.T = T;
    rep.weighted_tail = weighted_tail(T);

    auto dec = decompose_truncated_linear(rho, T, epsilon, horizon);
    rep.max_reconstruction_error = dec.max_reconstruction_error;
    rep.direct = closed_form_value(c, info_total, v_star, rho, horizon).value;
    for (const auto& piece : dec.pieces) {
        rep.piece_sum += closed_form_value(c, info_total, v_star,
                                           [&piece](double t) { return piece.value(t); },
                                           horizon)
                             .value;
    }
    rep.diff = rep.direct - rep.piece_sum;
    rep.pass = rep.diff >= -1e-10 && rep.diff <= 2.0 * epsilon;
    return rep;
}

}  // namespace seqinfo::dp
