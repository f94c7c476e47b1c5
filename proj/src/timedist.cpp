#include "seqinfo/timedist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace seqinfo {

namespace {

constexpr double kProperTol = 1e-6;

}  // namespace

DecisionTimeDistribution DecisionTimeDistribution::deterministic(double t0) {
    if (t0 < 0.0) throw std::invalid_argument("deterministic: negative time");
    DecisionTimeDistribution d(Kind::deterministic);
    d.param_ = t0;
    if (t0 == 0.0) {
        d.grid_ = {0.0};
        d.cdf_ = {1.0};
    } else {
        d.grid_ = {0.0, t0};
        d.cdf_ = {0.0, 1.0};
    }
    return d;
}

DecisionTimeDistribution DecisionTimeDistribution::exponential(double rate, double horizon,
                                                               std::size_t n_grid) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
    if (horizon <= 0.0) horizon = 30.0 / rate;
    DecisionTimeDistribution d(Kind::exponential);
    d.param_ = rate;
    d.grid_.resize(n_grid + 1);
    d.cdf_.resize(n_grid + 1);
    for (std::size_t i = 0; i <= n_grid; ++i) {
        double t = horizon * static_cast<double>(i) / static_cast<double>(n_grid);
        d.grid_[i] = t;
        d.cdf_[i] = 1.0 - std::exp(-rate * t);
    }
    return d;
}

DecisionTimeDistribution DecisionTimeDistribution::geometric(double p, std::size_t n_periods) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric: p must be in (0,1]");
    if (n_periods == 0) {
        n_periods = p >= 1.0 ? 1
                             : static_cast<std::size_t>(
                                   std::ceil(std::log(1e-12) / std::log1p(-p)));
        n_periods = std::max<std::size_t>(n_periods, 1);
    }
    DecisionTimeDistribution d(Kind::geometric);
    d.param_ = p;
    d.grid_.resize(n_periods + 1);
    d.cdf_.resize(n_periods + 1);
    for (std::size_t t = 0; t <= n_periods; ++t) {
        d.grid_[t] = static_cast<double>(t);
        d.cdf_[t] = 1.0 - std::pow(1.0 - p, static_cast<double>(t));
    }
    return d;
}

DecisionTimeDistribution DecisionTimeDistribution::empirical(std::vector<double> times,
                                                             double censored_mass) {
    if (times.empty()) throw std::invalid_argument("empirical: no samples");
    if (censored_mass < 0.0 || censored_mass >= 1.0)
        throw std::invalid_argument("empirical: censored mass outside [0,1)");
    std::sort(times.begin(), times.end());
    if (times.front() < 0.0) throw std::invalid_argument("empirical: negative time");
    DecisionTimeDistribution d(Kind::empirical);
    d.samples_ = std::move(times);
    d.censored_mass_ = censored_mass;
    d.n_samples_ = d.samples_.size();
    d.grid_ = {0.0};
    d.grid_.insert(d.grid_.end(), d.samples_.begin(), d.samples_.end());
    d.grid_.erase(std::unique(d.grid_.begin(), d.grid_.end()), d.grid_.end());
    d.cdf_.reserve(d.grid_.size());
    for (double t : d.grid_) d.cdf_.push_back(d.cdf(t));
    return d;
}

DecisionTimeDistribution DecisionTimeDistribution::from_grid(std::vector<double> grid,
                                                             std::vector<double> cdf) {
    if (grid.size() != cdf.size() || grid.size() < 2)
        throw std::invalid_argument("from_grid: need matching grid/cdf with >= 2 points");
    if (grid.front() < 0.0) throw std::invalid_argument("from_grid: negative time");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) throw std::invalid_argument("from_grid: grid not increasing");
        if (cdf[i] < cdf[i - 1] - 1e-12)
            throw std::invalid_argument("from_grid: cdf decreasing at index " + std::to_string(i));
    }
    DecisionTimeDistribution d(Kind::numeric);
    d.grid_ = std::move(grid);
    d.cdf_ = std::move(cdf);
    for (double& v : d.cdf_) v = std::clamp(v, 0.0, 1.0);
    for (std::size_t i = 1; i < d.cdf_.size(); ++i) d.cdf_[i] = std::max(d.cdf_[i], d.cdf_[i - 1]);
    return d;
}

double DecisionTimeDistribution::cdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (kind_) {
        case Kind::deterministic:
            return t >= param_ ? 1.0 : 0.0;
        case Kind::exponential:
            return 1.0 - std::exp(-param_ * t);
        case Kind::geometric: {
            double k = std::floor(t);
            if (k < 1.0) return 0.0;
            return 1.0 - std::pow(1.0 - param_, k);
        }
        case Kind::empirical: {
            auto it = std::upper_bound(samples_.begin(), samples_.end(), t);
            double frac = static_cast<double>(it - samples_.begin()) /
                          static_cast<double>(samples_.size());
            return (1.0 - censored_mass_) * frac;
        }
        case Kind::numeric: {
            if (grid_.empty()) return 0.0;
            if (t <= grid_.front()) return t == grid_.front() ? cdf_.front() : 0.0;
            if (t >= grid_.back()) return cdf_.back();
            auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            std::size_t j = static_cast<std::size_t>(it - grid_.begin());
            double w = (t - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
            return (1.0 - w) * cdf_[j - 1] + w * cdf_[j];
        }
    }
    throw std::logic_error("DecisionTimeDistribution: unknown kind");
}

double DecisionTimeDistribution::tail_mass() const {
    switch (kind_) {
        // The analytic kinds tabulate a grid for refinement and output
        // only; the law itself carries no truncated mass.
        case Kind::deterministic:
        case Kind::exponential:
        case Kind::geometric:
            return 0.0;
        case Kind::empirical:
            return censored_mass_;
        case Kind::numeric:
            return 1.0 - cdf_.back();
    }
    throw std::logic_error("DecisionTimeDistribution: unknown kind");
}

bool DecisionTimeDistribution::proper(double tol) const { return tail_mass() <= tol; }

double DecisionTimeDistribution::mean() const {
    if (!proper(kProperTol))
        throw std::domain_error("mean: improper distribution, tail mass " +
                                std::to_string(tail_mass()));
    switch (kind_) {
        case Kind::deterministic:
            return param_;
        case Kind::exponential:
            return 1.0 / param_;
        case Kind::geometric:
            return 1.0 / param_;
        case Kind::empirical: {
            double avg = std::accumulate(samples_.begin(), samples_.end(), 0.0) /
                         static_cast<double>(samples_.size());
            return (1.0 - censored_mass_) * avg + censored_mass_ * horizon();
        }
        case Kind::numeric: {
            double m = 0.0;
            for (std::size_t i = 1; i < grid_.size(); ++i) {
                double s0 = 1.0 - cdf_[i - 1], s1 = 1.0 - cdf_[i];
                m += 0.5 * (s0 + s1) * (grid_[i] - grid_[i - 1]);
            }
            m += grid_.front();  // survival is 1 on [0, grid start)
            return m;
        }
    }
    throw std::logic_error("DecisionTimeDistribution: unknown kind");
}

double DecisionTimeDistribution::mean_se() const {
    if (kind_ != Kind::empirical || samples_.size() < 2) return 0.0;
    double avg = std::accumulate(samples_.begin(), samples_.end(), 0.0) /
                 static_cast<double>(samples_.size());
    double ss = 0.0;
    for (double x : samples_) ss += (x - avg) * (x - avg);
    double var = ss / static_cast<double>(samples_.size() - 1);
    return std::sqrt(var / static_cast<double>(samples_.size()));
}

double DecisionTimeDistribution::integrated_cdf(double s) const {
    if (s <= 0.0) return 0.0;
    switch (kind_) {
        case Kind::deterministic:
            return std::max(0.0, s - param_);
        case Kind::exponential:
            return s - (1.0 - std::exp(-param_ * s)) / param_;
        case Kind::geometric: {
            // Step function, constant on [k, k+1).
            double total = 0.0;
            double q = 1.0 - param_;
            double K = std::floor(s);
            double qk = q;
            for (double k = 1.0; k <= K; k += 1.0) {
                double len = std::min(s, k + 1.0) - k;
                total += (1.0 - qk) * len;
                qk *= q;
                if (qk < 1e-16 && k + 1.0 < K) {
                    // Remaining cdf is 1 to working precision.
                    total += s - (k + 1.0);
                    break;
                }
            }
            return total;
        }
        case Kind::empirical: {
            double total = 0.0;
            for (double x : samples_) {
                if (x >= s) break;
                total += s - x;
            }
            return total * (1.0 - censored_mass_) / static_cast<double>(samples_.size());
        }
        case Kind::numeric: {
            double total = 0.0;
            double prev_t = 0.0, prev_f = 0.0;
            if (!grid_.empty() && grid_.front() == 0.0) prev_f = cdf_.front();
            for (std::size_t i = (grid_.front() == 0.0 ? 1u : 0u); i < grid_.size(); ++i) {
                double t = grid_[i], f = cdf_[i];
                if (t >= s) {
                    double fs = cdf(s);
                    total += 0.5 * (prev_f + fs) * (s - prev_t);
                    return total;
                }
                total += 0.5 * (prev_f + f) * (t - prev_t);
                prev_t = t;
                prev_f = f;
            }
            // Past the grid the cdf is flat at its terminal value.
            total += cdf_.back() * (s - prev_t);
            return total;
        }
    }
    throw std::logic_error("DecisionTimeDistribution: unknown kind");
}

double DecisionTimeDistribution::integrated_cdf_se(double s) const {
    if (kind_ != Kind::empirical || samples_.size() < 2) return 0.0;
    // SE of (1/n) sum (s - x_i)^+ over the decided samples.
    double n = static_cast<double>(samples_.size());
    double mean = 0.0;
    for (double x : samples_) mean += std::max(0.0, s - x);
    mean /= n;
    double ss = 0.0;
    for (double x : samples_) {
        double v = std::max(0.0, s - x) - mean;
        ss += v * v;
    }
    return (1.0 - censored_mass_) * std::sqrt(ss / (n - 1.0) / n);
}

std::string to_string(SosdVerdict v) {
    switch (v) {
        case SosdVerdict::d2_mps_of_d1: return "d2_mps_of_d1";
        case SosdVerdict::d1_mps_of_d2: return "d1_mps_of_d2";
        case SosdVerdict::equal: return "equal";
        case SosdVerdict::incomparable: return "incomparable";
    }
    return "?";
}

SosdResult sosd_compare(const DecisionTimeDistribution& d1, const DecisionTimeDistribution& d2,
                        double mean_tol) {
    SosdResult res;
    if (!d1.proper() || !d2.proper()) {
        res.reason = "improper distribution (tail mass above tolerance)";
        return res;
    }
    bool statistical = d1.kind() == DecisionTimeDistribution::Kind::empirical ||
                       d2.kind() == DecisionTimeDistribution::Kind::empirical;
    double m1 = d1.mean(), m2 = d2.mean();
    double mean_band = statistical ? std::max(mean_tol, 3.0 * (d1.mean_se() + d2.mean_se()))
                                   : mean_tol;
    if (std::abs(m1 - m2) > mean_band) {
        res.reason = "means differ: " + std::to_string(m1) + " vs " + std::to_string(m2);
        return res;
    }

    // Shared refinement: union of both grids, 10x oversampled.
    std::vector<double> knots;
    knots.reserve(d1.grid().size() + d2.grid().size());
    double H = std::max(d1.horizon(), d2.horizon());
    for (double t : d1.grid()) knots.push_back(t);
    for (double t : d2.grid()) knots.push_back(t);
    knots.push_back(0.0);
    knots.push_back(H);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    bool ge = true, le = true;  // delta >= -band / delta <= band everywhere
    auto consider = [&](double s) {
        double delta = d2.integrated_cdf(s) - d1.integrated_cdf(s);
        double band = 1e-6;
        if (statistical)
            band += 3.0 * (d1.integrated_cdf_se(s) + d2.integrated_cdf_se(s));
        if (std::abs(delta) > std::abs(res.max_gap)) {
            res.max_gap = delta;
            res.argmax_s = s;
        }
        if (delta < -band) ge = false;
        if (delta > band) le = false;
    };
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        consider(knots[i]);
        for (int k = 1; k < 10; ++k)
            consider(knots[i] + (knots[i + 1] - knots[i]) * k / 10.0);
    }
    consider(knots.back());

    res.max_gap = std::abs(res.max_gap);
    if (ge && le) res.verdict = SosdVerdict::equal;
    else if (ge) res.verdict = SosdVerdict::d2_mps_of_d1;
    else if (le) res.verdict = SosdVerdict::d1_mps_of_d2;
    else {
        res.verdict = SosdVerdict::incomparable;
        res.reason = "integrated-CDF difference changes sign";
    }
    return res;
}

bool exhaustiveness_check(const DecisionTimeDistribution& d, double c, double info_total,
                          double tol) {
    if (c <= 0.0) throw std::invalid_argument("exhaustiveness_check: c must be positive");
    return std::abs(d.mean() - info_total / c) <= tol;
}

}  // namespace seqinfo
