#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace seqinfo {

/// CDF of a decision (stopping) time on [0, horizon].
///
/// Analytic kinds (deterministic, exponential, geometric) evaluate their
/// CDF, mean and integrated CDF in closed form; numeric kinds interpolate
/// a tabulated grid and empirical kinds are step functions over samples.
/// Geometric distributions live on the integer periods 1,2,... and their
/// CDF is a right-continuous step function.
class DecisionTimeDistribution {
  public:
    enum class Kind { deterministic, exponential, geometric, empirical, numeric };

    static DecisionTimeDistribution deterministic(double t0);
    static DecisionTimeDistribution exponential(double rate, double horizon = -1.0,
                                                std::size_t n_grid = 10000);
    /// Geometric on periods 1,2,... with per-period stop probability p.
    static DecisionTimeDistribution geometric(double p, std::size_t n_periods = 0);
    /// Empirical distribution of decision times; censored_mass is the
    /// fraction of observations that never decided (beyond the horizon).
    static DecisionTimeDistribution empirical(std::vector<double> times,
                                              double censored_mass = 0.0);
    static DecisionTimeDistribution from_grid(std::vector<double> grid,
                                              std::vector<double> cdf);

    Kind kind() const { return kind_; }
    bool is_discrete_kind() const { return kind_ == Kind::deterministic || kind_ == Kind::geometric || kind_ == Kind::empirical; }

    double cdf(double t) const;
    /// Grid on which the distribution is tabulated/refined.
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& grid_cdf() const { return cdf_; }

    double horizon() const { return grid_.empty() ? 0.0 : grid_.back(); }
    /// Mass never reaching a decision by the horizon.
    double tail_mass() const;
    /// Proper within tolerance: terminal CDF >= 1 - 1e-6.
    bool proper(double tol = 1e-6) const;

    /// Distribution parameters for the analytic kinds.
    double param() const { return param_; }
    std::size_t sample_count() const { return n_samples_; }

    /// E[T]. Closed form for analytic kinds, integral of the survival
    /// function otherwise. Throws if the distribution is improper.
    double mean() const;

    /// int_0^s cdf(t) dt. Exact for deterministic/exponential/geometric/
    /// empirical kinds, trapezoid on the grid for numeric ones.
    double integrated_cdf(double s) const;

    /// Standard error of the empirical integrated CDF at s (empirical
    /// kind only; 0 otherwise).
    double integrated_cdf_se(double s) const;
    double mean_se() const;

  private:
    DecisionTimeDistribution(Kind k) : kind_(k) {}
    Kind kind_;
    double param_ = 0.0;          // t0 / rate / p
    std::vector<double> grid_;
    std::vector<double> cdf_;
    std::vector<double> samples_; // empirical only, sorted
    double censored_mass_ = 0.0;
    std::size_t n_samples_ = 0;
};

enum class SosdVerdict {
    d2_mps_of_d1,   // d2 is a mean-preserving spread of d1
    d1_mps_of_d2,
    equal,
    incomparable,
};

struct SosdResult {
    SosdVerdict verdict = SosdVerdict::incomparable;
    double max_gap = 0.0;     // max |integrated-CDF difference|
    double argmax_s = 0.0;    // location of the max gap
    std::string reason;       // set when incomparable
};

std::string to_string(SosdVerdict v);

/// Mean-preserving-spread comparison through integrated CDFs on a shared
/// refinement grid. Means must agree within mean_tol; sign classification
/// uses a +-1e-6 band, widened to 3 standard errors when either input is
/// empirical.
SosdResult sosd_compare(const DecisionTimeDistribution& d1,
                        const DecisionTimeDistribution& d2,
                        double mean_tol = 1e-6);

/// |mean(d) - Ibar/c| <= tol: the strategy wastes no capacity.
bool exhaustiveness_check(const DecisionTimeDistribution& d, double c, double info_total,
                          double tol = 1e-6);

}  // namespace seqinfo
