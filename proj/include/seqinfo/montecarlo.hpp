#pragma once

#include <cstdint>
#include <vector>

#include "seqinfo/fpt.hpp"
#include "seqinfo/strategies.hpp"

namespace seqinfo::mc {

struct SimConfig {
    std::size_t n_paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    double horizon = 10.0;
    bool bridge_correction = true;  // gaussian: brownian-bridge barrier test
    int n_threads = 0;              // 0 = hardware concurrency

    void validate() const;
};

/// Per-path simulation results. Beliefs are stored flat: snapshot of path
/// i at checkpoint k occupies states [ (k*n_paths + i)*n_states , +n_states ).
struct PathBundle {
    std::size_t n_paths = 0;
    std::size_t n_states = 0;
    std::vector<double> decision_time;   // censored paths hold the horizon
    std::vector<std::uint8_t> decided;
    std::vector<int> terminal_atom;      // index into the target lottery, -1 if censored
    std::vector<double> checkpoints;
    std::vector<double> snapshots;       // flat beliefs, may be empty
    std::vector<double> prior;
    double censored_mass = 0.0;
    std::uint64_t seed = 0;

    const double* snapshot(std::size_t checkpoint, std::size_t path) const {
        return snapshots.data() + (checkpoint * n_paths + path) * n_states;
    }
    /// Empirical distribution of the decided times.
    DecisionTimeDistribution empirical_dist() const;
    double mean_decided() const;
    double mean_decided_se() const;
};

/// Compound-Poisson implementation of the target: a decisive signal
/// arrives at rate c/Ibar and the belief jumps to a posterior drawn from
/// the target lottery, independently of the arrival. A degenerate target
/// (Ibar = 0) needs no learning and is simulated with arrival rate 0.
PathBundle simulate_poisson(const strategies::StrategySpec& spec, const SimConfig& cfg,
                            const std::vector<double>& checkpoints = {});

/// Euler scheme for the zero-drift belief diffusion with absorbing
/// barriers (exact BM increments; the bridge correction accounts for
/// within-step crossings, raw Euler absorption available for comparison).
PathBundle simulate_gaussian(const fpt::FptProblem& problem, const SimConfig& cfg,
                             const std::vector<double>& checkpoints = {});

struct CheckpointStat {
    double t = 0.0;
    double estimate = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

/// |sample mean of mu_t - mu_0| per checkpoint, with standard errors
/// (largest deviation across states).
std::vector<CheckpointStat> martingale_residual(const PathBundle& bundle);

/// Flow uncertainty-reduction estimate between consecutive checkpoints:
/// E[H(mu_t) - H(mu_{t+dt})] / dt among paths undecided at t. Compare
/// against the capacity c.
std::vector<CheckpointStat> capacity_audit(const PathBundle& bundle,
                                           const UncertaintyMeasure& H);

/// One-sample Kolmogorov-Smirnov statistic of sorted samples against a CDF.
double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic critical value K_alpha / sqrt(n) (alpha in {0.01, 0.05, 0.1}).
double ks_critical(double alpha, std::size_t n);

}  // namespace seqinfo::mc
