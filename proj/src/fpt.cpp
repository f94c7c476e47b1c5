#include "seqinfo/fpt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seqinfo::fpt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTermTol = 1e-12;
constexpr int kMinTerms = 5;

/// Decay rate of mode k on an interval of width L.
inline double mode_rate(double sigma2, double L, int k) {
    return sigma2 * k * k * kPi * kPi / (2.0 * L * L);
}

}  // namespace

void FptProblem::validate() const {
    if (!(lo < start && start < hi))
        throw std::invalid_argument("FptProblem: start must lie strictly between the barriers");
    if (sigma2 <= 0.0) throw std::invalid_argument("FptProblem: sigma2 must be positive");
    if (horizon <= 0.0 || grid_dt <= 0.0 || grid_dt > horizon)
        throw std::invalid_argument("FptProblem: bad horizon/grid step");
}

double series_survival(const FptProblem& problem, double t) {
    if (t < 0.0) throw std::invalid_argument("series_survival: negative time");
    if (t == 0.0) return 1.0;
    const double L = problem.width();
    const double y0 = problem.start - problem.lo;
    // Reflection bound: absorption within t is beyond working precision
    // while the barriers are many standard deviations away.
    double d = std::min(y0, L - y0);
    if (d * d / (2.0 * problem.sigma2 * t) > 60.0) return 1.0;

    double s = 0.0;
    int included = 0;
    for (int k = 1; k < 2'000'000; k += 2) {
        double bound = 4.0 / (k * kPi) * std::exp(-mode_rate(problem.sigma2, L, k) * t);
        if (bound < kTermTol && included >= kMinTerms) break;
        s += 4.0 / (k * kPi) * std::sin(k * kPi * y0 / L) *
             std::exp(-mode_rate(problem.sigma2, L, k) * t);
        ++included;
    }
    return std::clamp(s, 0.0, 1.0);
}

FptResult fpt_series(const FptProblem& problem) {
    problem.validate();
    FptResult res{DecisionTimeDistribution::deterministic(0.0), false, 0.0};
    std::size_t n = static_cast<std::size_t>(std::round(problem.horizon / problem.grid_dt));
    std::vector<double> grid(n + 1), cdf(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid[i] = problem.grid_dt * static_cast<double>(i);
        cdf[i] = 1.0 - series_survival(problem, grid[i]);
    }
    res.tail_mass = 1.0 - cdf.back();
    res.horizon_warning = res.tail_mass > 1e-6;
    res.dist = DecisionTimeDistribution::from_grid(std::move(grid), std::move(cdf));
    return res;
}

void series_barrier_masses(const FptProblem& problem, double t, double& mass_lo,
                           double& mass_hi) {
    if (t < 0.0) throw std::invalid_argument("series_barrier_masses: negative time");
    const double L = problem.width();
    const double y0 = problem.start - problem.lo;
    double p_hi = problem.hit_hi_analytic();
    if (t == 0.0) {
        mass_lo = mass_hi = 0.0;
        return;
    }
    double d = std::min(y0, L - y0);
    if (d * d / (2.0 * problem.sigma2 * t) > 60.0) {
        mass_lo = mass_hi = 0.0;
        return;
    }
    // M_lo(t) = (1 - y0/L) - sum_k (2/(k pi)) sin(k pi y0/L) e^{-rate_k t};
    // the subtracted series decays like the survival modes, so truncation
    // is rigorous even though the hitting-probability series itself is
    // only conditionally convergent.
    double corr_lo = 0.0, corr_hi = 0.0;
    int included = 0;
    for (int k = 1; k < 2'000'000; ++k) {
        double decay = std::exp(-mode_rate(problem.sigma2, L, k) * t);
        double bound = 2.0 / (k * kPi) * decay;
        if (bound < kTermTol && included >= kMinTerms) break;
        double term = 2.0 / (k * kPi) * std::sin(k * kPi * y0 / L) * decay;
        corr_lo += term;
        corr_hi += (k % 2 ? -term : term);  // (-1)^{k+1} flips against corr_lo
        ++included;
    }
    mass_lo = std::clamp((1.0 - p_hi) - corr_lo, 0.0, 1.0);
    mass_hi = std::clamp(p_hi + corr_hi, 0.0, 1.0);
}

PdeResult fpt_pde(const FptProblem& problem, int nx, double max_dt_step) {
    problem.validate();
    if (nx < 201) throw std::invalid_argument("fpt_pde: need at least 201 space points");
    if (max_dt_step <= 0.0) throw std::invalid_argument("fpt_pde: bad time step");
    const double L = problem.width();
    const double dx = L / (nx - 1);
    // Implicit steps are unconditionally stable; sub-step the output grid
    // for first-order time accuracy well under the cross-method tolerance.
    const int substeps = std::max(1, static_cast<int>(std::ceil(problem.grid_dt / max_dt_step)));
    const double dt = problem.grid_dt / substeps;
    const std::size_t n_out = static_cast<std::size_t>(std::round(problem.horizon / problem.grid_dt));
    if (static_cast<double>(n_out) * substeps * nx > 5e9)
        throw std::invalid_argument("fpt_pde: grid too large for the configured budget");

    // Interior nodes 1..nx-2; barrier rows pinned to zero.
    std::vector<double> u(nx, 0.0);
    double pos = (problem.start - problem.lo) / dx;
    int j = std::min(static_cast<int>(pos), nx - 2);
    double theta = pos - j;
    double absorbed_lo = 0.0, absorbed_hi = 0.0;
    if (j == 0)
        absorbed_lo += (1.0 - theta) / dx * dx;  // start within one cell of the barrier
    else
        u[j] = (1.0 - theta) / dx;
    if (j + 1 == nx - 1)
        absorbed_hi += theta / dx * dx;
    else
        u[j + 1] = theta / dx;

    const double r = problem.sigma2 * dt / (2.0 * dx * dx);
    const int m = nx - 2;  // unknowns
    // Thomas factorization of the constant tridiagonal (1+2r, -r).
    std::vector<double> cp(m, 0.0);
    {
        double beta = 1.0 + 2.0 * r;
        cp[0] = -r / beta;
        for (int i = 1; i < m; ++i) cp[i] = -r / (1.0 + 2.0 * r + r * cp[i - 1]);
    }
    std::vector<double> dwork(m, 0.0);

    PdeResult res{DecisionTimeDistribution::deterministic(0.0), {}, {}, 0.0, 0.0, 0.0};
    std::vector<double> grid(n_out + 1), cdf(n_out + 1);
    res.absorbed_lo.resize(n_out + 1);
    res.absorbed_hi.resize(n_out + 1);
    grid[0] = 0.0;
    cdf[0] = absorbed_lo + absorbed_hi;
    res.absorbed_lo[0] = absorbed_lo;
    res.absorbed_hi[0] = absorbed_hi;

    const double flux_scale = problem.sigma2 / (2.0 * dx) * dt;
    for (std::size_t step = 1; step <= n_out; ++step) {
        for (int sub = 0; sub < substeps; ++sub) {
            // Solve (I - r Lap) u_new = u.
            double beta = 1.0 + 2.0 * r;
            dwork[0] = u[1] / beta;
            for (int i = 1; i < m; ++i)
                dwork[i] = (u[i + 1] + r * dwork[i - 1]) / (1.0 + 2.0 * r + r * cp[i - 1]);
            u[m] = dwork[m - 1];
            for (int i = m - 1; i >= 1; --i) u[i] = dwork[i - 1] - cp[i - 1] * u[i + 1];
            absorbed_lo += flux_scale * u[1];
            absorbed_hi += flux_scale * u[m];
        }
        grid[step] = problem.grid_dt * static_cast<double>(step);
        cdf[step] = absorbed_lo + absorbed_hi;
        res.absorbed_lo[step] = absorbed_lo;
        res.absorbed_hi[step] = absorbed_hi;
        double interior = 0.0;
        for (int i = 1; i <= m; ++i) interior += u[i];
        interior *= dx;
        res.max_conservation_error =
            std::max(res.max_conservation_error, std::abs(interior + cdf[step] - 1.0));
    }
    res.final_absorbed_lo = absorbed_lo;
    res.final_absorbed_hi = absorbed_hi;
    res.dist = DecisionTimeDistribution::from_grid(std::move(grid), std::move(cdf));
    return res;
}

double CrossSection::interior_mass() const {
    double total = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        total += 0.5 * (density[i] + density[i - 1]) * (x[i] - x[i - 1]);
    return total;
}

CrossSection cross_section(const FptProblem& problem, double t, int nx) {
    problem.validate();
    if (t < 0.0) throw std::invalid_argument("cross_section: negative time");
    const double L = problem.width();
    const double y0 = problem.start - problem.lo;

    CrossSection cs;
    cs.t = t;
    cs.x.resize(nx);
    cs.density.assign(nx, 0.0);
    for (int i = 0; i < nx; ++i) cs.x[i] = problem.lo + L * i / (nx - 1);

    if (t == 0.0) {
        // Unit point mass at the start, represented as a discrete delta.
        double dx = L / (nx - 1);
        int j = std::clamp(static_cast<int>(std::round(y0 / dx)), 1, nx - 2);
        cs.density[j] = 1.0 / dx;
        return cs;
    }

    series_barrier_masses(problem, t, cs.mass_lo, cs.mass_hi);
    // Interior density: u(y,t) = (2/L) sum_k sin(k pi y0/L) sin(k pi y/L) e^{-rate_k t}.
    int k_max = kMinTerms;
    for (int k = 1; k < 2'000'000; ++k) {
        double bound = 2.0 / L * std::exp(-mode_rate(problem.sigma2, L, k) * t);
        if (bound < kTermTol && k >= kMinTerms) {
            k_max = k;
            break;
        }
    }
    for (int i = 1; i + 1 < nx; ++i) {
        double y = cs.x[i] - problem.lo;
        double u = 0.0;
        for (int k = 1; k <= k_max; ++k)
            u += std::sin(k * kPi * y0 / L) * std::sin(k * kPi * y / L) *
                 std::exp(-mode_rate(problem.sigma2, L, k) * t);
        cs.density[i] = std::max(0.0, 2.0 / L * u);
    }
    return cs;
}

}  // namespace seqinfo::fpt
