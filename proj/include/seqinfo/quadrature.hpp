#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace seqinfo::quad {

/// Composite Simpson with n intervals (n made even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Composite Simpson refined by doubling until successive values agree
/// within tol (absolute + relative).
inline double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int n0 = 64, int n_max = 1 << 20) {
    double prev = simpson(f, a, b, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        double cur = simpson(f, a, b, n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

/// Exact int_a^b (alpha + beta t) lambda e^{-lambda t} dt.
inline double linear_times_expdens(double alpha, double beta, double lambda, double a, double b) {
    double ea = std::exp(-lambda * a), eb = std::exp(-lambda * b);
    return alpha * (ea - eb) + beta * (a * ea - b * eb + (ea - eb) / lambda);
}

}  // namespace seqinfo::quad
