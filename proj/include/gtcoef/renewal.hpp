#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gtcoef/distribution.hpp"
#include "gtcoef/gt.hpp"

namespace gtcoef {

/// Renewal function m(t) = E[N(t)] of a renewal process with the given
/// underlying distribution, solved from the renewal integral equation
///   m(t) = F(t) + int_0^t m(t - x) dF(x)
/// on a uniform grid of `steps` intervals over [0, T]. The convolution is
/// discretized against the increments of F (never the density, which diverges
/// at 0 for shape < 1), with m averaged trapezoid-fashion across each
/// increment cell; the resulting lower-triangular system is solved by forward
/// substitution. Global error is O(step^2) for smooth F.
inline SampledCurve solve_renewal_equation(const DistributionSpec& dist, double T,
                                           std::size_t steps) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::domain_error("solve_renewal_equation: horizon must be positive");
    }
    if (steps < 16) {
        throw std::domain_error("solve_renewal_equation: need at least 16 steps");
    }
    const std::size_t n = steps;
    std::vector<double> grid(n + 1);
    std::vector<double> F(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid[i] = T * static_cast<double>(i) / static_cast<double>(n);
        F[i] = cdf(dist, grid[i]);
    }
    grid[n] = T;

    std::vector<double> dF(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) dF[i] = F[i] - F[i - 1];

    std::vector<double> m(n + 1, 0.0);
    const double denom = 1.0 - 0.5 * dF[1];
    for (std::size_t j = 1; j <= n; ++j) {
        double conv = 0.5 * dF[1] * m[j - 1];
        for (std::size_t i = 2; i <= j; ++i) {
            conv += dF[i] * 0.5 * (m[j - i] + m[j - i + 1]);
        }
        m[j] = (F[j] + conv) / denom;
    }
    return SampledCurve(std::move(grid), std::move(m));
}

/// Solve the renewal equation with step halving until two successive grids
/// agree on the terminal value to `terminal_tol`, starting from
/// `initial_steps`. Throws if `max_steps` is reached without convergence.
inline SampledCurve solve_renewal_equation_converged(const DistributionSpec& dist, double T,
                                                     std::size_t initial_steps = 512,
                                                     double terminal_tol = 1e-5,
                                                     std::size_t max_steps = 32768) {
    SampledCurve current = solve_renewal_equation(dist, T, initial_steps);
    for (std::size_t n = initial_steps * 2; n <= max_steps; n *= 2) {
        SampledCurve refined = solve_renewal_equation(dist, T, n);
        if (std::abs(refined.terminal() - current.terminal()) < terminal_tol) {
            return refined;
        }
        current = std::move(refined);
    }
    throw std::runtime_error("solve_renewal_equation_converged: terminal value did not settle");
}

}  // namespace gtcoef
