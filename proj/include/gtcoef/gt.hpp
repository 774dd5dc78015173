#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gtcoef/distribution.hpp"
#include "gtcoef/errors.hpp"
#include "gtcoef/quadrature.hpp"

namespace gtcoef {

enum class Classification { aging, rejuvenating, constant };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::aging: return "aging";
        case Classification::rejuvenating: return "rejuvenating";
        case Classification::constant: return "constant";
    }
    return "constant";
}

/// GT coefficient together with the horizon it was evaluated over. The
/// coefficient lies in (-1, 1): positive means the cumulative hazard (or CIF)
/// bends above the constant-rate chord (aging), negative means below
/// (rejuvenating). std_error is present only for Monte-Carlo results.
struct GtResult {
    double value = 0.0;
    double horizon = 0.0;
    Classification classification = Classification::constant;
    std::optional<double> std_error;
};

/// constant iff |c| <= tol, otherwise the sign decides.
inline Classification classify(double c, double tol) {
    if (!(tol >= 0.0)) {
        throw std::domain_error("classify: tolerance must be nonnegative");
    }
    if (std::abs(c) <= tol) return Classification::constant;
    return c > 0.0 ? Classification::aging : Classification::rejuvenating;
}

inline constexpr double default_classification_tol = 0.01;

/// A nondecreasing function sampled on a strictly increasing grid starting at
/// t0 = 0 with value 0. Holds cumulative-hazard or cumulative-intensity
/// samples interchangeably.
class SampledCurve {
  public:
    SampledCurve(std::vector<double> grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (grid_.size() != values_.size() || grid_.size() < 3) {
            throw std::invalid_argument("SampledCurve: need matching grid/values of length >= 3");
        }
        if (grid_.front() != 0.0) {
            throw std::invalid_argument("SampledCurve: grid must start at 0");
        }
        if (values_.front() != 0.0) {
            throw std::invalid_argument("SampledCurve: value at t = 0 must be 0");
        }
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            if (!(grid_[i] > grid_[i - 1])) {
                throw std::invalid_argument("SampledCurve: grid must be strictly increasing");
            }
            if (values_[i] < values_[i - 1]) {
                throw std::invalid_argument("SampledCurve: values must be nondecreasing");
            }
        }
    }

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double horizon() const noexcept { return grid_.back(); }
    double terminal() const noexcept { return values_.back(); }

    /// Piecewise-linear interpolation; clamps outside [0, T].
    double value_at(double t) const {
        if (t <= grid_.front()) return values_.front();
        if (t >= grid_.back()) return values_.back();
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
        const double t0 = grid_[i - 1], t1 = grid_[i];
        const double w = (t - t0) / (t1 - t0);
        return values_[i - 1] + w * (values_[i] - values_[i - 1]);
    }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Trapezoidal integral of the curve over [0, T]; exact for piecewise-linear
/// inputs.
inline double trapezoid_integral(const SampledCurve& curve) {
    const auto& t = curve.grid();
    const auto& v = curve.values();
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        acc += 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
    }
    return acc;
}

/// GT coefficient of a sampled nondecreasing curve:
/// C = 1 - 2 * int_0^T curve / (T * curve(T)).
inline GtResult gt_from_sampled_curve(const SampledCurve& curve,
                                      double class_tol = default_classification_tol) {
    const double terminal = curve.terminal();
    if (!(terminal > 0.0)) {
        throw degenerate_error("gt_from_sampled_curve: terminal value is zero");
    }
    const double T = curve.horizon();
    const double c = 1.0 - 2.0 * trapezoid_integral(curve) / (T * terminal);
    return GtResult{c, T, classify(c, class_tol), std::nullopt};
}

/// Closed-form GT coefficient of the Weibull family, C = 1 - 2/(beta + 1).
/// Independent of the scale parameter and of the horizon. The same expression
/// gives the GT coefficient of the power-law NHPP with shape beta.
inline double gt_weibull_closed_form(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("gt_weibull_closed_form: shape must be positive");
    }
    return 1.0 - 2.0 / (beta + 1.0);
}

namespace detail {

inline void check_gt_horizon_args(double T, double quad_tol) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::domain_error("gt_nonrepairable: horizon must be positive");
    }
    if (!(quad_tol > 0.0)) {
        throw std::domain_error("gt_nonrepairable: quadrature tolerance must be positive");
    }
}

}  // namespace detail

inline constexpr double default_quad_tol = 1e-9;

/// Generic quadrature path: C(T) = 1 - 2 * int_0^T H(t) dt / (T * H(T)) with
/// the integral evaluated by adaptive Simpson to absolute tolerance
/// quad_tol * T * H(T). Works for every family; gt_nonrepairable routes the
/// Weibull family around it, so this entry point doubles as the test hook for
/// checking the quadrature against the closed form.
inline GtResult gt_nonrepairable_quadrature(const DistributionSpec& dist, double T,
                                            double quad_tol = default_quad_tol,
                                            double class_tol = default_classification_tol) {
    detail::check_gt_horizon_args(T, quad_tol);
    double terminal_hazard;
    try {
        terminal_hazard = cumulative_hazard(dist, T);
    } catch (const std::overflow_error&) {
        throw degenerate_error("gt_nonrepairable: F(T) is numerically 1");
    }
    if (terminal_hazard == 0.0) {
        throw degenerate_error("gt_nonrepairable: F(T) is numerically 0");
    }
    if (survival(dist, T) == 0.0) {
        throw degenerate_error("gt_nonrepairable: F(T) is numerically 1");
    }
    const double denom = T * terminal_hazard;
    const double integral = integrate_adaptive(
        [&dist](double t) { return cumulative_hazard(dist, t); }, 0.0, T, quad_tol * denom);
    const double c = 1.0 - 2.0 * integral / denom;
    return GtResult{c, T, classify(c, class_tol), std::nullopt};
}

/// GT coefficient of a parametric lifetime distribution over [0, T]. The
/// Weibull family takes the closed form (exact, no quadrature error); other
/// families integrate the cumulative hazard numerically.
inline GtResult gt_nonrepairable(const DistributionSpec& dist, double T,
                                 double quad_tol = default_quad_tol,
                                 double class_tol = default_classification_tol) {
    detail::check_gt_horizon_args(T, quad_tol);
    if (dist.family() == Family::weibull) {
        // Degenerate horizons are rejected the way the generic path would.
        try {
            if (cumulative_hazard(dist, T) == 0.0) {
                throw degenerate_error("gt_nonrepairable: F(T) is numerically 0");
            }
        } catch (const std::overflow_error&) {
            throw degenerate_error("gt_nonrepairable: F(T) is numerically 1");
        }
        const double c = gt_weibull_closed_form(dist.shape());
        return GtResult{c, T, classify(c, class_tol), std::nullopt};
    }
    return gt_nonrepairable_quadrature(dist, T, quad_tol, class_tol);
}

}  // namespace gtcoef
