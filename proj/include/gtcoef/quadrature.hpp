#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gtcoef/errors.hpp"

namespace gtcoef {

namespace detail {

template <typename F>
double simpson_adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth, bool& converged) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Richardson correction delta/15 makes the accepted panel O(h^6) accurate.
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        converged = false;
        return left + right + delta / 15.0;
    }
    return simpson_adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, converged)
         + simpson_adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, converged);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to the given absolute
/// tolerance. Throws quadrature_error carrying the best estimate when the
/// recursion depth budget is exhausted before the tolerance is met.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 50) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("integrate_adaptive: need finite a < b");
    }
    if (!(abs_tol > 0.0)) {
        throw std::domain_error("integrate_adaptive: tolerance must be positive");
    }
    auto& fn = f;
    const double m = 0.5 * (a + b);
    const double fa = fn(a);
    const double fb = fn(b);
    const double fm = fn(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    bool converged = true;
    const double result =
        detail::simpson_adapt(fn, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, converged);
    if (!converged) {
        throw quadrature_error("integrate_adaptive: recursion depth exhausted", result);
    }
    return result;
}

}  // namespace gtcoef
