#pragma once

#include <cmath>
#include <stdexcept>

#include "gtcoef/errors.hpp"
#include "gtcoef/incgamma.hpp"

namespace gtcoef {

enum class Family { exponential, weibull, gamma };

/// Parametric lifetime model. Three families are supported:
///   exponential(rate)        R(t) = exp(-rate * t)
///   weibull(alpha, beta)     R(t) = exp(-(t/alpha)^beta), alpha scale, beta shape
///   gamma(k, lambda)         F(t) = P(k, lambda * t), k shape, lambda rate
///
/// Shape is fixed to 1 for the exponential family. Both the scale and the
/// rate are stored so that whichever parameter a distribution was constructed
/// from round-trips exactly; operations use the natural parameter of each
/// family (rate for exponential/gamma, scale for Weibull).
class DistributionSpec {
  public:
    static DistributionSpec exponential(double rate) {
        check_positive(rate, "exponential rate");
        return DistributionSpec(Family::exponential, 1.0, 1.0 / rate, rate);
    }

    static DistributionSpec weibull(double alpha, double beta) {
        check_positive(alpha, "weibull scale");
        check_positive(beta, "weibull shape");
        return DistributionSpec(Family::weibull, beta, alpha, 1.0 / alpha);
    }

    static DistributionSpec gamma(double k, double lambda) {
        check_positive(k, "gamma shape");
        check_positive(lambda, "gamma rate");
        return DistributionSpec(Family::gamma, k, 1.0 / lambda, lambda);
    }

    /// Uniform (shape, scale) entry point used by the CLI.
    static DistributionSpec from_scale(Family family, double shape, double scale) {
        check_positive(scale, "scale");
        check_positive(shape, "shape");
        switch (family) {
            case Family::exponential:
                if (shape != 1.0) {
                    throw std::invalid_argument("exponential family has fixed shape 1");
                }
                return exponential(1.0 / scale);
            case Family::weibull:
                return weibull(scale, shape);
            case Family::gamma:
            default:
                return DistributionSpec(Family::gamma, shape, scale, 1.0 / scale);
        }
    }

    Family family() const noexcept { return family_; }
    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }
    double rate() const noexcept { return rate_; }

  private:
    DistributionSpec(Family family, double shape, double scale, double rate)
        : family_(family), shape_(shape), scale_(scale), rate_(rate) {}

    static void check_positive(double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + " must be positive and finite");
        }
    }

    Family family_;
    double shape_;
    double scale_;
    double rate_;
};

namespace detail {

inline void check_time_nonneg(double t) {
    if (t < 0.0 || !std::isfinite(t)) {
        throw std::domain_error("time must be nonnegative and finite");
    }
}

}  // namespace detail

/// Cumulative distribution function F(t).
inline double cdf(const DistributionSpec& d, double t) {
    detail::check_time_nonneg(t);
    switch (d.family()) {
        case Family::exponential:
            return -std::expm1(-d.rate() * t);
        case Family::weibull:
            return -std::expm1(-std::pow(t / d.scale(), d.shape()));
        case Family::gamma:
        default:
            return reg_inc_gamma_lower(d.shape(), d.rate() * t);
    }
}

/// Survival function R(t) = 1 - F(t), computed directly (never as 1 - cdf)
/// so the tail keeps full relative precision.
inline double survival(const DistributionSpec& d, double t) {
    detail::check_time_nonneg(t);
    switch (d.family()) {
        case Family::exponential:
            return std::exp(-d.rate() * t);
        case Family::weibull:
            return std::exp(-std::pow(t / d.scale(), d.shape()));
        case Family::gamma:
        default:
            return reg_inc_gamma_upper(d.shape(), d.rate() * t);
    }
}

/// Cumulative hazard H(t) = -ln R(t). For the Weibull family this is
/// (t/alpha)^beta evaluated directly, with no logarithm of a computed
/// survival; for the gamma family it is -ln Q(k, lambda t), switching to
/// -log1p(-P) below the series/fraction split so no accuracy is lost on
/// either side.
inline double cumulative_hazard(const DistributionSpec& d, double t) {
    detail::check_time_nonneg(t);
    if (t == 0.0) return 0.0;
    switch (d.family()) {
        case Family::exponential:
            return d.rate() * t;
        case Family::weibull: {
            const double h = std::pow(t / d.scale(), d.shape());
            if (!std::isfinite(h)) {
                throw std::overflow_error("cumulative_hazard: horizon beyond representable survival");
            }
            return h;
        }
        case Family::gamma:
        default: {
            const double x = d.rate() * t;
            if (x < d.shape() + 1.0) {
                return -std::log1p(-detail::gamma_p_series(d.shape(), x));
            }
            const double q = detail::gamma_q_contfrac(d.shape(), x);
            if (q == 0.0) {
                throw std::overflow_error("cumulative_hazard: horizon beyond representable survival");
            }
            return -std::log(q);
        }
    }
}

/// Hazard (instantaneous failure rate) h(t) = f(t) / R(t). At t = 0 the
/// hazard diverges when shape < 1; that is reported as singularity_error
/// rather than returned as an infinity.
inline double hazard(const DistributionSpec& d, double t) {
    detail::check_time_nonneg(t);
    switch (d.family()) {
        case Family::exponential:
            return d.rate();
        case Family::weibull: {
            if (t == 0.0) {
                if (d.shape() < 1.0) {
                    throw singularity_error("hazard diverges at t = 0 for shape < 1");
                }
                return d.shape() == 1.0 ? 1.0 / d.scale() : 0.0;
            }
            return (d.shape() / d.scale()) * std::pow(t / d.scale(), d.shape() - 1.0);
        }
        case Family::gamma:
        default: {
            if (t == 0.0) {
                if (d.shape() < 1.0) {
                    throw singularity_error("hazard diverges at t = 0 for shape < 1");
                }
                return d.shape() == 1.0 ? d.rate() : 0.0;
            }
            const double x = d.rate() * t;
            const double r = reg_inc_gamma_upper(d.shape(), x);
            if (r == 0.0) {
                throw std::overflow_error("hazard: survival underflowed at this horizon");
            }
            const double log_pdf = std::log(d.rate()) + (d.shape() - 1.0) * std::log(x) - x
                                   - std::lgamma(d.shape());
            return std::exp(log_pdf) / r;
        }
    }
}

/// Rate of the exponential distribution whose cumulative hazard matches this
/// distribution's at the horizon: h_eff(T) = -ln(1 - F(T)) / T = H(T) / T.
inline double effective_failure_rate(const DistributionSpec& d, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::domain_error("effective_failure_rate: horizon must be positive");
    }
    double H;
    try {
        H = cumulative_hazard(d, T);
    } catch (const std::overflow_error&) {
        throw degenerate_error("effective_failure_rate: F(T) is numerically 1");
    }
    if (H == 0.0) {
        throw degenerate_error("effective_failure_rate: F(T) is numerically 0");
    }
    if (survival(d, T) == 0.0) {
        throw degenerate_error("effective_failure_rate: F(T) is numerically 1");
    }
    return H / T;
}

}  // namespace gtcoef
