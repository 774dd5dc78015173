#pragma once

#include <stdexcept>
#include <string>

namespace gtcoef {

/// Evaluation at a point where the quantity diverges (e.g. hazard at t = 0
/// for shape < 1).
class singularity_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Horizon or curve on which the GT coefficient is undefined: F(T) numerically
/// 0 or 1, or a curve whose terminal value is zero.
class degenerate_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Observed-data input that violates the estimator's requirements
/// (empty sample, unparseable CSV row, mismatched observation windows, ...).
class malformed_input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its recursion budget. Carries the best
/// estimate assembled so far.
class quadrature_error : public std::runtime_error {
  public:
    quadrature_error(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

  private:
    double best_estimate_;
};

}  // namespace gtcoef
