#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gtcoef/errors.hpp"
#include "gtcoef/gt.hpp"

namespace gtcoef {

struct LifetimeRecord {
    double time = 0.0;
    bool censored = false;
};

/// Observed (possibly right-censored) failure times of non-repairable units,
/// analyzed over the window [0, horizon].
class LifetimeSample {
  public:
    LifetimeSample(std::vector<LifetimeRecord> records, double horizon)
        : records_(std::move(records)), horizon_(horizon) {
        if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
            throw malformed_input_error("LifetimeSample: horizon must be positive");
        }
        if (records_.empty()) {
            throw malformed_input_error("LifetimeSample: no records");
        }
        bool any_failure = false;
        for (const auto& rec : records_) {
            if (!(rec.time > 0.0) || !std::isfinite(rec.time)) {
                throw malformed_input_error("LifetimeSample: times must be positive");
            }
            if (!rec.censored && rec.time <= horizon_) any_failure = true;
        }
        if (!any_failure) {
            throw malformed_input_error("LifetimeSample: no uncensored failure within the horizon");
        }
    }

    const std::vector<LifetimeRecord>& records() const noexcept { return records_; }
    double horizon() const noexcept { return horizon_; }

  private:
    std::vector<LifetimeRecord> records_;
    double horizon_;
};

/// Recorded event times of one repairable system observed on [0, window_end].
class EventHistory {
  public:
    EventHistory(std::string system_id, std::vector<double> event_times, double window_end)
        : system_id_(std::move(system_id)),
          event_times_(std::move(event_times)),
          window_end_(window_end) {
        if (!(window_end_ > 0.0) || !std::isfinite(window_end_)) {
            throw malformed_input_error("EventHistory: window end must be positive");
        }
        for (std::size_t i = 0; i < event_times_.size(); ++i) {
            if (!(event_times_[i] > 0.0) || event_times_[i] > window_end_) {
                throw malformed_input_error("EventHistory: event times must lie in (0, window]");
            }
            if (i > 0 && !(event_times_[i] > event_times_[i - 1])) {
                throw malformed_input_error("EventHistory: event times must be strictly increasing");
            }
        }
    }

    const std::string& system_id() const noexcept { return system_id_; }
    const std::vector<double>& event_times() const noexcept { return event_times_; }
    double window_end() const noexcept { return window_end_; }

  private:
    std::string system_id_;
    std::vector<double> event_times_;
    double window_end_;
};

/// Right-continuous nondecreasing step function on [0, horizon], zero before
/// the first jump. Empirical stand-in for a cumulative hazard or a mean
/// cumulative function. May have zero jumps (a history with no events).
class StepCurve {
  public:
    StepCurve(std::vector<double> jump_times, std::vector<double> cumulative_values,
              double horizon)
        : jump_times_(std::move(jump_times)),
          cumulative_values_(std::move(cumulative_values)),
          horizon_(horizon) {
        if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
            throw std::invalid_argument("StepCurve: horizon must be positive");
        }
        if (jump_times_.size() != cumulative_values_.size()) {
            throw std::invalid_argument("StepCurve: jump/value lengths differ");
        }
        double prev_t = 0.0;
        double prev_v = 0.0;
        for (std::size_t i = 0; i < jump_times_.size(); ++i) {
            if (!(jump_times_[i] > prev_t) || jump_times_[i] > horizon_) {
                throw std::invalid_argument(
                    "StepCurve: jump times must be strictly increasing within (0, horizon]");
            }
            if (!(cumulative_values_[i] > prev_v)) {
                throw std::invalid_argument("StepCurve: values must be strictly increasing");
            }
            prev_t = jump_times_[i];
            prev_v = cumulative_values_[i];
        }
    }

    const std::vector<double>& jump_times() const noexcept { return jump_times_; }
    const std::vector<double>& values() const noexcept { return cumulative_values_; }
    double horizon() const noexcept { return horizon_; }
    bool empty() const noexcept { return jump_times_.empty(); }
    double terminal() const noexcept { return empty() ? 0.0 : cumulative_values_.back(); }

  private:
    std::vector<double> jump_times_;
    std::vector<double> cumulative_values_;
    double horizon_;
};

/// Nelson-Aalen estimate of the cumulative hazard. At each distinct
/// uncensored failure time within the horizon the curve jumps by d/n (failures
/// over units still at risk); censored records leave the risk set without
/// producing a jump, and ties aggregate into one jump.
inline StepCurve nelson_aalen(const LifetimeSample& sample) {
    std::vector<LifetimeRecord> recs = sample.records();
    std::sort(recs.begin(), recs.end(),
              [](const LifetimeRecord& a, const LifetimeRecord& b) { return a.time < b.time; });

    std::vector<double> times;
    std::vector<double> cumulative;
    std::size_t at_risk = recs.size();
    double running = 0.0;
    std::size_t i = 0;
    while (i < recs.size() && recs[i].time <= sample.horizon()) {
        const double t = recs[i].time;
        std::size_t deaths = 0;
        std::size_t leaving = 0;
        for (; i < recs.size() && recs[i].time == t; ++i) {
            ++leaving;
            if (!recs[i].censored) ++deaths;
        }
        if (deaths > 0) {
            if (at_risk == 0) {
                throw malformed_input_error("nelson_aalen: empty risk set at a failure time");
            }
            running += static_cast<double>(deaths) / static_cast<double>(at_risk);
            times.push_back(t);
            cumulative.push_back(running);
        }
        at_risk -= leaving;
    }
    return StepCurve(std::move(times), std::move(cumulative), sample.horizon());
}

/// Mean cumulative function of a fleet observed on a common window [0, T]:
/// value at t is (total events up to t) / (number of systems).
inline StepCurve mcf(const std::vector<EventHistory>& histories, double T) {
    if (histories.empty()) {
        throw malformed_input_error("mcf: no histories");
    }
    for (const auto& h : histories) {
        if (h.window_end() != T) {
            throw malformed_input_error("mcf: all histories must share the observation window");
        }
    }
    std::map<double, std::size_t> event_counts;
    for (const auto& h : histories) {
        for (double t : h.event_times()) ++event_counts[t];
    }
    std::vector<double> times;
    std::vector<double> cumulative;
    times.reserve(event_counts.size());
    cumulative.reserve(event_counts.size());
    const double systems = static_cast<double>(histories.size());
    double running = 0.0;
    for (const auto& [t, count] : event_counts) {
        running += static_cast<double>(count) / systems;
        times.push_back(t);
        cumulative.push_back(running);
    }
    return StepCurve(std::move(times), std::move(cumulative), T);
}

/// GT coefficient of an empirical step curve. The integral of a step function
/// is evaluated exactly: sum of value_i * (t_{i+1} - t_i) with the final
/// segment running to the horizon.
inline GtResult gt_from_step_curve(const StepCurve& curve,
                                   double class_tol = default_classification_tol) {
    if (curve.empty() || !(curve.terminal() > 0.0)) {
        throw degenerate_error("gt_from_step_curve: curve has no jumps");
    }
    const auto& t = curve.jump_times();
    const auto& v = curve.values();
    const double T = curve.horizon();
    double integral = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double seg_end = i + 1 < t.size() ? t[i + 1] : T;
        integral += v[i] * (seg_end - t[i]);
    }
    const double c = 1.0 - 2.0 * integral / (T * curve.terminal());
    return GtResult{c, T, classify(c, class_tol), std::nullopt};
}

}  // namespace gtcoef
