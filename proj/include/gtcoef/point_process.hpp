#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gtcoef/distribution.hpp"
#include "gtcoef/errors.hpp"
#include "gtcoef/gt.hpp"
#include "gtcoef/rng.hpp"

namespace gtcoef {

/// Virtual-age bookkeeping after a repair with effectiveness factor q and a
/// just-elapsed interarrival x:
///   kijima_i   v' = v + q * x        (repair removes age accrued before it)
///   kijima_ii  v' = q * (v + x)      (repair rescales the whole virtual age)
/// Both reduce to a renewal process at q = 0 and to an NHPP at q = 1.
enum class VirtualAgeModel { kijima_i, kijima_ii };

inline double next_virtual_age(VirtualAgeModel model, double v, double q, double x) {
    return model == VirtualAgeModel::kijima_i ? v + q * x : q * (v + x);
}

/// A failure process driven by an underlying time-to-first-failure
/// distribution and a repair effectiveness factor q in [0, 1]:
/// q = 0 renewal process, q = 1 NHPP, in between a G-renewal process.
struct PointProcessSpec {
    DistributionSpec underlying;
    double repair_effectiveness;
    VirtualAgeModel virtual_age;

    PointProcessSpec(DistributionSpec dist, double q,
                     VirtualAgeModel model = VirtualAgeModel::kijima_ii)
        : underlying(dist), repair_effectiveness(q), virtual_age(model) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("repair effectiveness must lie in [0, 1]");
        }
    }
};

/// Inverse of the conditional survival R(v + x)/R(v) = u for x, given the
/// current virtual age v and u in (0, 1). Equivalently solves
/// H(v + x) = H(v) - ln u. Closed form for the exponential and Weibull
/// families; bisection on the cumulative hazard for the gamma family.
inline double conditional_interarrival(const DistributionSpec& d, double v, double u) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::domain_error("conditional_interarrival: virtual age must be nonnegative");
    }
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("conditional_interarrival: u must lie in (0, 1)");
    }
    switch (d.family()) {
        case Family::exponential:
            return -std::log(u) / d.rate();
        case Family::weibull: {
            const double a = d.scale();
            const double b = d.shape();
            return a * std::pow(std::pow(v / a, b) - std::log(u), 1.0 / b) - v;
        }
        case Family::gamma:
        default: {
            const double target = cumulative_hazard(d, v) - std::log(u);
            double lo = v;
            double hi = v + d.scale();
            for (int i = 0; i < 200 && cumulative_hazard(d, hi) < target; ++i) {
                lo = hi;
                hi = v + (hi - v) * 2.0;
            }
            const double tol = 1e-10 * d.scale();
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                if (cumulative_hazard(d, mid) < target) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi) - v;
        }
    }
}

namespace detail {

template <typename OnEvent>
inline void simulate_events(const PointProcessSpec& spec, double T, RandomStream& stream,
                            OnEvent&& on_event) {
    const double q = spec.repair_effectiveness;
    double t = 0.0;
    double v = 0.0;
    for (;;) {
        const double u = stream.uniform_open01();
        const double x = conditional_interarrival(spec.underlying, v, u);
        double next = t + x;
        // Interarrivals are a.s. positive; nudge forward if the increment
        // rounds away so event times stay strictly increasing.
        if (next <= t) {
            next = std::nextafter(t, std::numeric_limits<double>::infinity());
        }
        if (next > T) break;
        on_event(next);
        v = next_virtual_age(spec.virtual_age, v, q, next - t);
        t = next;
    }
}

}  // namespace detail

/// One simulated failure history: strictly increasing event times in (0, T].
inline std::vector<double> simulate_history(const PointProcessSpec& spec, double T,
                                            RandomStream& stream) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::domain_error("simulate_history: horizon must be positive");
    }
    std::vector<double> events;
    detail::simulate_events(spec, T, stream, [&events](double t) { events.push_back(t); });
    return events;
}

/// CIF of the power-law NHPP: Lambda(t) = (t/alpha)^beta.
inline double power_law_cif(double alpha, double beta, double t) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("power_law_cif: parameters must be positive");
    }
    if (t < 0.0) {
        throw std::domain_error("power_law_cif: time must be nonnegative");
    }
    if (t == 0.0) return 0.0;
    return std::pow(t / alpha, beta);
}

/// Monte-Carlo estimate of the cumulative intensity Lambda(t) = E[N(t)] on a
/// uniform grid, with per-point standard errors. Replication-level reductions
/// (trapezoid-weighted count path and terminal count) are retained so GT
/// standard errors can be bootstrapped without rerunning the simulation.
struct CifEstimate {
    std::vector<double> grid;
    std::vector<double> mean_counts;
    std::vector<double> std_errors;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::vector<double> rep_weighted_integrals;
    std::vector<std::uint32_t> rep_terminal_counts;
};

namespace detail {

// Smallest grid index i >= 1 with grid[i] >= x, for x in (0, T].
inline std::size_t grid_index_at_or_above(const std::vector<double>& grid, double T, double x) {
    const std::size_t n = grid.size();
    const double pos = x * static_cast<double>(n - 1) / T;
    std::size_t i = static_cast<std::size_t>(std::ceil(pos));
    if (i < 1) i = 1;
    if (i > n - 1) i = n - 1;
    while (grid[i] < x && i + 1 < n) ++i;
    while (i > 1 && grid[i - 1] >= x) --i;
    return i;
}

struct CifAccumulator {
    std::vector<std::uint64_t> count_sums;
    std::vector<std::uint64_t> count_sq_sums;

    explicit CifAccumulator(std::size_t n) : count_sums(n, 0), count_sq_sums(n, 0) {}

    void absorb(const CifAccumulator& other) {
        for (std::size_t i = 0; i < count_sums.size(); ++i) {
            count_sums[i] += other.count_sums[i];
            count_sq_sums[i] += other.count_sq_sums[i];
        }
    }
};

}  // namespace detail

/// Estimate the CIF of `spec` over [0, T] on `grid_points` uniform grid
/// points from `replications` independent histories. Replication r always
/// consumes random stream r of `seed`, and all cross-replication reductions
/// are exact integer sums, so the result is bit-identical for a given
/// (spec, T, grid_points, replications, seed) no matter how many threads run.
inline CifEstimate estimate_cif(const PointProcessSpec& spec, double T, std::size_t grid_points,
                                std::size_t replications, std::uint64_t seed,
                                unsigned threads = 0) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::domain_error("estimate_cif: horizon must be positive");
    }
    if (grid_points < 3) {
        throw std::domain_error("estimate_cif: need at least 3 grid points");
    }
    if (replications < 100) {
        throw std::domain_error("estimate_cif: need at least 100 replications");
    }

    const std::size_t n = grid_points;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = T * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    grid.back() = T;
    const double dt = T / static_cast<double>(n - 1);

    CifEstimate est;
    est.grid = grid;
    est.replications = replications;
    est.seed = seed;
    est.rep_weighted_integrals.assign(replications, 0.0);
    est.rep_terminal_counts.assign(replications, 0);

    unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (worker_count == 0) worker_count = 1;
    worker_count = static_cast<unsigned>(
        std::min<std::size_t>(worker_count, std::max<std::size_t>(replications / 256, 1)));

    std::vector<detail::CifAccumulator> partials(worker_count, detail::CifAccumulator(n));

    auto run_range = [&](std::size_t first, std::size_t last, detail::CifAccumulator& acc) {
        std::vector<std::uint32_t> counts(n);
        for (std::size_t r = first; r < last; ++r) {
            std::fill(counts.begin(), counts.end(), 0);
            RandomStream stream(seed, r);
            detail::simulate_events(spec, T, stream, [&](double t) {
                ++counts[detail::grid_index_at_or_above(grid, T, t)];
            });
            for (std::size_t i = 1; i < n; ++i) counts[i] += counts[i - 1];
            double weighted = 0.0;
            for (std::size_t i = 1; i + 1 < n; ++i) {
                weighted += static_cast<double>(counts[i]);
                acc.count_sums[i] += counts[i];
                acc.count_sq_sums[i] +=
                    static_cast<std::uint64_t>(counts[i]) * static_cast<std::uint64_t>(counts[i]);
            }
            const std::uint32_t terminal = counts[n - 1];
            weighted = dt * (weighted + 0.5 * static_cast<double>(terminal));
            acc.count_sums[n - 1] += terminal;
            acc.count_sq_sums[n - 1] +=
                static_cast<std::uint64_t>(terminal) * static_cast<std::uint64_t>(terminal);
            est.rep_weighted_integrals[r] = weighted;
            est.rep_terminal_counts[r] = terminal;
        }
    };

    if (worker_count == 1) {
        run_range(0, replications, partials[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        const std::size_t chunk = (replications + worker_count - 1) / worker_count;
        for (unsigned w = 0; w < worker_count; ++w) {
            const std::size_t first = std::min<std::size_t>(w * chunk, replications);
            const std::size_t last = std::min<std::size_t>(first + chunk, replications);
            pool.emplace_back(run_range, first, last, std::ref(partials[w]));
        }
        for (auto& th : pool) th.join();
        for (unsigned w = 1; w < worker_count; ++w) partials[0].absorb(partials[w]);
    }

    const auto& totals = partials[0];
    const double reps = static_cast<double>(replications);
    est.mean_counts.assign(n, 0.0);
    est.std_errors.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double sum = static_cast<double>(totals.count_sums[i]);
        const double sum_sq = static_cast<double>(totals.count_sq_sums[i]);
        est.mean_counts[i] = sum / reps;
        const double var = std::max(0.0, (sum_sq - sum * sum / reps) / (reps - 1.0));
        est.std_errors[i] = std::sqrt(var / reps);
    }
    return est;
}

/// GT coefficient of an estimated CIF. The point value comes from the
/// trapezoidal GT of the mean-count curve; the standard error comes from a
/// 200-resample bootstrap over the replication-level reductions, seeded
/// deterministically from the estimate's seed. Classification uses a
/// tolerance of two standard errors.
inline GtResult gt_repairable(const CifEstimate& cif) {
    const std::size_t n = cif.grid.size();
    if (n < 3 || cif.mean_counts.size() != n) {
        throw std::invalid_argument("gt_repairable: malformed CIF estimate");
    }
    if (!(cif.mean_counts.back() > 0.0)) {
        throw degenerate_error("gt_repairable: terminal mean count is zero");
    }
    const double T = cif.grid.back();
    SampledCurve curve(cif.grid, cif.mean_counts);
    const double value = gt_from_sampled_curve(curve).value;

    const std::size_t reps = cif.replications;
    double std_error = 0.0;
    if (reps == cif.rep_weighted_integrals.size() && reps == cif.rep_terminal_counts.size() &&
        reps > 1) {
        constexpr int resamples = 200;
        RandomStream boot(cif.seed, 0x8000000000000000ULL);
        std::vector<double> draws;
        draws.reserve(resamples);
        for (int b = 0; b < resamples; ++b) {
            double integral_sum = 0.0;
            std::uint64_t terminal_sum = 0;
            for (std::size_t j = 0; j < reps; ++j) {
                const std::uint64_t idx = boot.uniform_index(reps);
                integral_sum += cif.rep_weighted_integrals[idx];
                terminal_sum += cif.rep_terminal_counts[idx];
            }
            if (terminal_sum == 0) continue;
            const double mean_integral = integral_sum / static_cast<double>(reps);
            const double mean_terminal =
                static_cast<double>(terminal_sum) / static_cast<double>(reps);
            draws.push_back(1.0 - 2.0 * mean_integral / (T * mean_terminal));
        }
        if (draws.size() > 1) {
            double mean = 0.0;
            for (double d : draws) mean += d;
            mean /= static_cast<double>(draws.size());
            double ss = 0.0;
            for (double d : draws) ss += (d - mean) * (d - mean);
            std_error = std::sqrt(ss / static_cast<double>(draws.size() - 1));
        }
    }
    GtResult result{value, T, classify(value, 2.0 * std_error), std_error};
    return result;
}

}  // namespace gtcoef
