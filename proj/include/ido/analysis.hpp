#pragma once

#include <span>
#include <vector>

#include "ido/ode.hpp"

namespace ido {

/// Running trapezoid integral over strictly increasing times; first entry 0.
/// Throws std::invalid_argument on unsorted times or mismatched lengths.
std::vector<double> cumulative_trapezoid(std::span<const double> times, std::span<const double> values);

/// Running composite Simpson integral over a uniform grid: pairwise Simpson
/// panels with a trapezoid closing rule on a trailing odd interval.
std::vector<double> cumulative_simpson(std::span<const double> times, std::span<const double> values);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Least-squares line through (t, y).
LineFit fit_line(std::span<const double> times, std::span<const double> values);

struct ChannelMetrics {
    double sup_error = 0.0;
    double rmse = 0.0;
    double drift_slope = 0.0;     // per second
    double drift_residual = 0.0;  // rms residual of the drift fit
};

struct RunMetrics {
    double settle_time_used = 0.0;
    std::vector<ChannelMetrics> channels;
    bool diverged = false;
};

/// Windowed error statistics over t >= settle_time for every state channel
/// (error = state - ref). Throws std::invalid_argument when the window is
/// empty or the trace has no reference channels.
RunMetrics compute_metrics(const StateTrace& trace, double settle_time);

/// Every m-th row of the trace (output thinning only; metrics and baselines
/// always use the full-rate trace).
StateTrace decimate(const StateTrace& trace, std::size_t every);

}  // namespace ido
