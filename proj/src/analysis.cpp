#include "ido/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ido {

namespace {

void check_samples(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size())
        throw std::invalid_argument("cumulative integral: times/values length mismatch");
    if (times.size() < 2) throw std::invalid_argument("cumulative integral: need at least two samples");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("cumulative integral: times must be strictly increasing");
}

}  // namespace

std::vector<double> cumulative_trapezoid(std::span<const double> times, std::span<const double> values) {
    check_samples(times, values);
    std::vector<double> out(times.size());
    out[0] = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k)
        out[k] = out[k - 1] + 0.5 * (times[k] - times[k - 1]) * (values[k] + values[k - 1]);
    return out;
}

std::vector<double> cumulative_simpson(std::span<const double> times, std::span<const double> values) {
    check_samples(times, values);
    const double h = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double hk = times[k] - times[k - 1];
        if (std::abs(hk - h) > 1e-6 * h)
            throw std::invalid_argument("cumulative_simpson: grid must be uniform");
    }

    std::vector<double> out(times.size());
    out[0] = 0.0;
    // Even nodes close a Simpson panel; odd nodes carry a trapezoid step that
    // is replaced once the panel completes.
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (k % 2 == 0)
            out[k] = out[k - 2] + h / 3.0 * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
        else
            out[k] = out[k - 1] + 0.5 * h * (values[k - 1] + values[k]);
    }
    return out;
}

LineFit fit_line(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("fit_line: need at least two matched samples");
    const std::size_t n = times.size();

    double tmean = 0.0, ymean = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        tmean += times[k];
        ymean += values[k];
    }
    tmean /= static_cast<double>(n);
    ymean /= static_cast<double>(n);

    double stt = 0.0, sty = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = times[k] - tmean;
        stt += dt * dt;
        sty += dt * (values[k] - ymean);
    }
    LineFit fit;
    fit.slope = stt > 0.0 ? sty / stt : 0.0;
    fit.intercept = ymean - fit.slope * tmean;

    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = values[k] - (fit.intercept + fit.slope * times[k]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

RunMetrics compute_metrics(const StateTrace& trace, double settle_time) {
    if (!trace.has_refs()) throw std::invalid_argument("compute_metrics: trace has no reference channels");
    const auto times = trace.times();
    const auto first = std::lower_bound(times.begin(), times.end(), settle_time);
    if (first == times.end()) throw std::invalid_argument("compute_metrics: settle window is empty");
    const auto k0 = static_cast<std::size_t>(first - times.begin());
    const std::size_t count = trace.size() - k0;
    if (count < 2) throw std::invalid_argument("compute_metrics: settle window too short");

    RunMetrics metrics;
    metrics.settle_time_used = settle_time;
    metrics.diverged = trace.diverged;

    std::vector<double> twin(times.begin() + static_cast<std::ptrdiff_t>(k0), times.end());
    std::vector<double> err(count);
    for (std::size_t ch = 0; ch < trace.width(); ++ch) {
        ChannelMetrics cm;
        double ss = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double e = trace.error(k0 + k, ch);
            err[k] = e;
            cm.sup_error = std::max(cm.sup_error, std::abs(e));
            ss += e * e;
        }
        cm.rmse = std::sqrt(ss / static_cast<double>(count));
        const auto fit = fit_line(twin, err);
        cm.drift_slope = fit.slope;
        cm.drift_residual = fit.residual_rms;
        metrics.channels.push_back(cm);
    }
    return metrics;
}

StateTrace decimate(const StateTrace& trace, std::size_t every) {
    if (every == 0) throw std::invalid_argument("decimate: factor must be >= 1");
    if (every == 1) return trace;

    std::vector<std::string> extra_names = trace.extra_names();
    StateTrace out(trace.width(), trace.labels(), trace.has_refs(), trace.has_input(), extra_names);
    out.meta = trace.meta;
    out.diverged = trace.diverged;
    out.diverged_at = trace.diverged_at;
    out.reserve(trace.size() / every + 1);

    std::vector<double> state(trace.width()), ref(trace.width(), 0.0), extras(extra_names.size());
    for (std::size_t k = 0; k < trace.size(); k += every) {
        for (std::size_t ch = 0; ch < trace.width(); ++ch) {
            state[ch] = trace.state(k, ch);
            if (trace.has_refs()) ref[ch] = trace.ref(k, ch);
        }
        for (std::size_t j = 0; j < extra_names.size(); ++j) extras[j] = trace.extra(extra_names[j])[k];
        out.append(trace.time(k), state, ref, trace.has_input() ? trace.input(k) : 0.0, extras);
    }
    return out;
}

}  // namespace ido
