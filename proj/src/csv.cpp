#include "ido/csv.hpp"

#include <cstdio>

namespace ido {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write_metric_lines(std::ostream& out, const StateTrace& trace, const RunMetrics& metrics,
                        const std::string& prefix) {
    out << prefix << "settle_time_used = " << format_number(metrics.settle_time_used) << "\n";
    out << prefix << "diverged = " << (metrics.diverged ? 1 : 0) << "\n";
    for (std::size_t ch = 0; ch < metrics.channels.size(); ++ch) {
        const auto& m = metrics.channels[ch];
        const std::string& name = ch < trace.labels().size() ? trace.labels()[ch] : std::to_string(ch);
        out << prefix << "channel." << name << ".settled_sup_error = " << format_number(m.sup_error) << "\n";
        out << prefix << "channel." << name << ".settled_rmse = " << format_number(m.rmse) << "\n";
        out << prefix << "channel." << name << ".drift_slope = " << format_number(m.drift_slope) << "\n";
        out << prefix << "channel." << name << ".drift_residual = " << format_number(m.drift_residual)
            << "\n";
    }
}

}  // namespace

void write_trace_csv(std::ostream& out, const StateTrace& trace, const RunMetrics& metrics,
                     const std::string& config_echo, std::size_t decimate_every) {
    out << "# config = " << config_echo << "\n";
    if (!trace.meta.empty()) out << "# meta = " << trace.meta << "\n";
    if (decimate_every > 1) out << "# decimate = " << decimate_every << "\n";
    if (trace.diverged) out << "# diverged_at = " << format_number(trace.diverged_at) << "\n";
    write_metric_lines(out, trace, metrics, "# ");

    out << "t";
    for (const auto& label : trace.labels()) out << "," << label;
    if (trace.has_refs())
        for (const auto& label : trace.labels()) out << ",ref_" << label;
    if (trace.has_refs())
        for (const auto& label : trace.labels()) out << ",e_" << label;
    if (trace.has_input()) out << ",input";
    for (const auto& name : trace.extra_names()) out << "," << name;
    out << "\n";

    for (std::size_t k = 0; k < trace.size(); k += decimate_every) {
        out << format_number(trace.time(k));
        for (std::size_t ch = 0; ch < trace.width(); ++ch) out << "," << format_number(trace.state(k, ch));
        if (trace.has_refs()) {
            for (std::size_t ch = 0; ch < trace.width(); ++ch) out << "," << format_number(trace.ref(k, ch));
            for (std::size_t ch = 0; ch < trace.width(); ++ch)
                out << "," << format_number(trace.error(k, ch));
        }
        if (trace.has_input()) out << "," << format_number(trace.input(k));
        for (const auto& name : trace.extra_names()) out << "," << format_number(trace.extra(name)[k]);
        out << "\n";
    }
}

void write_metrics_report(std::ostream& out, const StateTrace& trace, const RunMetrics& metrics) {
    write_metric_lines(out, trace, metrics, "");
}

void write_drift_report(std::ostream& out, const DriftReport& report) {
    out << "observer_drift_slope = " << format_number(report.observer_slope) << "\n";
    out << "trapezoid_drift_slope = " << format_number(report.trapezoid_slope) << "\n";
    out << "simpson_drift_slope = " << format_number(report.simpson_slope) << "\n";
    out << "expected_noise_mean = " << format_number(report.expected_noise_mean) << "\n";
    write_metric_lines(out, report.run.trace, report.run.metrics, "");
}

void write_sweep_report(std::ostream& out, const SweepReport& report) {
    for (const auto& entry : report.entries) {
        const std::string prefix = "epsilon[" + format_number(entry.epsilon) + "]";
        if (!entry.result) {
            for (const auto& d : entry.diagnostics) out << prefix << ".invalid = " << d << "\n";
            continue;
        }
        const auto& labels = entry.result->trace.labels();
        for (std::size_t ch = 0; ch < entry.settled_sup.size(); ++ch)
            out << prefix << ".settled_sup_error." << labels[ch] << " = "
                << format_number(entry.settled_sup[ch]) << "\n";
    }
    for (std::size_t ch = 0; ch < report.monotone_decreasing.size(); ++ch)
        out << "monotone_decreasing.channel" << ch + 1 << " = " << (report.monotone_decreasing[ch] ? 1 : 0)
            << "\n";
}

}  // namespace ido
