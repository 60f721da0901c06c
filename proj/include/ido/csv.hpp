#pragma once

#include <ostream>
#include <string>

#include "ido/analysis.hpp"
#include "ido/ode.hpp"
#include "ido/scenario.hpp"

namespace ido {

/// Fixed 17-significant-digit rendering used for every number we emit, so a
/// double round-trips exactly and identical runs produce identical bytes.
std::string format_number(double value);

/// Trace CSV: '#' comment lines carrying the config echo, metadata and
/// metrics, one header row, then one row per (possibly decimated) grid point.
void write_trace_csv(std::ostream& out, const StateTrace& trace, const RunMetrics& metrics,
                     const std::string& config_echo, std::size_t decimate_every = 1);

/// Flat key = value report, one line per metric.
void write_metrics_report(std::ostream& out, const StateTrace& trace, const RunMetrics& metrics);

void write_drift_report(std::ostream& out, const DriftReport& report);

void write_sweep_report(std::ostream& out, const SweepReport& report);

}  // namespace ido
