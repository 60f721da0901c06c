#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ido/analysis.hpp"
#include "ido/observer.hpp"
#include "ido/ode.hpp"
#include "ido/signals.hpp"

namespace ido {

enum class ScenarioTag { SignalTracking, PidClosedLoop, DriftStudy, EpsilonSweep };

const char* to_string(ScenarioTag tag);
std::optional<ScenarioTag> scenario_from_string(const std::string& name);

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

/// Declarative description of one runnable experiment.
struct ScenarioSpec {
    ScenarioTag tag = ScenarioTag::SignalTracking;
    ObserverParams observer;
    SignalSpec signal;
    std::optional<NoiseSpec> noise;
    StepScheme scheme;
    double horizon = 0.0;      // seconds
    double settle_time = 0.0;  // metrics window start

    // PidClosedLoop only
    std::optional<PidGains> pid;
    std::vector<double> plant_initial;  // z1(0), z2(0)

    // EpsilonSweep only; strictly decreasing values in (0,1)
    std::vector<double> epsilon_sweep;
};

struct RunResult {
    StateTrace trace;
    RunMetrics metrics;
};

/// Observer driven by signal + optional noise; refs carry the exact signal
/// channels matching the observer's channel labels.
RunResult run_signal_tracking(const ScenarioSpec& spec);

/// Plant (two integrators driven by u) co-simulated with the observer fed the
/// noisy plant output; u is recomputed once per step from the observer state.
/// Combined state: [z1, z2, z1_int, x1..xn] with z1_int the exact running
/// integral of z1 used as drift-comparison truth.
RunResult run_pid_closed_loop(const ScenarioSpec& spec);

struct DriftReport {
    RunResult run;
    double observer_slope = 0.0;    // drift of the integral-estimate error
    double trapezoid_slope = 0.0;   // drift of the trapezoid baseline error
    double simpson_slope = 0.0;     // drift of the Simpson baseline error
    double expected_noise_mean = 0.0;  // gaussian_mean + amplitude * width
};

/// Signal-tracking run plus trapezoid/Simpson baselines integrated over the
/// same noisy input; the trapezoid baseline is attached to the trace as the
/// "baseline" column.
DriftReport run_drift_study(const ScenarioSpec& spec);

struct SweepEntry {
    double epsilon = 0.0;
    std::vector<std::string> diagnostics;  // nonempty when this epsilon failed validation
    std::optional<RunResult> result;
    std::vector<double> settled_sup;  // per channel, empty when invalid
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    /// Per channel: true when settled sup error strictly decreases across all
    /// valid entries (epsilon list is strictly decreasing).
    std::vector<bool> monotone_decreasing;
};

/// Runs every epsilon as an independent simulation (members execute
/// concurrently); a member that fails validation is reported and skipped.
SweepReport run_epsilon_sweep(const ScenarioSpec& spec);

/// Validated observer built from the spec (throws on diagnostics -- callers
/// that want the list use validate() directly).
ObserverConfig build_observer(const ScenarioSpec& spec);

}  // namespace ido
