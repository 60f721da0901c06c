#include "ido/scenario.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace ido {

const char* to_string(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::SignalTracking: return "signal_tracking";
        case ScenarioTag::PidClosedLoop: return "pid_closed_loop";
        case ScenarioTag::DriftStudy: return "drift_study";
        case ScenarioTag::EpsilonSweep: return "epsilon_sweep";
    }
    return "?";
}

std::optional<ScenarioTag> scenario_from_string(const std::string& name) {
    for (auto tag : {ScenarioTag::SignalTracking, ScenarioTag::PidClosedLoop, ScenarioTag::DriftStudy,
                     ScenarioTag::EpsilonSweep})
        if (name == to_string(tag)) return tag;
    return std::nullopt;
}

namespace {

/// Exact signal channel supplying the truth for observer state i (1-based):
/// (p-i)-fold integral below the slot, the value at it, derivatives above.
SignalChannel truth_channel(int i, int p) {
    switch (p - i) {
        case 2: return SignalChannel::DoubleIntegral;
        case 1: return SignalChannel::Integral;
        case 0: return SignalChannel::Value;
        case -1: return SignalChannel::Derivative;
        default:
            throw std::invalid_argument("no exact truth channel for state " + std::to_string(i) +
                                        " with measurement slot " + std::to_string(p));
    }
}

std::string scheme_meta(const ScenarioSpec& spec, const ObserverConfig& config) {
    std::string meta = std::string("scheme: ") + to_string(spec.scheme.method) +
                       ", dt=" + std::to_string(spec.scheme.dt);
    if (spec.noise) meta += "; " + NoiseSpec::generator_note();
    // The stiffness cap is advisory: flag it in the trace metadata, never enforce.
    if (spec.scheme.dt > config.suggested_max_dt())
        meta += "; warning: dt exceeds suggested cap epsilon^(n+1)/10 = " +
                std::to_string(config.suggested_max_dt());
    return meta;
}

}  // namespace

ObserverConfig build_observer(const ScenarioSpec& spec) {
    auto result = validate(spec.observer);
    if (!result.ok()) {
        std::string msg = "observer config invalid:";
        for (const auto& d : result.diagnostics) msg += "\n  - " + d;
        throw std::invalid_argument(msg);
    }
    return *std::move(result.config);
}

RunResult run_signal_tracking(const ScenarioSpec& spec) {
    const ObserverConfig config = build_observer(spec);
    const int n = config.n();
    const int p = config.p();

    if (spec.noise) validate_noise(*spec.noise);

    SimSpec sim;
    sim.scheme = spec.scheme;
    sim.t0 = 0.0;
    sim.t_end = spec.horizon;
    sim.x0 = config.initial_state();
    sim.labels = config.labels();
    sim.meta = scheme_meta(spec, config);

    const SignalSpec signal = spec.signal;
    const std::optional<NoiseSpec> noise = spec.noise;
    sim.measurement = [signal, noise](double t, std::span<const double>) {
        double a = eval_signal(signal, t, SignalChannel::Value);
        if (noise) a += sample_noise(*noise, t);
        return a;
    };
    sim.rhs = [config](double, std::span<const double> x, const HeldInputs& held,
                       std::span<double> dxdt) { observer_rhs(config, x, held.measurement, dxdt); };
    sim.reference = [signal, n, p](double t, std::span<double> ref) {
        for (int i = 1; i <= n; ++i)
            ref[static_cast<std::size_t>(i) - 1] = eval_signal(signal, t, truth_channel(i, p));
    };

    RunResult result{simulate(sim), {}};
    result.metrics = compute_metrics(result.trace, spec.settle_time);
    return result;
}

RunResult run_pid_closed_loop(const ScenarioSpec& spec) {
    if (!spec.pid) throw std::invalid_argument("pid_closed_loop: missing pid gains");
    if (spec.plant_initial.size() != 2)
        throw std::invalid_argument("pid_closed_loop: plant_initial must hold z1(0), z2(0)");

    const ObserverConfig config = build_observer(spec);
    if (config.n() != 3 || config.p() != 2)
        throw std::invalid_argument("pid_closed_loop: observer must be the (n=3, p=2) shape "
                                    "(integral, value, derivative of the plant output)");
    if (spec.noise) validate_noise(*spec.noise);

    const SignalSpec ref_traj = spec.signal;  // z_d
    const PidGains pid = *spec.pid;
    const std::optional<NoiseSpec> noise = spec.noise;

    // Combined state: plant (z1, z2), exact integral channel, observer (x1..x3).
    SimSpec sim;
    sim.scheme = spec.scheme;
    sim.t0 = 0.0;
    sim.t_end = spec.horizon;
    sim.x0 = {spec.plant_initial[0], spec.plant_initial[1], 0.0};
    sim.x0.insert(sim.x0.end(), config.initial_state().begin(), config.initial_state().end());
    sim.labels = {"z1", "z2", "z1_int", "x1", "x2", "x3"};
    sim.meta = scheme_meta(spec, config);

    sim.measurement = [noise](double t, std::span<const double> x) {
        double y = x[0];
        if (noise) y += sample_noise(*noise, t);
        return y;
    };
    sim.extras.emplace_back("u", [ref_traj, pid](double t, std::span<const double> x) {
        const double e1_hat = x[3] - eval_signal(ref_traj, t, SignalChannel::Integral);
        const double e2_hat = x[4] - eval_signal(ref_traj, t, SignalChannel::Value);
        const double e3_hat = x[5] - eval_signal(ref_traj, t, SignalChannel::Derivative);
        return pid.kp * e2_hat + pid.ki * e1_hat + pid.kd * e3_hat +
               eval_signal(ref_traj, t, SignalChannel::SecondDerivative);
    });
    sim.rhs = [config](double, std::span<const double> x, const HeldInputs& held, std::span<double> dxdt) {
        dxdt[0] = x[1];
        dxdt[1] = held.extras[0];  // u, held per step
        dxdt[2] = x[0];            // exact running integral of z1
        observer_rhs(config, x.subspan(3), held.measurement, dxdt.subspan(3));
    };
    sim.reference = [ref_traj](double t, std::span<double> ref) {
        const double zd = eval_signal(ref_traj, t, SignalChannel::Value);
        const double zd_dot = eval_signal(ref_traj, t, SignalChannel::Derivative);
        const double zd_int = eval_signal(ref_traj, t, SignalChannel::Integral);
        ref[0] = zd;
        ref[1] = zd_dot;
        ref[2] = zd_int;
        ref[3] = zd_int;
        ref[4] = zd;
        ref[5] = zd_dot;
    };

    RunResult result{simulate(sim), {}};
    // Trapezoid of the noisy measurement, the classical integrator this
    // scenario is compared against.
    result.trace.add_extra_column(
        "baseline", cumulative_trapezoid(result.trace.times(), result.trace.inputs()));
    result.metrics = compute_metrics(result.trace, spec.settle_time);
    return result;
}

DriftReport run_drift_study(const ScenarioSpec& spec) {
    DriftReport report;
    report.run = run_signal_tracking(spec);

    StateTrace& trace = report.run.trace;
    const auto trap = cumulative_trapezoid(trace.times(), trace.inputs());
    const auto simp = cumulative_simpson(trace.times(), trace.inputs());

    // All three integrators are judged against the same exact truth: the
    // integral channel of the clean signal (observer channel p-1).
    const ObserverConfig config = build_observer(spec);
    const auto integral_ch = static_cast<std::size_t>(config.p() - 1) - 1;

    const auto times = trace.times();
    const auto first = std::lower_bound(times.begin(), times.end(), spec.settle_time);
    const auto k0 = static_cast<std::size_t>(first - times.begin());
    const std::size_t count = trace.size() - k0;
    std::vector<double> twin(times.begin() + static_cast<std::ptrdiff_t>(k0), times.end());

    std::vector<double> err(count);
    for (std::size_t k = 0; k < count; ++k) err[k] = trace.error(k0 + k, integral_ch);
    report.observer_slope = fit_line(twin, err).slope;

    for (std::size_t k = 0; k < count; ++k) err[k] = trap[k0 + k] - trace.ref(k0 + k, integral_ch);
    report.trapezoid_slope = fit_line(twin, err).slope;

    for (std::size_t k = 0; k < count; ++k) err[k] = simp[k0 + k] - trace.ref(k0 + k, integral_ch);
    report.simpson_slope = fit_line(twin, err).slope;

    if (spec.noise)
        report.expected_noise_mean =
            spec.noise->gaussian_mean + spec.noise->pulse_amplitude * spec.noise->pulse_width_fraction;

    trace.add_extra_column("baseline", trap);
    return report;
}

SweepReport run_epsilon_sweep(const ScenarioSpec& spec) {
    if (spec.epsilon_sweep.empty()) throw std::invalid_argument("epsilon_sweep: empty epsilon list");
    for (std::size_t i = 0; i < spec.epsilon_sweep.size(); ++i) {
        const double e = spec.epsilon_sweep[i];
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("epsilon_sweep: values must lie in (0,1)");
        if (i > 0 && !(e < spec.epsilon_sweep[i - 1]))
            throw std::invalid_argument("epsilon_sweep: values must be strictly decreasing");
    }

    SweepReport report;
    report.entries.resize(spec.epsilon_sweep.size());

    auto run_member = [&spec](double epsilon) {
        SweepEntry entry;
        entry.epsilon = epsilon;
        ScenarioSpec member = spec;
        member.tag = ScenarioTag::SignalTracking;
        member.observer.epsilon = epsilon;
        auto validation = validate(member.observer);
        if (!validation.ok()) {
            entry.diagnostics = validation.diagnostics;
            return entry;
        }
        entry.result = run_signal_tracking(member);
        for (const auto& ch : entry.result->metrics.channels) entry.settled_sup.push_back(ch.sup_error);
        return entry;
    };

    // Independent simulations; results land in fixed slots so output order
    // never depends on scheduling.
    std::vector<std::future<SweepEntry>> futures;
    futures.reserve(spec.epsilon_sweep.size());
    for (double e : spec.epsilon_sweep)
        futures.push_back(std::async(std::launch::async, run_member, e));
    for (std::size_t i = 0; i < futures.size(); ++i) report.entries[i] = futures[i].get();

    std::size_t width = 0;
    for (const auto& entry : report.entries)
        if (entry.result) width = std::max(width, entry.settled_sup.size());
    report.monotone_decreasing.assign(width, true);
    for (std::size_t ch = 0; ch < width; ++ch) {
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& entry : report.entries) {
            if (!entry.result) continue;
            if (!(entry.settled_sup[ch] < prev)) report.monotone_decreasing[ch] = false;
            prev = entry.settled_sup[ch];
        }
    }
    return report;
}

}  // namespace ido
