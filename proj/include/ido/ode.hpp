#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ido {

enum class StepMethod { Euler, RK4 };

struct StepScheme {
    StepMethod method = StepMethod::RK4;
    double dt = 1e-3;
};

const char* to_string(StepMethod m);

/// Thrown by step() when an update produces a non-finite component; simulate()
/// reports the same condition through the trace's diverged flag instead.
class IntegrationDiverged : public std::runtime_error {
public:
    IntegrationDiverged(double t, std::vector<double> state);
    double time() const { return t_; }
    const std::vector<double>& state() const { return state_; }

private:
    double t_;
    std::vector<double> state_;
};

/// One explicit step of dx/dt = rhs(t, x). rhs writes the derivative into its
/// third argument. Deterministic: identical inputs give bit-identical output.
using StepRhs = std::function<void(double, std::span<const double>, std::span<double>)>;
std::vector<double> step(const StepScheme& scheme, const StepRhs& rhs, double t,
                         std::span<const double> state);

/// Uniform-grid record of a simulation: states, reference truth, the held
/// measurement sample and named auxiliary channels, one row per grid time.
/// Storage is flat row-major; rows are never dropped during integration.
class StateTrace {
public:
    StateTrace() = default;
    StateTrace(std::size_t width, std::vector<std::string> labels, bool has_refs, bool has_input,
               std::vector<std::string> extra_names);

    std::size_t size() const { return times_.size(); }
    std::size_t width() const { return width_; }
    bool has_refs() const { return has_refs_; }
    bool has_input() const { return has_input_; }

    std::span<const double> times() const { return times_; }
    double time(std::size_t k) const { return times_[k]; }
    double state(std::size_t k, std::size_t ch) const { return states_[k * width_ + ch]; }
    double ref(std::size_t k, std::size_t ch) const { return refs_[k * width_ + ch]; }
    double error(std::size_t k, std::size_t ch) const { return state(k, ch) - ref(k, ch); }
    double input(std::size_t k) const { return inputs_[k]; }

    std::vector<double> state_column(std::size_t ch) const;
    std::vector<double> ref_column(std::size_t ch) const;
    std::vector<double> error_column(std::size_t ch) const;
    std::span<const double> inputs() const { return inputs_; }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& extra_names() const { return extra_names_; }
    std::span<const double> extra(const std::string& name) const;
    bool has_extra(const std::string& name) const;
    /// Attaches a post-run derived column (e.g. a quadrature baseline).
    void add_extra_column(const std::string& name, std::vector<double> values);

    void reserve(std::size_t rows);
    void append(double t, std::span<const double> state, std::span<const double> ref, double input,
                std::span<const double> extras);

    bool diverged = false;
    double diverged_at = 0.0;
    std::string meta;  // free-form provenance (noise generator, scheme, ...)

private:
    std::size_t width_ = 0;
    bool has_refs_ = false;
    bool has_input_ = false;
    std::size_t n_sampled_extras_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::string> extra_names_;
    std::vector<double> times_, states_, refs_, inputs_;
    std::vector<std::vector<double>> extras_;
};

/// Per-step held inputs, sampled once per step and constant through the stage
/// evaluations: the measurement at the step midpoint (second-order hold error
/// on smooth signals), named channels such as a control at the step start.
struct HeldInputs {
    double measurement = 0.0;
    std::span<const double> extras;
};

struct SimSpec {
    StepScheme scheme;
    double t0 = 0.0;
    double t_end = 0.0;
    std::vector<double> x0;
    std::vector<std::string> labels;

    std::function<void(double, std::span<const double>, const HeldInputs&, std::span<double>)> rhs;
    /// Measurement sampler (may read the step-start state, e.g. a plant output).
    std::function<double(double, std::span<const double>)> measurement;
    /// Named held channels (e.g. a control input recomputed once per step).
    std::vector<std::pair<std::string, std::function<double(double, std::span<const double>)>>> extras;
    /// Reference truth for every channel at a grid time; optional.
    std::function<void(double, std::span<double>)> reference;

    std::string meta;
};

/// Fixed-step integration over the uniform grid t0 + k*dt. The horizon is
/// rounded to the nearest whole number of steps; grid times are computed by
/// multiplication. A non-finite state stops integration and returns the
/// partial trace with the diverged flag set.
StateTrace simulate(const SimSpec& spec);

}  // namespace ido
