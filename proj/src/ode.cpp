#include "ido/ode.hpp"

#include <algorithm>
#include <cmath>

namespace ido {

const char* to_string(StepMethod m) {
    switch (m) {
        case StepMethod::Euler: return "euler";
        case StepMethod::RK4: return "rk4";
    }
    return "?";
}

IntegrationDiverged::IntegrationDiverged(double t, std::vector<double> state)
    : std::runtime_error("integration diverged at t=" + std::to_string(t)),
      t_(t),
      state_(std::move(state)) {}

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void validate_scheme(const StepScheme& scheme) {
    if (!(scheme.dt > 0.0) || !std::isfinite(scheme.dt))
        throw std::invalid_argument("step scheme: dt must be positive and finite");
}

/// Workspace for allocation-free stepping.
struct StepBuffers {
    std::vector<double> k1, k2, k3, k4, tmp;
    explicit StepBuffers(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
};

template <typename Rhs>
void step_into(const StepScheme& scheme, Rhs&& rhs, double t, std::span<const double> x,
               StepBuffers& buf, std::span<double> out) {
    const double dt = scheme.dt;
    const std::size_t n = x.size();
    switch (scheme.method) {
        case StepMethod::Euler:
            rhs(t, x, buf.k1);
            for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt * buf.k1[i];
            return;
        case StepMethod::RK4:
            rhs(t, x, buf.k1);
            for (std::size_t i = 0; i < n; ++i) buf.tmp[i] = x[i] + 0.5 * dt * buf.k1[i];
            rhs(t + 0.5 * dt, buf.tmp, buf.k2);
            for (std::size_t i = 0; i < n; ++i) buf.tmp[i] = x[i] + 0.5 * dt * buf.k2[i];
            rhs(t + 0.5 * dt, buf.tmp, buf.k3);
            for (std::size_t i = 0; i < n; ++i) buf.tmp[i] = x[i] + dt * buf.k3[i];
            rhs(t + dt, buf.tmp, buf.k4);
            for (std::size_t i = 0; i < n; ++i)
                out[i] = x[i] + dt / 6.0 * (buf.k1[i] + 2.0 * buf.k2[i] + 2.0 * buf.k3[i] + buf.k4[i]);
            return;
    }
}

}  // namespace

std::vector<double> step(const StepScheme& scheme, const StepRhs& rhs, double t,
                         std::span<const double> state) {
    validate_scheme(scheme);
    StepBuffers buf(state.size());
    std::vector<double> out(state.size());
    step_into(scheme, rhs, t, state, buf, out);
    if (!all_finite(out)) throw IntegrationDiverged(t + scheme.dt, out);
    return out;
}

StateTrace::StateTrace(std::size_t width, std::vector<std::string> labels, bool has_refs,
                       bool has_input, std::vector<std::string> extra_names)
    : width_(width),
      has_refs_(has_refs),
      has_input_(has_input),
      n_sampled_extras_(extra_names.size()),
      labels_(std::move(labels)),
      extra_names_(std::move(extra_names)),
      extras_(extra_names_.size()) {
    if (labels_.size() != width_) {
        labels_.clear();
        for (std::size_t i = 1; i <= width_; ++i) labels_.push_back("x" + std::to_string(i));
    }
}

std::vector<double> StateTrace::state_column(std::size_t ch) const {
    std::vector<double> col(size());
    for (std::size_t k = 0; k < size(); ++k) col[k] = state(k, ch);
    return col;
}

std::vector<double> StateTrace::ref_column(std::size_t ch) const {
    std::vector<double> col(size());
    for (std::size_t k = 0; k < size(); ++k) col[k] = ref(k, ch);
    return col;
}

std::vector<double> StateTrace::error_column(std::size_t ch) const {
    std::vector<double> col(size());
    for (std::size_t k = 0; k < size(); ++k) col[k] = error(k, ch);
    return col;
}

std::span<const double> StateTrace::extra(const std::string& name) const {
    for (std::size_t i = 0; i < extra_names_.size(); ++i)
        if (extra_names_[i] == name) return extras_[i];
    throw std::out_of_range("StateTrace: no extra channel named '" + name + "'");
}

bool StateTrace::has_extra(const std::string& name) const {
    return std::find(extra_names_.begin(), extra_names_.end(), name) != extra_names_.end();
}

void StateTrace::add_extra_column(const std::string& name, std::vector<double> values) {
    if (values.size() != size())
        throw std::invalid_argument("StateTrace: extra column length must match the trace");
    extra_names_.push_back(name);
    extras_.push_back(std::move(values));
}

void StateTrace::reserve(std::size_t rows) {
    times_.reserve(rows);
    states_.reserve(rows * width_);
    if (has_refs_) refs_.reserve(rows * width_);
    if (has_input_) inputs_.reserve(rows);
    for (std::size_t i = 0; i < n_sampled_extras_; ++i) extras_[i].reserve(rows);
}

void StateTrace::append(double t, std::span<const double> state, std::span<const double> ref,
                        double input, std::span<const double> extras) {
    times_.push_back(t);
    states_.insert(states_.end(), state.begin(), state.end());
    if (has_refs_) refs_.insert(refs_.end(), ref.begin(), ref.end());
    if (has_input_) inputs_.push_back(input);
    for (std::size_t i = 0; i < n_sampled_extras_; ++i) extras_[i].push_back(extras[i]);
}

StateTrace simulate(const SimSpec& spec) {
    validate_scheme(spec.scheme);
    if (!(spec.t_end > spec.t0)) throw std::invalid_argument("simulate: t_end must exceed t0");
    if (spec.x0.empty()) throw std::invalid_argument("simulate: empty initial state");
    if (!spec.rhs) throw std::invalid_argument("simulate: missing rhs");

    const double dt = spec.scheme.dt;
    const long long steps = std::llround((spec.t_end - spec.t0) / dt);
    if (steps < 1) throw std::invalid_argument("simulate: horizon shorter than one step");

    const std::size_t width = spec.x0.size();
    std::vector<std::string> extra_names;
    for (const auto& [name, fn] : spec.extras) extra_names.push_back(name);

    StateTrace trace(width, spec.labels, static_cast<bool>(spec.reference),
                     static_cast<bool>(spec.measurement), extra_names);
    trace.meta = spec.meta;
    trace.reserve(static_cast<std::size_t>(steps) + 1);

    std::vector<double> x = spec.x0;
    std::vector<double> xnext(width), refbuf(width, 0.0), held(spec.extras.size());
    StepBuffers buf(width);

    HeldInputs inputs;
    inputs.extras = held;

    for (long long k = 0;; ++k) {
        const double t = spec.t0 + static_cast<double>(k) * dt;

        // One measurement sample per step, held through the stages. Sampling
        // at the step midpoint keeps the hold error second order in dt for
        // smooth signals; stochastic samplers snap to their own grid anyway.
        inputs.measurement = spec.measurement ? spec.measurement(t + 0.5 * dt, x) : 0.0;
        for (std::size_t j = 0; j < spec.extras.size(); ++j) held[j] = spec.extras[j].second(t, x);
        if (spec.reference) spec.reference(t, refbuf);
        trace.append(t, x, refbuf, inputs.measurement, held);

        if (k == steps) break;

        step_into(
            spec.scheme,
            [&](double ts, std::span<const double> xs, std::span<double> dx) {
                spec.rhs(ts, xs, inputs, dx);
            },
            t, x, buf, xnext);

        if (!all_finite(xnext)) {
            trace.diverged = true;
            trace.diverged_at = spec.t0 + static_cast<double>(k + 1) * dt;
            break;
        }
        x.swap(xnext);
    }

    return trace;
}

}  // namespace ido
