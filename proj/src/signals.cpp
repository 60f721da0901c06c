#include "ido/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ido {

const char* to_string(SignalChannel c) {
    switch (c) {
        case SignalChannel::DoubleIntegral: return "double_integral";
        case SignalChannel::Integral: return "integral";
        case SignalChannel::Value: return "value";
        case SignalChannel::Derivative: return "derivative";
        case SignalChannel::SecondDerivative: return "second_derivative";
    }
    return "?";
}

SignalSpec::SignalSpec(CosineSignal c) : node_(c) {
    if (c.omega == 0.0)
        throw std::invalid_argument("cosine signal: omega must be nonzero (use a constant signal instead)");
}

namespace {

double eval_cosine(const CosineSignal& s, double t, SignalChannel ch) {
    const double w = s.omega, A = s.amplitude;
    switch (ch) {
        case SignalChannel::Value: return A * std::cos(w * t);
        case SignalChannel::Derivative: return -A * w * std::sin(w * t);
        case SignalChannel::SecondDerivative: return -A * w * w * std::cos(w * t);
        case SignalChannel::Integral: return A / w * std::sin(w * t);
        case SignalChannel::DoubleIntegral: return A / (w * w) * (1.0 - std::cos(w * t));
    }
    return 0.0;
}

double eval_constant(const ConstantSignal& s, double t, SignalChannel ch) {
    switch (ch) {
        case SignalChannel::Value: return s.value;
        case SignalChannel::Derivative:
        case SignalChannel::SecondDerivative: return 0.0;
        case SignalChannel::Integral: return s.value * t;
        case SignalChannel::DoubleIntegral: return 0.5 * s.value * t * t;
    }
    return 0.0;
}

double eval_polynomial(const PolynomialSignal& s, double t, SignalChannel ch) {
    // Horner over the transformed coefficient sequence for each channel.
    const auto& c = s.coeffs;
    const int m = static_cast<int>(c.size());
    double acc = 0.0;
    switch (ch) {
        case SignalChannel::Value:
            for (int i = m - 1; i >= 0; --i) acc = acc * t + c[static_cast<std::size_t>(i)];
            return acc;
        case SignalChannel::Derivative:
            for (int i = m - 1; i >= 1; --i) acc = acc * t + i * c[static_cast<std::size_t>(i)];
            return acc;
        case SignalChannel::SecondDerivative:
            for (int i = m - 1; i >= 2; --i)
                acc = acc * t + static_cast<double>(i) * (i - 1) * c[static_cast<std::size_t>(i)];
            return acc;
        case SignalChannel::Integral:
            for (int i = m - 1; i >= 0; --i) acc = acc * t + c[static_cast<std::size_t>(i)] / (i + 1);
            return acc * t;
        case SignalChannel::DoubleIntegral:
            for (int i = m - 1; i >= 0; --i)
                acc = acc * t + c[static_cast<std::size_t>(i)] / ((i + 1) * (i + 2));
            return acc * t * t;
    }
    return 0.0;
}

}  // namespace

double eval_signal(const SignalSpec& spec, double t, SignalChannel channel) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, CosineSignal>) return eval_cosine(node, t, channel);
            if constexpr (std::is_same_v<T, ConstantSignal>) return eval_constant(node, t, channel);
            if constexpr (std::is_same_v<T, PolynomialSignal>) return eval_polynomial(node, t, channel);
            if constexpr (std::is_same_v<T, SumSignal>) {
                double acc = 0.0;
                for (const auto& term : node.terms) acc += eval_signal(term, t, channel);
                return acc;
            }
        },
        spec.node());
}

namespace {

// splitmix64 finalizer; the sample value is a pure function of (seed, counter).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// uniform in (0, 1]
double to_unit(std::uint64_t h) { return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53; }

double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
    const double u1 = to_unit(counter_hash(seed, 2 * index));
    const double u2 = to_unit(counter_hash(seed, 2 * index + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// floored modulo, result in [0, period)
double time_mod(double x, double period) {
    const double r = std::fmod(x, period);
    return r < 0.0 ? r + period : r;
}

}  // namespace

std::string NoiseSpec::generator_note() {
    return "noise: splitmix64 counter hash of (seed, sample index) -> Box-Muller; zero-order hold";
}

void validate_noise(const NoiseSpec& spec) {
    if (spec.gaussian_variance < 0.0) throw std::invalid_argument("noise: gaussian_variance must be >= 0");
    if (!(spec.sample_rate > 0.0)) throw std::invalid_argument("noise: sample_rate must be > 0");
    if (!(spec.pulse_period > 0.0)) throw std::invalid_argument("noise: pulse_period must be > 0");
    if (!(spec.pulse_width_fraction > 0.0) || spec.pulse_width_fraction > 1.0)
        throw std::invalid_argument("noise: pulse_width_fraction must lie in (0, 1]");
}

double sample_noise(const NoiseSpec& spec, double t) {
    // Snap to the sample grid; the small nudge keeps boundary times t = k/rate
    // on sample k despite the division/multiplication round trip.
    const auto index = static_cast<std::uint64_t>(std::floor(t * spec.sample_rate + 1e-9));
    const double t_sample = static_cast<double>(index) / spec.sample_rate;

    double value = spec.gaussian_mean;
    if (spec.gaussian_variance > 0.0)
        value += std::sqrt(spec.gaussian_variance) * gaussian_sample(spec.seed, index);

    if (spec.pulse_amplitude != 0.0) {
        const double phase = time_mod(t_sample - spec.pulse_phase, spec.pulse_period);
        if (phase < spec.pulse_width_fraction * spec.pulse_period) value += spec.pulse_amplitude;
    }
    return value;
}

}  // namespace ido
