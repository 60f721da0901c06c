#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace ido {

/// Analytic reference signals carrying exact closed forms for their value,
/// derivatives and zero-based integrals.
class SignalSpec;

struct CosineSignal {
    double omega = 1.0;
    double amplitude = 1.0;
};
struct ConstantSignal {
    double value = 0.0;
};
struct PolynomialSignal {
    std::vector<double> coeffs;  // ascending powers: c0 + c1 t + c2 t^2 + ...
};
struct SumSignal {
    std::vector<SignalSpec> terms;
};

enum class SignalChannel { DoubleIntegral, Integral, Value, Derivative, SecondDerivative };

const char* to_string(SignalChannel c);

class SignalSpec {
public:
    SignalSpec() : node_(ConstantSignal{0.0}) {}
    SignalSpec(CosineSignal c);      // throws std::invalid_argument when omega == 0
    SignalSpec(ConstantSignal c) : node_(c) {}
    SignalSpec(PolynomialSignal p) : node_(std::move(p)) {}
    SignalSpec(SumSignal s) : node_(std::move(s)) {}

    const std::variant<CosineSignal, ConstantSignal, PolynomialSignal, SumSignal>& node() const {
        return node_;
    }

private:
    std::variant<CosineSignal, ConstantSignal, PolynomialSignal, SumSignal> node_;
};

/// Exact evaluation of the requested channel at time t (integrals are
/// zero-based: integral(0) = 0).
double eval_signal(const SignalSpec& spec, double t, SignalChannel channel);

/// Seeded non-white disturbance: zero-order-held Gaussian samples plus a
/// periodic pulse train. Sampling is counter-based -- the value at time t is
/// a pure function of (spec, floor(t*sample_rate)) -- so evaluation order and
/// concurrency cannot change the sequence.
struct NoiseSpec {
    double gaussian_mean = 0.0;
    double gaussian_variance = 0.01;
    double pulse_amplitude = 0.5;
    double pulse_period = 1.0;         // seconds
    double pulse_width_fraction = 0.01;  // fraction of the period the pulse is high
    double pulse_phase = 0.0;          // seconds
    double sample_rate = 1000.0;       // Hz
    std::uint64_t seed = 0;

    /// Generator provenance recorded in trace metadata.
    static std::string generator_note();
};

/// Throws std::invalid_argument on an ill-formed spec (variance < 0,
/// sample_rate <= 0, pulse_period <= 0, width outside (0,1]).
void validate_noise(const NoiseSpec& spec);

double sample_noise(const NoiseSpec& spec, double t);

}  // namespace ido
