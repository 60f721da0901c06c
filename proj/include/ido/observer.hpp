#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ido/stability.hpp"

namespace ido {

/// The four observer shapes admitted by the feasibility set, named by what
/// their state channels estimate.
enum class ObserverVariantTag { FoldIntegral, DerivIntegral, DoubleIntegral, DerivDoubleIntegral };

struct VariantInfo {
    ObserverVariantTag tag;
    int n;
    int p;
    std::vector<std::string> labels;  // semantic meaning of each state channel
};

const VariantInfo& variant_info(ObserverVariantTag tag);
std::optional<ObserverVariantTag> variant_for(int n, int p);
const char* to_string(ObserverVariantTag tag);
std::optional<ObserverVariantTag> variant_from_string(const std::string& name);

/// Raw observer parameters as they arrive from a config document; validate()
/// turns them into an ObserverConfig or a complete diagnostic list.
struct ObserverParams {
    int n = 0;
    int p = 0;
    std::vector<double> gains;          // k_1..k_n
    double epsilon = 0.0;               // in (0,1)
    double alpha_n = 0.0;               // terminal exponent, in (0,1]
    std::vector<double> initial_state;  // n entries
};

class ObserverConfig;
struct ValidationResult;
ValidationResult validate(const ObserverParams& params);

/// Immutable, fully validated observer configuration. Construction goes
/// through validate()/make_variant() only.
class ObserverConfig {
public:
    int n() const { return params_.n; }
    int p() const { return params_.p; }
    const std::vector<double>& gains() const { return params_.gains; }
    double epsilon() const { return params_.epsilon; }
    double alpha_n() const { return params_.alpha_n; }
    const std::vector<double>& initial_state() const { return params_.initial_state; }
    const ExponentChain& chain() const { return chain_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const ObserverParams& params() const { return params_; }

    /// epsilon^i for i = 1..n (1-based).
    double epsilon_pow(int i) const { return eps_pow_[static_cast<std::size_t>(i) - 1]; }
    /// epsilon^-(n+1), the stiffness factor multiplying the last channel.
    double stiffness() const { return inv_eps_np1_; }
    /// Suggested integrator cap dt <= epsilon^(n+1)/10 (advisory; the engine
    /// warns but does not enforce).
    double suggested_max_dt() const { return 0.1 / inv_eps_np1_; }

private:
    friend ValidationResult validate(const ObserverParams&);
    ObserverConfig(ObserverParams params, ExponentChain chain, std::vector<std::string> labels);

    ObserverParams params_;
    ExponentChain chain_;
    std::vector<std::string> labels_;
    std::vector<double> eps_pow_;
    double inv_eps_np1_ = 0.0;
};

/// Result of validate(): either a config, or every violated condition (not
/// just the first). validate() checks feasibility (Lemma 1 set), gain
/// positivity, the per-shape gain inequality, the epsilon/alpha ranges, and
/// the Hurwitz verdict of the scaled characteristic polynomial.
struct ValidationResult {
    std::optional<ObserverConfig> config;
    std::vector<std::string> diagnostics;
    bool ok() const { return config.has_value(); }
};

/// Builds a config for one of the four named shapes; (n, p) come from the tag.
ValidationResult make_variant(ObserverVariantTag tag, std::vector<double> gains, double epsilon,
                              double alpha_n, std::vector<double> initial_state);

std::vector<double> observer_char_poly(const ObserverConfig& config);

/// Right-hand side of the observer ODE driven by the measurement sample:
/// dx_i = x_{i+1} for i < n, and the last channel collects the scaled
/// power-sign corrections. Continuous in state and measurement; writes into
/// dxdt (size n).
void observer_rhs(const ObserverConfig& config, std::span<const double> state, double measurement,
                  std::span<double> dxdt);
std::vector<double> observer_rhs(const ObserverConfig& config, std::span<const double> state,
                                 double measurement);

}  // namespace ido
