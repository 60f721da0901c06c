#include "ido/observer.hpp"

#include <cmath>
#include <stdexcept>

namespace ido {

namespace {

const VariantInfo kVariants[] = {
    {ObserverVariantTag::FoldIntegral, 2, 2, {"int_a", "a"}},
    {ObserverVariantTag::DerivIntegral, 3, 2, {"int_a", "a", "da_dt"}},
    {ObserverVariantTag::DoubleIntegral, 3, 3, {"int2_a", "int_a", "a"}},
    {ObserverVariantTag::DerivDoubleIntegral, 4, 3, {"int2_a", "int_a", "a", "da_dt"}},
};

std::vector<std::string> generic_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return labels;
}

}  // namespace

const VariantInfo& variant_info(ObserverVariantTag tag) {
    return kVariants[static_cast<int>(tag)];
}

std::optional<ObserverVariantTag> variant_for(int n, int p) {
    for (const auto& v : kVariants)
        if (v.n == n && v.p == p) return v.tag;
    return std::nullopt;
}

const char* to_string(ObserverVariantTag tag) {
    switch (tag) {
        case ObserverVariantTag::FoldIntegral: return "fold_integral";
        case ObserverVariantTag::DerivIntegral: return "deriv_integral";
        case ObserverVariantTag::DoubleIntegral: return "double_integral";
        case ObserverVariantTag::DerivDoubleIntegral: return "deriv_double_integral";
    }
    return "?";
}

std::optional<ObserverVariantTag> variant_from_string(const std::string& name) {
    for (const auto& v : kVariants)
        if (name == to_string(v.tag)) return v.tag;
    return std::nullopt;
}

ObserverConfig::ObserverConfig(ObserverParams params, ExponentChain chain, std::vector<std::string> labels)
    : params_(std::move(params)), chain_(std::move(chain)), labels_(std::move(labels)) {
    eps_pow_.resize(static_cast<std::size_t>(params_.n));
    double p = 1.0;
    for (int i = 1; i <= params_.n; ++i) {
        p *= params_.epsilon;
        eps_pow_[static_cast<std::size_t>(i) - 1] = p;
    }
    inv_eps_np1_ = 1.0 / (p * params_.epsilon);
}

ValidationResult validate(const ObserverParams& params) {
    ValidationResult result;
    auto& diag = result.diagnostics;

    const int n = params.n, p = params.p;
    bool shape_ok = true;
    if (n < 2) {
        diag.push_back("order n must be >= 2 (got " + std::to_string(n) + ")");
        shape_ok = false;
    }
    if (p < 2 || p > n) {
        diag.push_back("measurement slot p must lie in {2..n} (got p=" + std::to_string(p) + ", n=" +
                       std::to_string(n) + ")");
        shape_ok = false;
    }
    if (shape_ok && !lemma1_feasible(n, p))
        diag.push_back("infeasible (n,p)=(" + std::to_string(n) + "," + std::to_string(p) +
                       ") per Lemma 1: only (2,2), (3,2), (3,3), (4,3) admit a Hurwitz polynomial for "
                       "every epsilon in (0,1)");

    if (static_cast<int>(params.gains.size()) != n)
        diag.push_back("expected " + std::to_string(n) + " gains, got " + std::to_string(params.gains.size()));
    bool gains_positive = !params.gains.empty();
    for (std::size_t i = 0; i < params.gains.size(); ++i) {
        if (!(params.gains[i] > 0.0) || !std::isfinite(params.gains[i])) {
            diag.push_back("gain k" + std::to_string(i + 1) + " must be > 0 (got " +
                           std::to_string(params.gains[i]) + ")");
            gains_positive = false;
        }
    }

    const bool eps_ok = params.epsilon > 0.0 && params.epsilon < 1.0 && std::isfinite(params.epsilon);
    if (!eps_ok) diag.push_back("epsilon must lie in (0,1) (got " + std::to_string(params.epsilon) + ")");

    const bool alpha_ok = params.alpha_n > 0.0 && params.alpha_n <= 1.0;
    if (!alpha_ok)
        diag.push_back("terminal exponent alpha_n must lie in (0,1] (got " + std::to_string(params.alpha_n) + ")");

    if (static_cast<int>(params.initial_state.size()) != n)
        diag.push_back("initial_state must have " + std::to_string(n) + " entries, got " +
                       std::to_string(params.initial_state.size()));

    // The remaining checks need a well-formed shape.
    if (!shape_ok || !alpha_ok || !eps_ok || !gains_positive ||
        static_cast<int>(params.gains.size()) != n) {
        return result;
    }

    const ExponentChain chain(n, params.alpha_n);
    const auto& k = params.gains;
    const double eps = params.epsilon;

    // Gain inequalities from the per-shape Hurwitz conditions.
    if (n == 3 && p == 2) {
        const double bound = std::pow(eps, 2.0 * chain.alpha(2)) * k[0] / k[2];
        if (!(k[1] > bound))
            diag.push_back("gain inequality violated for (3,2): require k2 > eps^(2*alpha2)*k1/k3 = " +
                           std::to_string(bound));
    } else if (n == 3 && p == 3) {
        const double bound = std::pow(eps, 3.0 * chain.alpha(3)) * k[0] / k[2];
        if (!(k[1] > bound))
            diag.push_back("gain inequality violated for (3,3): require k2 > eps^(3*alpha3)*k1/k3 = " +
                           std::to_string(bound));
    } else if (n == 4 && p == 3) {
        const double scale = std::pow(eps, 3.0 * chain.alpha(3));
        const double bound3 = scale * k[1] / k[3];
        if (!(k[2] > bound3))
            diag.push_back("gain inequality violated for (4,3): require k3 > eps^(3*alpha3)*k2/k4 = " +
                           std::to_string(bound3));
        const double bound2 = scale * (k[3] * k[3] * k[0] + k[1] * k[1]) / (k[3] * k[2]);
        if (!(k[1] > bound2))
            diag.push_back(
                "gain inequality violated for (4,3): require k2 > eps^(3*alpha3)*(k4^2*k1+k2^2)/(k4*k3) = " +
                std::to_string(bound2));
    }
    // (2,2) needs positivity only.

    if (lemma1_feasible(n, p)) {
        const auto poly = observer_char_poly(n, p, k, eps, chain.alpha(p));
        const auto table = routh_hurwitz(poly);
        if (table.verdict != StabilityVerdict::Hurwitz)
            diag.push_back(std::string("characteristic polynomial is not Hurwitz (verdict ") +
                           to_string(table.verdict) + ")");
    }

    if (!diag.empty()) return result;

    auto labels = generic_labels(n);
    if (const auto tag = variant_for(n, p)) labels = variant_info(*tag).labels;
    result.config = ObserverConfig(params, chain, std::move(labels));
    return result;
}

ValidationResult make_variant(ObserverVariantTag tag, std::vector<double> gains, double epsilon,
                              double alpha_n, std::vector<double> initial_state) {
    const auto& info = variant_info(tag);
    ObserverParams params;
    params.n = info.n;
    params.p = info.p;
    params.gains = std::move(gains);
    params.epsilon = epsilon;
    params.alpha_n = alpha_n;
    params.initial_state = std::move(initial_state);
    return validate(params);
}

std::vector<double> observer_char_poly(const ObserverConfig& config) {
    return observer_char_poly(config.n(), config.p(), config.gains(), config.epsilon(),
                              config.chain().alpha(config.p()));
}

void observer_rhs(const ObserverConfig& config, std::span<const double> state, double measurement,
                  std::span<double> dxdt) {
    const int n = config.n();
    const int p = config.p();
    if (static_cast<int>(state.size()) != n || static_cast<int>(dxdt.size()) != n)
        throw std::invalid_argument("observer_rhs: state width mismatch");

    for (int i = 0; i + 1 < n; ++i) dxdt[static_cast<std::size_t>(i)] = state[static_cast<std::size_t>(i) + 1];

    const auto& k = config.gains();
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
        if (i == p) continue;
        // |eps^i x_i|^alpha_i sign(x_i); eps^i > 0 so the sign carries over
        acc -= k[static_cast<std::size_t>(i) - 1] *
               power_sign(config.epsilon_pow(i) * state[static_cast<std::size_t>(i) - 1],
                          config.chain().alpha(i));
    }
    acc -= k[static_cast<std::size_t>(p) - 1] *
           power_sign(state[static_cast<std::size_t>(p) - 1] - measurement, config.chain().alpha(p));
    dxdt[static_cast<std::size_t>(n) - 1] = acc * config.stiffness();
}

std::vector<double> observer_rhs(const ObserverConfig& config, std::span<const double> state,
                                 double measurement) {
    std::vector<double> dxdt(state.size());
    observer_rhs(config, state, measurement, dxdt);
    return dxdt;
}

}  // namespace ido
