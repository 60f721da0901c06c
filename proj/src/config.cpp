#include "ido/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace ido {

using nlohmann::json;

namespace {

class FieldReader {
public:
    FieldReader(const json& doc, std::string prefix, std::vector<std::string>& errors)
        : doc_(doc), prefix_(std::move(prefix)), errors_(errors) {}

    bool has(const std::string& key) const { return doc_.contains(key); }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!doc_.contains(key)) {
            if (fallback) return *fallback;
            fail(key, "missing required number");
            return 0.0;
        }
        if (!doc_[key].is_number()) {
            fail(key, "expected a number");
            return 0.0;
        }
        return doc_[key].get<double>();
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
        if (!doc_.contains(key)) {
            if (fallback) return *fallback;
            fail(key, "missing required integer");
            return 0;
        }
        if (!doc_[key].is_number_integer()) {
            fail(key, "expected an integer");
            return 0;
        }
        return doc_[key].get<int>();
    }

    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        if (!doc_.contains(key)) {
            if (fallback) return *fallback;
            fail(key, "missing required string");
            return {};
        }
        if (!doc_[key].is_string()) {
            fail(key, "expected a string");
            return {};
        }
        return doc_[key].get<std::string>();
    }

    std::vector<double> number_list(const std::string& key, bool required) {
        if (!doc_.contains(key)) {
            if (required) fail(key, "missing required number list");
            return {};
        }
        if (!doc_[key].is_array()) {
            fail(key, "expected a list of numbers");
            return {};
        }
        std::vector<double> out;
        for (const auto& item : doc_[key]) {
            if (!item.is_number()) {
                fail(key, "expected a list of numbers");
                return {};
            }
            out.push_back(item.get<double>());
        }
        return out;
    }

    void fail(const std::string& key, const std::string& what) {
        errors_.push_back(prefix_ + key + ": " + what);
    }

private:
    const json& doc_;
    std::string prefix_;
    std::vector<std::string>& errors_;
};

SignalSpec parse_signal(const json& doc, const std::string& prefix, std::vector<std::string>& errors) {
    if (!doc.is_object()) {
        errors.push_back(prefix + ": expected an object");
        return {};
    }
    FieldReader r(doc, prefix + ".", errors);
    const std::string type = r.text("type");
    try {
        if (type == "cosine")
            return SignalSpec(CosineSignal{r.number("omega", 1.0), r.number("amplitude", 1.0)});
        if (type == "constant") return SignalSpec(ConstantSignal{r.number("value")});
        if (type == "polynomial") return SignalSpec(PolynomialSignal{r.number_list("coeffs", true)});
        if (type == "sum") {
            SumSignal sum;
            if (!doc.contains("terms") || !doc["terms"].is_array()) {
                errors.push_back(prefix + ".terms: expected a list of signal objects");
                return {};
            }
            std::size_t i = 0;
            for (const auto& term : doc["terms"])
                sum.terms.push_back(parse_signal(term, prefix + ".terms[" + std::to_string(i++) + "]", errors));
            return SignalSpec(std::move(sum));
        }
    } catch (const std::invalid_argument& e) {
        errors.push_back(prefix + ": " + e.what());
        return {};
    }
    if (!type.empty()) errors.push_back(prefix + ".type: unknown signal type '" + type + "'");
    return {};
}

json signal_to_json(const SignalSpec& spec) {
    return std::visit(
        [](const auto& node) -> json {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, CosineSignal>)
                return {{"type", "cosine"}, {"omega", node.omega}, {"amplitude", node.amplitude}};
            if constexpr (std::is_same_v<T, ConstantSignal>)
                return {{"type", "constant"}, {"value", node.value}};
            if constexpr (std::is_same_v<T, PolynomialSignal>)
                return {{"type", "polynomial"}, {"coeffs", node.coeffs}};
            if constexpr (std::is_same_v<T, SumSignal>) {
                json terms = json::array();
                for (const auto& term : node.terms) terms.push_back(signal_to_json(term));
                return {{"type", "sum"}, {"terms", terms}};
            }
        },
        spec.node());
}

}  // namespace

ParseResult parse_scenario_json(const json& doc) {
    ParseResult result;
    auto& errors = result.errors;
    if (!doc.is_object()) {
        errors.push_back("config: expected a JSON object");
        return result;
    }

    ScenarioSpec spec;
    FieldReader root(doc, "", errors);

    const int version = root.integer("schema_version", 0);
    if (version != kSchemaVersion)
        errors.push_back("schema_version: expected " + std::to_string(kSchemaVersion) + ", got " +
                         std::to_string(version));

    const std::string tag_name = root.text("scenario");
    if (const auto tag = scenario_from_string(tag_name))
        spec.tag = *tag;
    else if (!tag_name.empty())
        errors.push_back("scenario: unknown scenario '" + tag_name + "'");

    if (!doc.contains("observer") || !doc["observer"].is_object()) {
        errors.push_back("observer: missing required section");
    } else {
        const json& obs = doc["observer"];
        FieldReader r(obs, "observer.", errors);
        std::optional<ObserverVariantTag> tag;
        if (r.has("variant")) {
            const std::string name = r.text("variant");
            tag = variant_from_string(name);
            if (!tag) errors.push_back("observer.variant: unknown variant '" + name + "'");
        }
        if (tag) {
            spec.observer.n = variant_info(*tag).n;
            spec.observer.p = variant_info(*tag).p;
            if (r.has("n") && r.integer("n") != spec.observer.n)
                errors.push_back("observer.n: disagrees with variant '" + std::string(to_string(*tag)) + "'");
            if (r.has("p") && r.integer("p") != spec.observer.p)
                errors.push_back("observer.p: disagrees with variant '" + std::string(to_string(*tag)) + "'");
        } else {
            spec.observer.n = r.integer("n", 0);
            spec.observer.p = r.integer("p", 0);
            if (!r.has("variant") && (!r.has("n") || !r.has("p")))
                errors.push_back("observer: provide either a variant tag or explicit n and p");
        }
        spec.observer.gains = r.number_list("gains", true);
        spec.observer.epsilon = r.number("epsilon");
        spec.observer.alpha_n = r.number("alpha_n");
        spec.observer.initial_state = r.number_list("initial_state", true);
    }

    if (doc.contains("signal"))
        spec.signal = parse_signal(doc["signal"], "signal", errors);
    else
        errors.push_back("signal: missing required section");

    if (doc.contains("noise") && !doc["noise"].is_null()) {
        if (!doc["noise"].is_object()) {
            errors.push_back("noise: expected an object");
        } else {
            FieldReader r(doc["noise"], "noise.", errors);
            NoiseSpec noise;
            noise.gaussian_mean = r.number("gaussian_mean", 0.0);
            noise.gaussian_variance = r.number("gaussian_variance", 0.01);
            noise.pulse_amplitude = r.number("pulse_amplitude", 0.5);
            noise.pulse_period = r.number("pulse_period", 1.0);
            noise.pulse_width_fraction = r.number("pulse_width_fraction", 0.01);
            noise.pulse_phase = r.number("pulse_phase", 0.0);
            noise.sample_rate = r.number("sample_rate", 1000.0);
            noise.seed = static_cast<std::uint64_t>(r.number("seed", 0.0));
            try {
                validate_noise(noise);
            } catch (const std::invalid_argument& e) {
                errors.push_back(std::string("noise: ") + e.what());
            }
            spec.noise = noise;
        }
    }

    if (doc.contains("scheme") && doc["scheme"].is_object()) {
        FieldReader r(doc["scheme"], "scheme.", errors);
        const std::string method = r.text("method", std::string("rk4"));
        if (method == "rk4")
            spec.scheme.method = StepMethod::RK4;
        else if (method == "euler")
            spec.scheme.method = StepMethod::Euler;
        else
            errors.push_back("scheme.method: unknown method '" + method + "' (rk4 or euler)");
        spec.scheme.dt = r.number("dt", 1e-3);
    } else {
        spec.scheme = StepScheme{StepMethod::RK4, 1e-3};
    }
    if (!(spec.scheme.dt > 0.0)) errors.push_back("scheme.dt: must be > 0");

    spec.horizon = root.number("horizon");
    spec.settle_time = root.number("settle_time", spec.tag == ScenarioTag::PidClosedLoop ? 30.0 : 20.0);
    if (spec.horizon <= spec.settle_time)
        errors.push_back("horizon: must exceed settle_time (horizon=" + std::to_string(spec.horizon) +
                         ", settle_time=" + std::to_string(spec.settle_time) + ")");

    if (doc.contains("pid")) {
        if (!doc["pid"].is_object()) {
            errors.push_back("pid: expected an object");
        } else {
            FieldReader r(doc["pid"], "pid.", errors);
            spec.pid = PidGains{r.number("kp"), r.number("ki"), r.number("kd")};
        }
    }
    spec.plant_initial = FieldReader(doc, "", errors).number_list("plant_initial", false);
    spec.epsilon_sweep = FieldReader(doc, "", errors).number_list("epsilon_sweep", false);

    if (spec.tag == ScenarioTag::PidClosedLoop) {
        if (!spec.pid) errors.push_back("pid: required for the pid_closed_loop scenario");
        if (spec.plant_initial.size() != 2)
            errors.push_back("plant_initial: pid_closed_loop needs exactly [z1(0), z2(0)]");
    }
    if (spec.tag == ScenarioTag::EpsilonSweep) {
        if (spec.epsilon_sweep.empty())
            errors.push_back("epsilon_sweep: required for the epsilon_sweep scenario");
        for (std::size_t i = 0; i < spec.epsilon_sweep.size(); ++i) {
            const double e = spec.epsilon_sweep[i];
            if (!(e > 0.0 && e < 1.0)) errors.push_back("epsilon_sweep: values must lie in (0,1)");
            if (i > 0 && !(e < spec.epsilon_sweep[i - 1]))
                errors.push_back("epsilon_sweep: values must be strictly decreasing");
        }
    }

    if (errors.empty()) result.spec = std::move(spec);
    return result;
}

ParseResult parse_scenario_text(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        ParseResult result;
        result.errors.push_back("config: not valid JSON");
        return result;
    }
    return parse_scenario_json(doc);
}

ParseResult parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult result;
        result.errors.push_back("config: cannot open '" + path + "'");
        return result;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

json scenario_to_json(const ScenarioSpec& spec) {
    json obs = {
        {"n", spec.observer.n},
        {"p", spec.observer.p},
        {"gains", spec.observer.gains},
        {"epsilon", spec.observer.epsilon},
        {"alpha_n", spec.observer.alpha_n},
        {"initial_state", spec.observer.initial_state},
    };
    if (const auto tag = variant_for(spec.observer.n, spec.observer.p))
        obs["variant"] = to_string(*tag);

    json doc = {
        {"schema_version", kSchemaVersion},
        {"scenario", to_string(spec.tag)},
        {"observer", obs},
        {"signal", signal_to_json(spec.signal)},
        {"scheme", {{"method", to_string(spec.scheme.method)}, {"dt", spec.scheme.dt}}},
        {"horizon", spec.horizon},
        {"settle_time", spec.settle_time},
    };
    if (spec.noise) {
        const auto& n = *spec.noise;
        doc["noise"] = {
            {"gaussian_mean", n.gaussian_mean},
            {"gaussian_variance", n.gaussian_variance},
            {"pulse_amplitude", n.pulse_amplitude},
            {"pulse_period", n.pulse_period},
            {"pulse_width_fraction", n.pulse_width_fraction},
            {"pulse_phase", n.pulse_phase},
            {"sample_rate", n.sample_rate},
            {"seed", n.seed},
        };
    }
    if (spec.pid) doc["pid"] = {{"kp", spec.pid->kp}, {"ki", spec.pid->ki}, {"kd", spec.pid->kd}};
    if (!spec.plant_initial.empty()) doc["plant_initial"] = spec.plant_initial;
    if (!spec.epsilon_sweep.empty()) doc["epsilon_sweep"] = spec.epsilon_sweep;
    return doc;
}

}  // namespace ido
