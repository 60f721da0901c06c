#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ido/scenario.hpp"

namespace ido {

inline constexpr int kSchemaVersion = 1;

struct ParseResult {
    std::optional<ScenarioSpec> spec;
    std::vector<std::string> errors;  // complete list, not just the first
    bool ok() const { return spec.has_value(); }
};

/// Parses a scenario config document. Collects every structural error; the
/// observer's own semantic validation runs separately (check-config reports
/// both groups).
ParseResult parse_scenario_json(const nlohmann::json& doc);
ParseResult parse_scenario_text(const std::string& text);
ParseResult parse_scenario_file(const std::string& path);

/// Canonical config echo (sorted keys) used for CSV headers and round-trips.
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

}  // namespace ido
