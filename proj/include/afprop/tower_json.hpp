#pragma once

#include <string>

#include <json.hpp>

#include "afprop/tower.hpp"

namespace afprop {

// Tower-spec documents:
// {"levels":[[dims]], "layouts":[[[sources]]],
//  "trace":{"kind":"uhf"|"cantor"|"effros-shen","theta":x|"explicit","weights":[[..]]},
//  "beta":{"kind":"dim-power","k":k}|{"kind":"explicit","values":[..]}|{"kind":"cantor","r":r}}
BuiltTower tower_from_json(const nlohmann::json& doc);
// Parse errors carry line and column.
BuiltTower tower_from_text(const std::string& text);

nlohmann::json tower_to_json(const BuiltTower& built);
nlohmann::json report_to_json(const ValidationReport& report);

}  // namespace afprop
