#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gpd/diagram.hpp"
#include "gpd/metrics.hpp"
#include "gpd/module.hpp"

namespace gpd {

/// {"cells": [{"i", "j" (index or "inf"), "label": {key: int}}], "grid": ["p/q"], "group": {...}}
nlohmann::json diagram_to_json(const DiagramGrid& y);
DiagramGrid diagram_from_json(const nlohmann::json& j);
/// Canonical text form (sorted keys, two-space indent, trailing newline).
std::string dump_json(const nlohmann::json& j);
/// Parses JSON text, mapping syntax errors to ParseError.
nlohmann::json parse_json(std::string_view text);

nlohmann::json module_to_json(const ConstructibleModule& f);
ConstructibleModule module_from_json(const nlohmann::json& j);

nlohmann::json erosion_to_json(const ErosionReport& report);
std::string erosion_to_tsv(const ErosionReport& report);

/// Plot of the diagram above the diagonal with an infinity row; every
/// nonzero cell is marked and labelled (negative coefficients with "−").
std::string diagram_to_svg(const DiagramGrid& y);
std::string diagram_to_tsv(const DiagramGrid& y);

/// "−" (U+2212) in place of ASCII minus signs in a group element rendering.
std::string signed_label(const GroupElement& value);

}  // namespace gpd
