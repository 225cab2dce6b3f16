#pragma once

#include <json.hpp>
#include <string>

#include "trn/resource.hpp"

namespace trn {

// Document layer: versioned JSON with events by name. Parsing is strict;
// unknown fields and dangling references are DocumentErrors.
nlohmann::json trn_to_json(const Trn& trn);
Trn trn_from_json(const nlohmann::json& doc);

Trn load_trn(const std::string& path);
void save_trn(const Trn& trn, const std::string& path);

nlohmann::json schedule_to_json(const Trn& trn, const Schedule& s,
                                std::optional<double> risk_bound = std::nullopt);

}  // namespace trn
