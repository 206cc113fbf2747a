#pragma once

// Reading and writing scenario documents.
//
// A document is a list of `key = value` lines. Keys use dotted section
// names (environment.rho_a, receiver.x_R, ...); `#` starts a comment. Every
// field is optional and falls back to default_scenario(average). Repeated
// `droplet_class = <diameter_um>, <count>` lines replace the built-in size
// table as a whole. See configs/annotated.cfg for the full key list.

#include <filesystem>
#include <string>
#include <string_view>

#include "dropletmc/model_params.hpp"

namespace dropletmc {

// Throws MalformedConfig on syntax errors and ValidationError when the
// resulting scenario violates an invariant.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

// Writes every field using the SI keys (theta0_rad, beta_bb_m, ...), which
// reload bit-exactly.
std::string to_config_text(const ScenarioConfig& cfg);

}  // namespace dropletmc
