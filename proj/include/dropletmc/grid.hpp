#pragma once

#include <string_view>
#include <vector>

namespace dropletmc {

// "start:stop:step" (stop included when the step lands on it, within 1e-9
// of a step) or a comma-separated list. Throws ValidationError.
std::vector<double> parse_grid(std::string_view spec);

// Comma-separated list of words, whitespace trimmed.
std::vector<std::string_view> split_list(std::string_view spec);

}  // namespace dropletmc
