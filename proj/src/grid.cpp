#include "dropletmc/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "dropletmc/errors.hpp"

namespace dropletmc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double to_number(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ValidationError("grid", "not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string_view> split_list(std::string_view spec) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = spec.find(',', pos);
    const auto item = trim(spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos));
    if (item.empty()) throw ValidationError("grid", "empty list entry");
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_grid(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ValidationError("grid", "empty grid");

  const auto c1 = spec.find(':');
  if (c1 == std::string_view::npos) {
    std::vector<double> out;
    for (auto item : split_list(spec)) out.push_back(to_number(item));
    return out;
  }
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
    throw ValidationError("grid", "range must be start:stop:step");
  }
  const double start = to_number(spec.substr(0, c1));
  const double stop = to_number(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = to_number(spec.substr(c2 + 1));
  if (!(step > 0.0)) throw ValidationError("grid", "step must be > 0");
  if (stop < start) throw ValidationError("grid", "stop must be >= start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 1'000'000) throw ValidationError("grid", "too many points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

}  // namespace dropletmc
