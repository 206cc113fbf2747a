#pragma once

// CSV and JSON renderings of simulation results. Floating-point fields use
// 9 significant digits; every CSV has a header row and ends with a newline.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "dropletmc/engine.hpp"

namespace dropletmc {

// t, s, theta_rad, x, y, z, r, v_c, Z, rho_c, then lambda_k, count_k,
// received_k for k = 1..K, then N_R, state.
void write_timeseries_csv(std::ostream& out, const TimeSeries& ts);
std::string timeseries_csv(const TimeSeries& ts);

nlohmann::json summary_json(const ScenarioConfig& cfg, const TimeSeries& ts);
nlohmann::json ensemble_json(const ScenarioConfig& cfg, const EnsembleStats& stats,
                             std::uint64_t base_seed);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_curve_csv(std::ostream& out, const CurveResult& result);

// Config echo with the same keys as the config document.
nlohmann::json config_json(const ScenarioConfig& cfg);

}  // namespace dropletmc
