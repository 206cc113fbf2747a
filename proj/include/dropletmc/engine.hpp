#pragma once

// End-to-end channel simulation: trajectory, settling, sampling and
// reception per time step, plus ensemble, sweep and probability-curve
// drivers built on top of single runs.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dropletmc/cloud_dynamics.hpp"
#include "dropletmc/infection_probability.hpp"
#include "dropletmc/model_params.hpp"
#include "dropletmc/receiver.hpp"
#include "dropletmc/trajectory.hpp"

namespace dropletmc {

struct StepRecord {
  TrajectoryPoint point;
  double Z = 0.0;      // buoyant droplet mass after this step's updates
  double rho_c = 0.0;  // +inf at t = 0 (zero cloud volume)
  std::vector<ClassState> classes;
  Overlap overlap;
  ReceptionRecord reception;
  ExposureMoments moments;   // filled when analytics are enabled
  double probability = 0.0;  // P(N_R > gamma) at this step
};

struct RunSummary {
  std::optional<double> first_infection_time;
  std::int64_t total_received = 0;  // largest N_R over the run
  int final_state = 0;              // 1 if any step detected infection
  double peak_probability = 0.0;
};

struct TimeSeries {
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  RunSummary summary;
};

struct RunOptions {
  // Evaluate the closed-form exposure moments and probability per step.
  bool analytics = true;
};

// Deterministic for a given (cfg, seed). Propagates NumericalFailure with
// the failing step in the message.
TimeSeries run_simulation(const ScenarioConfig& cfg, std::uint64_t seed, RunOptions opts = {});

struct EnsembleStats {
  std::size_t n_runs = 0;     // successful runs
  std::size_t n_failed = 0;
  std::vector<std::string> failures;  // "seed N: message"
  double infection_frequency = 0.0;
  double half_width = 0.0;            // 3 sigma binomial
  std::vector<double> t;
  std::vector<double> N_R_mean;
  std::vector<double> N_R_sd;
};

// n runs with seeds base_seed, base_seed + 1, ... executed on `threads`
// workers (0 = hardware concurrency). Failed runs are excluded; more than 1%
// failures raises EnsembleError.
EnsembleStats run_ensemble(const ScenarioConfig& cfg, std::size_t n, std::uint64_t base_seed,
                           unsigned threads = 0);

enum class SweepParameter { x_R, gamma, theta0, sex };
std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view text);

// x_R in metres, gamma as a whole number, theta0 in degrees.
using SweepValue = std::variant<double, Sex>;

struct SweepPoint {
  SweepValue value;
  int infection_state = 0;
  std::optional<double> first_infection_time;
  std::int64_t peak_N_R = 0;
  double probability = 0.0;  // peak per-step probability of the run
};

struct SweepResult {
  SweepParameter axis = SweepParameter::x_R;
  std::vector<SweepPoint> outcomes;
  std::string config_hash;
  std::string seed_policy;
};

// Applies one grid value to a copy of cfg. Throws ValidationError.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepParameter parameter,
                                 const SweepValue& value);

// One run per grid point with seed cfg.controls.seed. Every grid value is
// validated before the first run.
SweepResult sweep(const ScenarioConfig& cfg, SweepParameter parameter,
                  const std::vector<SweepValue>& grid, unsigned threads = 0);

struct CurvePoint {
  double x_R = 0.0;
  double t = 0.0;          // requested time
  double step_time = 0.0;  // nearest simulated time
  double probability = 0.0;                // largest per-step probability up to step_time
  double instantaneous_probability = 0.0;  // probability at step_time itself
  OverlapBranch branch = OverlapBranch::none;
};

struct CurveResult {
  std::vector<CurvePoint> points;  // x-major, then time
  std::string config_hash;
};

// Probability of infection against receiver distance for several exposure
// times, from mean propagation (stochastic sampling off).
CurveResult probability_curve(const ScenarioConfig& cfg, const std::vector<double>& x_R_grid,
                              const std::vector<double>& times, unsigned threads = 0);

// FNV-1a of the serialized config, 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace dropletmc
