#include "dropletmc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "dropletmc/config.hpp"
#include "dropletmc/errors.hpp"

namespace dropletmc {

namespace {

// Runs body(i) for i in [0, n) on a pool of workers. Results must be written
// to per-index slots by the caller so the output order does not depend on
// scheduling. The first exception (lowest index) is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}

}  // namespace

TimeSeries run_simulation(const ScenarioConfig& cfg, std::uint64_t seed, RunOptions opts) {
  cfg.validate();
  const auto& env = cfg.environment;
  const auto& tx = cfg.transmitter;
  const auto& ctl = cfg.controls;
  const std::size_t K = cfg.classes.size();
  const std::size_t n_steps = cfg.step_count();

  GaussianSampler rng(seed);
  TimeSeries out;
  out.seed = seed;
  out.steps.reserve(n_steps);

  // t = 0: the cloud leaves the mouth with zero extent.
  StepRecord first;
  first.point = TrajectoryPoint{0.0, 0.0, tx.theta0, 0.0, tx.position.x, tx.position.y,
                                tx.position.z, tx.v_c0};
  first.classes.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    auto& c = first.classes[k];
    c.class_index = k;
    c.lambda = static_cast<double>(cfg.classes[k].initial_count());
    c.count = c.lambda;
    c.Re = reynolds(cfg.classes[k].diameter(), tx.v_c0, env);
    c.v_s = settling_velocity(cfg.classes[k].diameter(), tx.v_c0, env, ctl.settling_law);
  }
  first.Z = buoyant_mass_Z(first.classes, cfg);
  first.rho_c = std::numeric_limits<double>::infinity();
  first.reception.t = 0.0;
  first.reception.per_class_received.assign(K, 0);
  out.steps.push_back(std::move(first));

  // Running sums of post-depletion counts (the received-count history) and
  // the full mean-count history used by the closed-form moments.
  std::vector<double> count_history_sum(K);
  std::vector<std::vector<double>> lambda_history(K);
  for (std::size_t k = 0; k < K; ++k) {
    count_history_sum[k] = out.steps[0].classes[k].count;
    lambda_history[k].reserve(n_steps);
    lambda_history[k].push_back(out.steps[0].classes[k].lambda);
  }

  for (std::size_t i = 1; i < n_steps; ++i) {
    const StepRecord& prev = out.steps.back();
    const double t = static_cast<double>(i) * ctl.dt;
    StepRecord step;

    // Trajectory, with Z frozen at the previous step's counts.
    const double z = buoyant_mass_Z(prev.classes, cfg);
    double s;
    try {
      s = solve_s(t, z, tx, env);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("step " + std::to_string(i) + " (t = " + format_time(t) +
                                 " s): " + e.what(),
                             e.t(), e.z(), e.bracket_lo(), e.bracket_hi());
    }
    // Sampled counts can raise Z slightly between steps; the displacement
    // itself never runs backwards.
    s = std::max(s, prev.point.s);
    step.point = advance_position(prev.point, s, theta_at(t, tx), ctl.dt, t, tx.alpha_e);

    // Settling and sampling.
    step.classes = prev.classes;
    for (std::size_t k = 0; k < K; ++k) {
      auto& c = step.classes[k];
      const double d = cfg.classes[k].diameter();
      c.Re = reynolds(d, step.point.v_c, env);
      c.v_s = settling_velocity(d, step.point.v_c, env, ctl.settling_law);
      c.lambda = std::max(0.0, c.lambda + lambda_step(c.lambda, c.v_s, s, tx.alpha_e, ctl.dt));
      c.count = ctl.stochastic ? sample_count(c.lambda, rng) : c.lambda;
      lambda_history[k].push_back(c.lambda);
    }

    // Reception.
    step.overlap = receiver_overlap(step.point, cfg.receiver);
    auto& rec = step.reception;
    rec.t = t;
    rec.per_class_received.assign(K, 0);
    const double factor =
        step.overlap.branch == OverlapBranch::none
            ? 0.0
            : geometric_factor(step.point.v_c, step.overlap.area, step.point.r, tx.eta, ctl.dt);
    for (std::size_t k = 0; k < K; ++k) {
      auto& c = step.classes[k];
      if (step.overlap.branch != OverlapBranch::none) {
        const std::int64_t received = quantize_exposure(factor, count_history_sum[k] + c.count);
        rec.per_class_received[k] = received;
        rec.N_R += received;
        c.count = deplete(c.count, received);
      }
      count_history_sum[k] += c.count;
    }
    rec.state = detect(rec.N_R, ctl.gamma);

    if (opts.analytics && step.overlap.branch != OverlapBranch::none) {
      const StepGeometry geometry{step.point.v_c, step.overlap.area, cfg.receiver.A_R(),
                                  step.point.r,   tx.eta,            ctl.dt,
                                  step.overlap.branch};
      step.moments = exposure_moments(lambda_history, geometry);
      step.probability = infection_probability(static_cast<double>(ctl.gamma), step.moments,
                                               ctl.probability_form);
    }

    step.Z = buoyant_mass_Z(step.classes, cfg);
    step.rho_c = cloud_density(step.classes, s, cfg);
    out.steps.push_back(std::move(step));
  }

  auto& summary = out.summary;
  for (const auto& step : out.steps) {
    if (step.reception.state == 1 && !summary.first_infection_time) {
      summary.first_infection_time = step.reception.t;
    }
    summary.total_received = std::max(summary.total_received, step.reception.N_R);
    summary.peak_probability = std::max(summary.peak_probability, step.probability);
  }
  summary.final_state = summary.first_infection_time ? 1 : 0;
  return out;
}

EnsembleStats run_ensemble(const ScenarioConfig& cfg, std::size_t n, std::uint64_t base_seed,
                           unsigned threads) {
  if (n == 0) throw InvalidParameter("run_ensemble: need at least one run");
  cfg.validate();

  // Only what the aggregates need is kept per member.
  struct Slot {
    bool ok = false;
    int final_state = 0;
    std::vector<std::int64_t> N_R;
    std::string error;
  };
  std::vector<Slot> slots(n);
  parallel_for(n, threads, [&](std::size_t j) {
    try {
      const auto ts = run_simulation(cfg, base_seed + j, RunOptions{.analytics = false});
      slots[j].final_state = ts.summary.final_state;
      slots[j].N_R.reserve(ts.steps.size());
      for (const auto& step : ts.steps) slots[j].N_R.push_back(step.reception.N_R);
      slots[j].ok = true;
    } catch (const Error& e) {
      slots[j].error = e.what();
    }
  });

  EnsembleStats stats;
  const std::size_t n_steps = cfg.step_count();
  stats.t.resize(n_steps);
  for (std::size_t i = 0; i < n_steps; ++i) stats.t[i] = static_cast<double>(i) * cfg.controls.dt;
  stats.N_R_mean.assign(n_steps, 0.0);
  stats.N_R_sd.assign(n_steps, 0.0);

  std::size_t infected = 0;
  std::vector<double> m2(n_steps, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!slots[j].ok) {
      ++stats.n_failed;
      stats.failures.push_back("seed " + std::to_string(base_seed + j) + ": " + slots[j].error);
      continue;
    }
    ++stats.n_runs;
    infected += static_cast<std::size_t>(slots[j].final_state);
    // Welford update, merged in seed order.
    for (std::size_t i = 0; i < n_steps; ++i) {
      const double x = static_cast<double>(slots[j].N_R[i]);
      const double delta = x - stats.N_R_mean[i];
      stats.N_R_mean[i] += delta / static_cast<double>(stats.n_runs);
      m2[i] += delta * (x - stats.N_R_mean[i]);
    }
  }
  if (stats.n_failed * 100 > n) {
    throw EnsembleError(std::to_string(stats.n_failed) + " of " + std::to_string(n) +
                        " runs failed; first: " + stats.failures.front());
  }
  if (stats.n_runs > 1) {
    for (std::size_t i = 0; i < n_steps; ++i) {
      stats.N_R_sd[i] = std::sqrt(m2[i] / static_cast<double>(stats.n_runs - 1));
    }
  }
  const double p = static_cast<double>(infected) / static_cast<double>(stats.n_runs);
  stats.infection_frequency = p;
  stats.half_width = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(stats.n_runs));
  return stats;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::x_R: return "x_R";
    case SweepParameter::gamma: return "gamma";
    case SweepParameter::theta0: return "theta0";
    case SweepParameter::sex: return "sex";
  }
  return "x_R";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  if (text == "x_R") return SweepParameter::x_R;
  if (text == "gamma") return SweepParameter::gamma;
  if (text == "theta0") return SweepParameter::theta0;
  if (text == "sex") return SweepParameter::sex;
  throw ValidationError("param", "expected x_R, gamma, theta0 or sex, got '" + std::string(text) + "'");
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepParameter parameter,
                                 const SweepValue& value) {
  ScenarioConfig out = cfg;
  const bool is_sex = std::holds_alternative<Sex>(value);
  if (is_sex != (parameter == SweepParameter::sex)) {
    throw ValidationError(std::string(to_string(parameter)), "grid value has the wrong kind");
  }
  switch (parameter) {
    case SweepParameter::x_R: {
      Vec3 pos = cfg.receiver.position();
      pos.x = std::get<double>(value);
      out.receiver = cfg.receiver.with_position(pos);
      break;
    }
    case SweepParameter::gamma: {
      const double g = std::get<double>(value);
      if (!(g >= 0.0) || g != std::floor(g) || g > 9e18) {
        throw ValidationError("controls.gamma", "sweep value must be a non-negative integer");
      }
      out.controls.gamma = static_cast<std::int64_t>(g);
      break;
    }
    case SweepParameter::theta0:
      out.transmitter.theta0 = std::get<double>(value) * std::numbers::pi / 180.0;
      break;
    case SweepParameter::sex: {
      const auto face = face_dimensions(std::get<Sex>(value));
      out.receiver = cfg.receiver.with_betas(face.beta_bb, face.beta_ss);
      break;
    }
  }
  out.validate();
  return out;
}

SweepResult sweep(const ScenarioConfig& cfg, SweepParameter parameter,
                  const std::vector<SweepValue>& grid, unsigned threads) {
  if (grid.empty()) throw ValidationError("grid", "must not be empty");
  std::vector<ScenarioConfig> configs;
  configs.reserve(grid.size());
  for (const auto& v : grid) configs.push_back(apply_sweep_value(cfg, parameter, v));

  SweepResult result;
  result.axis = parameter;
  result.config_hash = config_hash(cfg);
  result.seed_policy = "one run per grid point, seed " + std::to_string(cfg.controls.seed) +
                       (cfg.controls.stochastic ? " (stochastic)" : " (mean propagation)");
  result.outcomes.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t j) {
    const auto ts = run_simulation(configs[j], configs[j].controls.seed);
    auto& point = result.outcomes[j];
    point.value = grid[j];
    point.infection_state = ts.summary.final_state;
    point.first_infection_time = ts.summary.first_infection_time;
    point.peak_N_R = ts.summary.total_received;
    point.probability = ts.summary.peak_probability;
  });
  return result;
}

CurveResult probability_curve(const ScenarioConfig& cfg, const std::vector<double>& x_R_grid,
                              const std::vector<double>& times, unsigned threads) {
  if (x_R_grid.empty()) throw ValidationError("x_grid", "must not be empty");
  if (times.empty()) throw ValidationError("times", "must not be empty");
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("times", "must be >= 0");
  }
  ScenarioConfig base = cfg;
  base.controls.stochastic = false;
  std::vector<ScenarioConfig> configs;
  for (double x : x_R_grid) configs.push_back(apply_sweep_value(base, SweepParameter::x_R, x));

  CurveResult result;
  result.config_hash = config_hash(cfg);
  result.points.resize(x_R_grid.size() * times.size());
  parallel_for(x_R_grid.size(), threads, [&](std::size_t j) {
    const auto ts = run_simulation(configs[j], configs[j].controls.seed);
    const auto last = ts.steps.size() - 1;
    for (std::size_t m = 0; m < times.size(); ++m) {
      const auto idx = std::min<std::size_t>(
          last, static_cast<std::size_t>(std::llround(times[m] / configs[j].controls.dt)));
      auto& p = result.points[j * times.size() + m];
      p.x_R = x_R_grid[j];
      p.t = times[m];
      p.step_time = ts.steps[idx].point.t;
      p.instantaneous_probability = ts.steps[idx].probability;
      p.branch = ts.steps[idx].overlap.branch;
      for (std::size_t i = 0; i <= idx; ++i) {
        p.probability = std::max(p.probability, ts.steps[i].probability);
      }
    }
  });
  return result;
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_config_text(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dropletmc
