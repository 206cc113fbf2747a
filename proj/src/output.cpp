#include "dropletmc/output.hpp"

#include <cstdio>
#include <sstream>

#include "dropletmc/config.hpp"

namespace dropletmc {

namespace {

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string sweep_value_text(const SweepValue& v) {
  if (const auto* sex = std::get_if<Sex>(&v)) return std::string(to_string(*sex));
  return g9(std::get<double>(v));
}

nlohmann::json optional_time(const std::optional<double>& t) {
  return t ? nlohmann::json(*t) : nlohmann::json(nullptr);
}

}  // namespace

void write_timeseries_csv(std::ostream& out, const TimeSeries& ts) {
  const std::size_t K = ts.steps.empty() ? 0 : ts.steps.front().classes.size();
  out << "t,s,theta_rad,x,y,z,r,v_c,Z,rho_c";
  for (std::size_t k = 1; k <= K; ++k) {
    out << ",lambda_" << k << ",count_" << k << ",received_" << k;
  }
  out << ",N_R,state\n";
  for (const auto& step : ts.steps) {
    const auto& p = step.point;
    out << g9(p.t) << ',' << g9(p.s) << ',' << g9(p.theta) << ',' << g9(p.x) << ',' << g9(p.y)
        << ',' << g9(p.z) << ',' << g9(p.r) << ',' << g9(p.v_c) << ',' << g9(step.Z) << ','
        << g9(step.rho_c);
    for (std::size_t k = 0; k < K; ++k) {
      out << ',' << g9(step.classes[k].lambda) << ',' << g9(step.classes[k].count) << ','
          << step.reception.per_class_received[k];
    }
    out << ',' << step.reception.N_R << ',' << step.reception.state << '\n';
  }
}

std::string timeseries_csv(const TimeSeries& ts) {
  std::ostringstream out;
  write_timeseries_csv(out, ts);
  return out.str();
}

nlohmann::json config_json(const ScenarioConfig& cfg) {
  // Mirrors the document keys so the echo can be read next to the input.
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json classes = nlohmann::json::array();
  const auto& env = cfg.environment;
  const auto& tx = cfg.transmitter;
  const auto& rx = cfg.receiver;
  const auto& ctl = cfg.controls;
  j["environment"] = {{"rho_a", env.rho_a}, {"rho_f", env.rho_f}, {"rho_d", env.rho_d},
                      {"mu_a", env.mu_a},   {"g", env.g}};
  j["transmitter"] = {{"x", tx.position.x},   {"y", tx.position.y},     {"z", tx.position.z},
                      {"I0", tx.I0},          {"F0", tx.F0},            {"theta0_rad", tx.theta0},
                      {"v_c0", tx.v_c0},      {"alpha_e", tx.alpha_e},  {"eta", tx.eta}};
  j["receiver"] = {{"x_R", rx.position().x},  {"y_R", rx.position().y}, {"z_R", rx.position().z},
                   {"beta_bb_m", rx.beta_bb()}, {"beta_ss_m", rx.beta_ss()},
                   {"r_R", rx.r_R()},           {"A_R", rx.A_R()}};
  j["controls"] = {{"dt", ctl.dt},
                   {"t_s", ctl.t_s},
                   {"gamma", ctl.gamma},
                   {"seed", ctl.seed},
                   {"settling_law", std::string(to_string(ctl.settling_law))},
                   {"probability_form", std::string(to_string(ctl.probability_form))},
                   {"stochastic", ctl.stochastic}};
  for (const auto& c : cfg.classes) {
    classes.push_back({{"diameter_m", c.diameter()}, {"count", c.initial_count()}});
  }
  j["droplet_classes"] = std::move(classes);
  return j;
}

nlohmann::json summary_json(const ScenarioConfig& cfg, const TimeSeries& ts) {
  return {
      {"config", config_json(cfg)},
      {"config_hash", config_hash(cfg)},
      {"seed", ts.seed},
      {"first_infection_time", optional_time(ts.summary.first_infection_time)},
      {"total_received", ts.summary.total_received},
      {"final_state", ts.summary.final_state},
      {"peak_probability", ts.summary.peak_probability},
      {"mode",
       {{"stochastic", cfg.controls.stochastic},
        {"settling_law", std::string(to_string(cfg.controls.settling_law))},
        {"probability_form", std::string(to_string(cfg.controls.probability_form))}}},
  };
}

nlohmann::json ensemble_json(const ScenarioConfig& cfg, const EnsembleStats& stats,
                             std::uint64_t base_seed) {
  return {
      {"config", config_json(cfg)},
      {"config_hash", config_hash(cfg)},
      {"base_seed", base_seed},
      {"n_runs", stats.n_runs},
      {"n_failed", stats.n_failed},
      {"failures", stats.failures},
      {"infection_frequency", stats.infection_frequency},
      {"half_width_3sigma", stats.half_width},
      {"t", stats.t},
      {"N_R_mean", stats.N_R_mean},
      {"N_R_sd", stats.N_R_sd},
  };
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << to_string(result.axis) << ",infection_state,first_infection_time,peak_N_R,probability\n";
  for (const auto& p : result.outcomes) {
    out << sweep_value_text(p.value) << ',' << p.infection_state << ','
        << (p.first_infection_time ? g9(*p.first_infection_time) : std::string()) << ','
        << p.peak_N_R << ',' << g9(p.probability) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const CurveResult& result) {
  out << "x_R,t,step_time,probability,instantaneous_probability,branch\n";
  for (const auto& p : result.points) {
    out << g9(p.x_R) << ',' << g9(p.t) << ',' << g9(p.step_time) << ',' << g9(p.probability)
        << ',' << g9(p.instantaneous_probability) << ',' << to_string(p.branch) << '\n';
  }
}

}  // namespace dropletmc
