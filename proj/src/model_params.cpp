#include "dropletmc/model_params.hpp"

#include <cmath>
#include <string>

#include "dropletmc/errors.hpp"

namespace dropletmc {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(field, "must be finite and > 0, got " + std::to_string(v));
  }
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

}  // namespace

std::string_view to_string(Sex sex) {
  switch (sex) {
    case Sex::male: return "male";
    case Sex::female: return "female";
    case Sex::average: return "average";
  }
  return "average";
}

std::string_view to_string(SettlingLaw law) {
  return law == SettlingLaw::paper ? "paper" : "derived";
}

std::string_view to_string(ProbabilityForm form) {
  return form == ProbabilityForm::as_printed ? "as_printed" : "moment_consistent";
}

Sex parse_sex(std::string_view text) {
  if (text == "male") return Sex::male;
  if (text == "female") return Sex::female;
  if (text == "average") return Sex::average;
  throw ValidationError("receiver.sex", "expected male, female or average, got '" +
                                            std::string(text) + "'");
}

SettlingLaw parse_settling_law(std::string_view text) {
  if (text == "paper") return SettlingLaw::paper;
  if (text == "derived") return SettlingLaw::derived;
  throw ValidationError("controls.settling_law",
                        "expected paper or derived, got '" + std::string(text) + "'");
}

ProbabilityForm parse_probability_form(std::string_view text) {
  if (text == "as_printed") return ProbabilityForm::as_printed;
  if (text == "moment_consistent") return ProbabilityForm::moment_consistent;
  throw ValidationError("controls.probability_form",
                        "expected as_printed or moment_consistent, got '" +
                            std::string(text) + "'");
}

void Environment::validate() const {
  require_positive(rho_a, "environment.rho_a");
  require_positive(rho_f, "environment.rho_f");
  require_positive(rho_d, "environment.rho_d");
  require_positive(mu_a, "environment.mu_a");
  require_positive(g, "environment.g");
  if (!(rho_f < rho_a)) {
    throw ValidationError("environment.rho_f", "exhaled air must be lighter than ambient air");
  }
  if (!(rho_a < rho_d)) {
    throw ValidationError("environment.rho_d", "droplets must be denser than ambient air");
  }
}

void Transmitter::validate() const {
  require_finite(position.x, "transmitter.x");
  require_finite(position.y, "transmitter.y");
  require_finite(position.z, "transmitter.z");
  require_positive(I0, "transmitter.I0");
  require_finite(F0, "transmitter.F0");
  if (F0 < 0.0) throw ValidationError("transmitter.F0", "must be >= 0");
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(theta0 > -half_pi && theta0 < half_pi)) {
    throw ValidationError("transmitter.theta0", "must lie strictly inside (-90, 90) degrees");
  }
  require_finite(v_c0, "transmitter.v_c0");
  if (v_c0 < 0.0) throw ValidationError("transmitter.v_c0", "must be >= 0");
  require_positive(alpha_e, "transmitter.alpha_e");
  require_positive(eta, "transmitter.eta");
}

DropletClass::DropletClass(double diameter, std::uint64_t initial_count)
    : diameter_(diameter),
      initial_count_(initial_count),
      volume_(std::numbers::pi * diameter * diameter * diameter / 6.0) {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) {
    throw ValidationError("droplet_class.diameter", "must be > 0");
  }
}

double receiver_radius(double beta_bb, double beta_ss) {
  if (!(beta_bb > 0.0) || !(beta_ss > 0.0)) {
    throw InvalidParameter("receiver_radius: beta_bb and beta_ss must be > 0");
  }
  return std::sqrt(beta_bb * beta_bb + beta_ss * beta_ss) / 2.0;
}

ReceiverGeometry::ReceiverGeometry(Vec3 position, double beta_bb, double beta_ss)
    : position_(position), beta_bb_(beta_bb), beta_ss_(beta_ss) {
  if (!(beta_bb > 0.0) || !std::isfinite(beta_bb)) {
    throw ValidationError("receiver.beta_bb", "must be > 0");
  }
  if (!(beta_ss > 0.0) || !std::isfinite(beta_ss)) {
    throw ValidationError("receiver.beta_ss", "must be > 0");
  }
  r_R_ = receiver_radius(beta_bb, beta_ss);
  A_R_ = std::numbers::pi * r_R_ * r_R_;
}

ReceiverGeometry ReceiverGeometry::with_position(Vec3 position) const {
  return ReceiverGeometry(position, beta_bb_, beta_ss_);
}

ReceiverGeometry ReceiverGeometry::with_betas(double beta_bb, double beta_ss) const {
  return ReceiverGeometry(position_, beta_bb, beta_ss);
}

void SimControls::validate() const {
  require_positive(dt, "controls.dt");
  require_positive(t_s, "controls.t_s");
  if (dt > t_s) throw ValidationError("controls.dt", "must not exceed controls.t_s");
  if (gamma < 0) throw ValidationError("controls.gamma", "must be >= 0");
}

void ScenarioConfig::validate() const {
  environment.validate();
  transmitter.validate();
  require_finite(receiver.position().x, "receiver.x_R");
  require_finite(receiver.position().y, "receiver.y_R");
  require_finite(receiver.position().z, "receiver.z_R");
  if (!(receiver.r_R() > 0.0)) throw ValidationError("receiver.beta_bb", "receiver not set");
  controls.validate();
  if (classes.empty()) throw ValidationError("droplet_class", "at least one class required");
  for (std::size_t k = 1; k < classes.size(); ++k) {
    if (!(classes[k].diameter() > classes[k - 1].diameter())) {
      throw ValidationError("droplet_class",
                            "diameters must be strictly increasing (entry " +
                                std::to_string(k + 1) + ")");
    }
  }
}

std::uint64_t ScenarioConfig::total_initial_count() const {
  std::uint64_t total = 0;
  for (const auto& c : classes) total += c.initial_count();
  return total;
}

std::size_t ScenarioConfig::step_count() const {
  // Guard against t_s/dt landing a hair below an integer (0.3/0.1 = 2.9999...).
  const double ratio = controls.t_s / controls.dt;
  return static_cast<std::size_t>(std::floor(ratio + 1e-9)) + 1;
}

FaceDimensions face_dimensions(Sex sex) {
  constexpr FaceDimensions male{9.131e-2, 7.57e-2};
  constexpr FaceDimensions female{8.853e-2, 6.901e-2};
  switch (sex) {
    case Sex::male: return male;
    case Sex::female: return female;
    case Sex::average:
      return {(male.beta_bb + female.beta_bb) / 2.0, (male.beta_ss + female.beta_ss) / 2.0};
  }
  return male;
}

const std::vector<DropletBin>& cough_droplet_table() {
  static const std::vector<DropletBin> table = {
      {2, 50},   {4, 290},   {8, 970},   {16, 1600}, {24, 870},  {32, 420},
      {40, 240}, {50, 110},  {75, 140},  {100, 85},  {125, 48},  {150, 38},
      {200, 35}, {250, 29},  {500, 34},  {1000, 12}, {2000, 2},
  };
  return table;
}

ScenarioConfig default_scenario(Sex sex) {
  ScenarioConfig cfg;
  const auto face = face_dimensions(sex);
  cfg.receiver = ReceiverGeometry(Vec3{1.5, 1.7, 0.0}, face.beta_bb, face.beta_ss);
  for (const auto& bin : cough_droplet_table()) {
    cfg.classes.emplace_back(bin.diameter_um / 1e6, bin.count);
  }
  return cfg;
}

}  // namespace dropletmc
