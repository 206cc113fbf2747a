#pragma once

// Domain types and measured defaults for the cough-cloud channel.
//
// All quantities are SI. The config reader (config.hpp) is the only place
// that deals with centimetres, micrometres or degrees.

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace dropletmc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Vec3&) const = default;
};

enum class Sex { male, female, average };

enum class SettlingLaw {
  paper,    // closed-form regime velocities
  derived,  // force balance solved with ambient-density drag
};

enum class ProbabilityForm {
  as_printed,         // Q(gamma/Omega - Omega)
  moment_consistent,  // Q((gamma - mean)/sd)
};

std::string_view to_string(Sex sex);
std::string_view to_string(SettlingLaw law);
std::string_view to_string(ProbabilityForm form);
Sex parse_sex(std::string_view text);
SettlingLaw parse_settling_law(std::string_view text);
ProbabilityForm parse_probability_form(std::string_view text);

struct Environment {
  double rho_a = 1.172;   // ambient air, kg/m^3
  double rho_f = 0.98;    // exhaled air, kg/m^3
  double rho_d = 993.0;   // droplet liquid, kg/m^3
  double mu_a = 19e-6;    // air viscosity, kg/(m s)
  double g = 9.81;        // m/s^2

  void validate() const;
  bool operator==(const Environment&) const = default;
};

struct Transmitter {
  Vec3 position{0.0, 1.7, 0.0};
  double I0 = 0.0131;     // initial momentum, kg m/s
  double F0 = 0.0023;     // net buoyant force, N
  double theta0 = 0.0;    // emission angle, rad
  double v_c0 = 11.2;     // initial cloud speed, m/s
  double alpha_e = 0.2116;
  double eta = 4.0 * std::numbers::pi / 3.0;

  void validate() const;
  bool operator==(const Transmitter&) const = default;
};

// One diameter bin. Volume is derived from the diameter on construction.
class DropletClass {
 public:
  DropletClass() = default;
  DropletClass(double diameter, std::uint64_t initial_count);

  double diameter() const noexcept { return diameter_; }
  std::uint64_t initial_count() const noexcept { return initial_count_; }
  double volume() const noexcept { return volume_; }

  bool operator==(const DropletClass&) const = default;

 private:
  double diameter_ = 0.0;
  std::uint64_t initial_count_ = 0;
  double volume_ = 0.0;
};

// Facial disc of the receiving human. r_R and A_R follow from the two
// anthropometric lengths and are recomputed by the factory.
class ReceiverGeometry {
 public:
  ReceiverGeometry() = default;
  ReceiverGeometry(Vec3 position, double beta_bb, double beta_ss);

  const Vec3& position() const noexcept { return position_; }
  double beta_bb() const noexcept { return beta_bb_; }
  double beta_ss() const noexcept { return beta_ss_; }
  double r_R() const noexcept { return r_R_; }
  double A_R() const noexcept { return A_R_; }

  ReceiverGeometry with_position(Vec3 position) const;
  ReceiverGeometry with_betas(double beta_bb, double beta_ss) const;

  bool operator==(const ReceiverGeometry&) const = default;

 private:
  Vec3 position_{};
  double beta_bb_ = 0.0;
  double beta_ss_ = 0.0;
  double r_R_ = 0.0;
  double A_R_ = 0.0;
};

struct SimControls {
  double dt = 0.1;
  double t_s = 10.0;
  std::int64_t gamma = 0;
  std::uint64_t seed = 1;
  SettlingLaw settling_law = SettlingLaw::paper;
  ProbabilityForm probability_form = ProbabilityForm::as_printed;
  bool stochastic = true;

  void validate() const;
  bool operator==(const SimControls&) const = default;
};

struct ScenarioConfig {
  Environment environment;
  Transmitter transmitter;
  ReceiverGeometry receiver;
  std::vector<DropletClass> classes;
  SimControls controls;

  // Throws ValidationError naming the first offending field.
  void validate() const;

  std::uint64_t total_initial_count() const;
  // Number of emitted time samples, t = 0 included.
  std::size_t step_count() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Anthropometric lengths (m).
struct FaceDimensions {
  double beta_bb;
  double beta_ss;
};
FaceDimensions face_dimensions(Sex sex);

// Radius of the circle whose diameter is the hypotenuse of the
// (beta_bb, beta_ss) right triangle.
double receiver_radius(double beta_bb, double beta_ss);

// Cough droplet size distribution (diameter in micrometres, count).
struct DropletBin {
  double diameter_um;
  std::uint64_t count;
};
const std::vector<DropletBin>& cough_droplet_table();

// Measured coughing scenario. The receiver sits at x = 1.5 m on the cough
// axis; sweeps override x_R.
ScenarioConfig default_scenario(Sex sex = Sex::average);

}  // namespace dropletmc
