#include "dropletmc/cloud_dynamics.hpp"

#include <cmath>
#include <string>

#include "dropletmc/errors.hpp"

namespace dropletmc {

namespace {

constexpr double kStokesLimit = 2.0;
constexpr double kIntermediateLimit = 500.0;
constexpr double kNewtonLimit = 2e5;

double regime_drag(FlowRegime regime, double Re) {
  switch (regime) {
    case FlowRegime::stokes: return 24.0 / Re;
    case FlowRegime::intermediate: return 18.5 / std::pow(Re, 0.6);
    case FlowRegime::newton: return 0.44;
  }
  return 0.44;
}

// Velocity at which (3/4) rho_a C_D(Re(v)) v^2 = d g (rho_d - rho_a), with C_D
// taken from the given regime's correlation.
double force_balance_velocity(double d, const Environment& env, FlowRegime regime) {
  const double weight = d * env.g * (env.rho_d - env.rho_a);
  auto excess_drag = [&](double v) {
    const double Re = reynolds(d, v, env);
    return 0.75 * env.rho_a * regime_drag(regime, Re) * v * v - weight;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (excess_drag(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw OutOfRegime("settling_velocity: force balance has no finite root");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess_drag(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double reynolds(double d, double v_c, const Environment& env) {
  return d * env.rho_a * v_c / env.mu_a;
}

FlowRegime flow_regime(double Re) {
  if (!(Re >= 0.0)) throw OutOfRegime("Reynolds number must be >= 0");
  if (Re < kStokesLimit) return FlowRegime::stokes;
  if (Re <= kIntermediateLimit) return FlowRegime::intermediate;
  if (Re <= kNewtonLimit) return FlowRegime::newton;
  throw OutOfRegime("Reynolds number " + std::to_string(Re) + " above 2e5");
}

double drag_coefficient(double Re) {
  if (!(Re > 0.0)) throw OutOfRegime("drag_coefficient: Re must be > 0");
  return regime_drag(flow_regime(Re), Re);
}

double settling_velocity(double d, double v_c, const Environment& env, SettlingLaw law) {
  if (!(d > 0.0)) throw InvalidParameter("settling_velocity: diameter must be > 0");
  if (!(v_c >= 0.0)) throw InvalidParameter("settling_velocity: v_c must be >= 0");
  const FlowRegime regime = flow_regime(reynolds(d, v_c, env));
  const double drho = env.rho_d - env.rho_a;

  if (law == SettlingLaw::derived) return force_balance_velocity(d, env, regime);

  switch (regime) {
    case FlowRegime::stokes:
      return env.g * d * d * drho / (18.0 * env.mu_a);
    case FlowRegime::intermediate:
      return env.g * std::pow(d, 1.6) * drho /
             (13.875 * std::pow(env.rho_d, 0.4) * std::pow(env.mu_a, 0.6));
    case FlowRegime::newton:
      return 3.03 * env.g * d * drho / env.rho_d;
  }
  return 0.0;
}

double lambda_step(double lambda, double v_s, double s, double alpha_e, double dt) {
  if (s == 0.0) throw SingularGeometry("lambda_step: cloud has zero extent (s = 0)");
  return -3.0 * v_s * lambda * dt / (2.0 * alpha_e * s);
}

double sample_count(double lambda, GaussianSampler& rng) {
  if (lambda <= 0.0) return 0.0;
  const double draw = lambda + std::sqrt(lambda) * rng.standard_normal();
  return draw > 0.0 ? draw : 0.0;
}

double buoyant_mass_Z(std::span<const ClassState> classes, const ScenarioConfig& cfg) {
  const double drho = cfg.environment.rho_d - cfg.environment.rho_f;
  double z = 0.0;
  for (const auto& c : classes) z += drho * cfg.classes.at(c.class_index).volume() * c.count;
  return z;
}

double cloud_density(std::span<const ClassState> classes, double s, const ScenarioConfig& cfg) {
  if (!(s > 0.0)) throw SingularGeometry("cloud_density: s must be > 0");
  const double a = cfg.transmitter.alpha_e;
  const double volume = cfg.transmitter.eta * a * a * a * s * s * s;
  return buoyant_mass_Z(classes, cfg) / volume + cfg.environment.rho_a;
}

}  // namespace dropletmc
