#pragma once

// Droplet populations inside the cloud: regime-dependent settling, the
// mean-count decay it causes, Gaussian sampling of counts, and the mass and
// density aggregates the trajectory needs.

#include <cstddef>
#include <span>

#include "dropletmc/model_params.hpp"
#include "dropletmc/rng.hpp"

namespace dropletmc {

enum class FlowRegime { stokes, intermediate, newton };

struct ClassState {
  std::size_t class_index = 0;
  double lambda = 0.0;  // mean count
  double count = 0.0;   // sampled (or mean) count, after depletion
  double v_s = 0.0;
  double Re = 0.0;
};

// d rho_a v_c / mu_a, with v_c the cloud speed.
double reynolds(double d, double v_c, const Environment& env);

// Stokes below 2, intermediate on [2, 500], Newton on (500, 2e5].
// Throws OutOfRegime above 2e5 or for negative input.
FlowRegime flow_regime(double Re);

// 24/Re, 18.5/Re^0.6 or 0.44. Requires 0 < Re <= 2e5.
double drag_coefficient(double Re);

// Terminal velocity of a droplet of diameter d; the regime is picked from
// reynolds(d, v_c). SettlingLaw::derived solves the drag/weight balance
// with ambient-density drag inside the selected regime.
double settling_velocity(double d, double v_c, const Environment& env, SettlingLaw law);

// Settling loss of the mean count over one step:
//   -3 v_s lambda dt / (2 alpha_e s).
// Throws SingularGeometry when s == 0.
double lambda_step(double lambda, double v_s, double s, double alpha_e, double dt);

// Draw from N(lambda, lambda) clamped at 0; exactly 0 for lambda == 0.
double sample_count(double lambda, GaussianSampler& rng);

// Sum over classes of (rho_d - rho_f) V_k N_k, using ClassState::count.
double buoyant_mass_Z(std::span<const ClassState> classes, const ScenarioConfig& cfg);

// rho_a + sum (rho_d - rho_f) N_k V_k / (eta alpha_e^3 s^3).
double cloud_density(std::span<const ClassState> classes, double s, const ScenarioConfig& cfg);

}  // namespace dropletmc
