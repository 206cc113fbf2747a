#pragma once

// Buoyant puff trajectory.
//
// The cloud moves along a curvilinear axis s. Integrating the momentum
// balance from rest gives the quartic
//
//     (eta alpha_e^3 rho_a / 4) s^4 + Z s = R(t),
//     R(t) = int_0^t sqrt(F0^2 tau^2 + 2 F0 I0 sin(theta0) tau + I0^2) dtau,
//
// where Z is the buoyant droplet mass. The left side is strictly increasing
// on s >= 0, so there is exactly one non-negative root.

#include "dropletmc/model_params.hpp"

namespace dropletmc {

struct TrajectoryPoint {
  double t = 0.0;
  double s = 0.0;
  double theta = 0.0;
  double r = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double v_c = 0.0;
};

struct Momentum {
  double x;
  double y;
};

Momentum momentum_components(double t, const Transmitter& tx);

// Closed-form R(t). Uses the F0 -> 0 limit I0 t when F0 == 0.
double displacement_rhs(double t, const Transmitter& tx);

// Quartic coefficient eta alpha_e^3 rho_a / 4.
double quartic_coefficient(const Transmitter& tx, const Environment& env);

// Residual of the displacement quartic, LHS(s) - rhs.
double displacement_residual(double s, double rhs, double z, const Transmitter& tx,
                             const Environment& env);

struct RootSolverOptions {
  double abs_tol = 1e-12;  // m
  int max_iterations = 200;
};

// Non-negative root of the quartic for a given right-hand side.
// Throws NumericalFailure (carrying t, Z and the last bracket) when the
// iteration budget runs out.
double solve_s_for_rhs(double rhs, double z, const Transmitter& tx, const Environment& env,
                       double t = 0.0, RootSolverOptions opts = {});

double solve_s(double t, double z, const Transmitter& tx, const Environment& env,
               RootSolverOptions opts = {});

double theta_at(double t, const Transmitter& tx);

// Moves the cloud centre by (s_new - prev.s) along theta_new.
// Throws InvalidStep if s_new < prev.s.
TrajectoryPoint advance_position(const TrajectoryPoint& prev, double s_new, double theta_new,
                                 double dt, double t_new, double alpha_e);

}  // namespace dropletmc
