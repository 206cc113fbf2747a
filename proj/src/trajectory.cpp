#include "dropletmc/trajectory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dropletmc/errors.hpp"

namespace dropletmc {

Momentum momentum_components(double t, const Transmitter& tx) {
  return {tx.I0 * std::cos(tx.theta0), tx.F0 * t + tx.I0 * std::sin(tx.theta0)};
}

double displacement_rhs(double t, const Transmitter& tx) {
  if (t <= 0.0) return 0.0;
  if (tx.F0 == 0.0) return tx.I0 * t;

  // With u = F0 t + I0 sin(theta0) and c = I0 cos(theta0) the integrand is
  // sqrt(u^2 + c^2), dt = du / F0, and the antiderivative is
  //   (u sqrt(u^2 + c^2) + c^2 asinh(u / c)) / (2 F0).
  // asinh(u/c) equals ln(u + sqrt(u^2 + c^2)) up to a constant and avoids
  // the cancellation in u + q for negative u.
  const double c = tx.I0 * std::cos(tx.theta0);
  const double u0 = tx.I0 * std::sin(tx.theta0);
  const double u1 = tx.F0 * t + u0;
  const double q0 = std::hypot(u0, c);
  const double q1 = std::hypot(u1, c);
  const double algebraic = u1 * q1 - u0 * q0;
  const double logarithmic = c * c * (std::asinh(u1 / c) - std::asinh(u0 / c));
  return (algebraic + logarithmic) / (2.0 * tx.F0);
}

double quartic_coefficient(const Transmitter& tx, const Environment& env) {
  const double a = tx.alpha_e;
  return tx.eta * a * a * a * env.rho_a / 4.0;
}

double displacement_residual(double s, double rhs, double z, const Transmitter& tx,
                             const Environment& env) {
  const double s2 = s * s;
  return quartic_coefficient(tx, env) * s2 * s2 + z * s - rhs;
}

double solve_s_for_rhs(double rhs, double z, const Transmitter& tx, const Environment& env,
                       double t, RootSolverOptions opts) {
  if (!(z >= 0.0)) throw InvalidParameter("solve_s: Z must be >= 0");
  if (!(rhs >= 0.0) || !std::isfinite(rhs)) throw InvalidParameter("solve_s: bad right-hand side");
  if (rhs == 0.0) return 0.0;

  auto f = [&](double s) { return displacement_residual(s, rhs, z, tx, env); };

  double lo = 0.0;
  double f_lo = -rhs;
  double hi = 1.0;
  double f_hi = f(hi);
  int iter = 0;
  while (f_hi < 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
    if (++iter > opts.max_iterations || !std::isfinite(hi)) {
      throw NumericalFailure("solve_s: could not bracket the root", t, z, lo, hi);
    }
  }
  if (f_hi == 0.0) return hi;

  // Illinois false position; a bisection step is forced whenever the
  // previous step failed to halve the bracket.
  int side = 0;  // +1: lo moved last, -1: hi moved last
  bool bisect_next = false;
  for (; iter < opts.max_iterations; ++iter) {
    const double width = hi - lo;
    const double tol = std::max(opts.abs_tol * std::min(1.0, hi),
                                4.0 * std::numeric_limits<double>::epsilon() * hi);
    if (width <= tol) return 0.5 * (lo + hi);

    double m = bisect_next ? 0.5 * (lo + hi) : (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(m > lo && m < hi)) m = 0.5 * (lo + hi);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (fm < 0.0) {
      lo = m;
      f_lo = fm;
      if (side == +1) f_hi *= 0.5;
      side = +1;
    } else {
      hi = m;
      f_hi = fm;
      if (side == -1) f_lo *= 0.5;
      side = -1;
    }
    bisect_next = !bisect_next && (hi - lo) > 0.5 * width;
  }
  throw NumericalFailure("solve_s: no convergence within " + std::to_string(opts.max_iterations) +
                             " iterations",
                         t, z, lo, hi);
}

double solve_s(double t, double z, const Transmitter& tx, const Environment& env,
               RootSolverOptions opts) {
  if (!(t >= 0.0)) throw InvalidParameter("solve_s: t must be >= 0");
  return solve_s_for_rhs(displacement_rhs(t, tx), z, tx, env, t, opts);
}

double theta_at(double t, const Transmitter& tx) {
  return std::atan(tx.F0 * t / (tx.I0 * std::cos(tx.theta0)) + std::tan(tx.theta0));
}

TrajectoryPoint advance_position(const TrajectoryPoint& prev, double s_new, double theta_new,
                                 double dt, double t_new, double alpha_e) {
  if (s_new < prev.s) {
    throw InvalidStep("advance_position: displacement decreased from " + std::to_string(prev.s) +
                      " to " + std::to_string(s_new));
  }
  if (!(dt > 0.0)) throw InvalidParameter("advance_position: dt must be > 0");
  const double ds = s_new - prev.s;
  TrajectoryPoint next = prev;
  next.t = t_new;
  next.s = s_new;
  next.theta = theta_new;
  next.x = prev.x + ds * std::cos(theta_new);
  next.y = prev.y + ds * std::sin(theta_new);
  next.r = alpha_e * s_new;
  next.v_c = ds / dt;
  return next;
}

}  // namespace dropletmc
