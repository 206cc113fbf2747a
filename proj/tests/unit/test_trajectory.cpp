#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dropletmc/errors.hpp"
#include "dropletmc/trajectory.hpp"
#include "oracles.hpp"

using namespace dropletmc;

namespace {

double integrand(double tau, const Transmitter& tx) {
  return std::sqrt(tx.F0 * tx.F0 * tau * tau + 2.0 * tx.F0 * tx.I0 * std::sin(tx.theta0) * tau +
                   tx.I0 * tx.I0);
}

double lhs(double s, double z, const Transmitter& tx, const Environment& env) {
  return tx.eta * std::pow(tx.alpha_e, 3) * env.rho_a / 4.0 * std::pow(s, 4) + z * s;
}

// Buoyant mass of the default droplet table, summed directly.
double table_mass(const ScenarioConfig& cfg) {
  const double drho = cfg.environment.rho_d - cfg.environment.rho_f;
  double z = 0.0;
  for (const auto& c : cfg.classes) {
    z += drho * std::numbers::pi / 6.0 * std::pow(c.diameter(), 3) *
         static_cast<double>(c.initial_count());
  }
  return z;
}

}  // namespace

TEST_CASE("momentum components") {
  Transmitter tx;
  auto m = momentum_components(0.0, tx);
  CHECK(m.x == doctest::Approx(tx.I0));
  CHECK(m.y == 0.0);

  tx.theta0 = 0.3;
  m = momentum_components(0.0, tx);
  CHECK(m.x == doctest::Approx(tx.I0 * std::cos(0.3)));
  CHECK(m.y == doctest::Approx(tx.I0 * std::sin(0.3)));

  tx.theta0 = 0.0;
  m = momentum_components(1.0, tx);
  CHECK(m.x == doctest::Approx(0.0131));
  CHECK(m.y == doctest::Approx(0.0023));
}

TEST_CASE("displacement rhs") {
  Transmitter tx;
  CHECK(displacement_rhs(0.0, tx) == 0.0);

  SUBCASE("matches quadrature at t = 1 s") {
    const double oracle = oracle::integrate([&](double u) { return integrand(u, tx); }, 0.0, 1.0);
    CHECK(std::fabs(displacement_rhs(1.0, tx) - oracle) <= 1e-9 * oracle);
  }

  SUBCASE("matches quadrature for tilted emission and long times") {
    for (double theta : {-1.2, -0.6, -0.1, 0.4, 1.0}) {
      for (double t : {0.05, 0.7, 3.0, 10.0}) {
        tx.theta0 = theta;
        const double oracle = oracle::integrate([&](double u) { return integrand(u, tx); }, 0.0, t);
        CHECK(std::fabs(displacement_rhs(t, tx) - oracle) <= 1e-9 * oracle);
      }
    }
  }

  SUBCASE("log-form antiderivative at zero angle") {
    // int sqrt(F^2 t^2 + I^2) = [t q + (I^2/F) ln(F t + q)] / 2, q = sqrt(F^2 t^2 + I^2)
    const double F = tx.F0;
    const double I = tx.I0;
    for (double t : {0.1, 1.0, 5.0}) {
      const double q = std::hypot(F * t, I);
      const double expected = 0.5 * (t * q + I * I / F * (std::log(F * t + q) - std::log(I)));
      CHECK(displacement_rhs(t, tx) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  SUBCASE("zero buoyancy limit") {
    tx.F0 = 0.0;
    for (double t : {0.0, 0.5, 3.0}) CHECK(displacement_rhs(t, tx) == doctest::Approx(tx.I0 * t));
    tx.F0 = 1e-14;
    CHECK(displacement_rhs(2.0, tx) == doctest::Approx(tx.I0 * 2.0).epsilon(1e-9));
  }

  SUBCASE("increasing in t") {
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double r = displacement_rhs(0.1 * i, tx);
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("solve_s") {
  const Environment env;
  Transmitter tx;

  CHECK(solve_s(0.0, 1e-3, tx, env) == 0.0);

  SUBCASE("closed form with no linear term") {
    for (double t : {0.1, 1.0, 4.0}) {
      const double rhs = displacement_rhs(t, tx);
      const double a = tx.eta * std::pow(tx.alpha_e, 3) * env.rho_a / 4.0;
      CHECK(solve_s(t, 0.0, tx, env) == doctest::Approx(std::pow(rhs / a, 0.25)).epsilon(1e-12));
    }
  }

  SUBCASE("bisection oracle at t = 0.5 s with table mass") {
    const auto cfg = default_scenario();
    const double z = table_mass(cfg);
    const double rhs = oracle::integrate([&](double u) { return integrand(u, tx); }, 0.0, 0.5);
    const double expected =
        oracle::bisect([&](double s) { return lhs(s, z, tx, env) - rhs; }, 0.0, 10.0);
    CHECK(std::fabs(solve_s(0.5, z, tx, env) - expected) < 1e-9);
  }

  SUBCASE("residual is tiny on random inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ut(0.0, 20.0), uz(0.0, 1e-4), uth(-1.4, 1.4);
    for (int i = 0; i < 200; ++i) {
      tx.theta0 = uth(gen);
      const double t = ut(gen);
      const double z = uz(gen);
      const double s = solve_s(t, z, tx, env);
      const double rhs = displacement_rhs(t, tx);
      CHECK(s >= 0.0);
      CHECK(std::fabs(displacement_residual(s, rhs, z, tx, env)) <= 1e-9 * std::max(rhs, 1e-300));
    }
  }

  SUBCASE("heavier cloud travels less") {
    CHECK(solve_s(1.0, 1e-4, tx, env) < solve_s(1.0, 1e-6, tx, env));
  }

  SUBCASE("iteration budget exhaustion reports the bracket") {
    RootSolverOptions opts;
    opts.max_iterations = 1;
    opts.abs_tol = 1e-300;
    try {
      solve_s(1.0, 1e-5, tx, env, opts);
      FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
      CHECK(e.t() == 1.0);
      CHECK(e.z() == 1e-5);
      CHECK(e.bracket_lo() <= e.bracket_hi());
    }
  }

  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(solve_s(-1.0, 0.0, tx, env), InvalidParameter);
    CHECK_THROWS_AS(solve_s(1.0, -1.0, tx, env), InvalidParameter);
  }
}

TEST_CASE("direction") {
  Transmitter tx;
  CHECK(theta_at(0.0, tx) == 0.0);
  tx.theta0 = -0.4;
  CHECK(theta_at(0.0, tx) == doctest::Approx(-0.4));
  tx.theta0 = 0.0;
  CHECK(theta_at(1.0, tx) == doctest::Approx(std::atan(0.0023 / 0.0131)));
  CHECK(theta_at(1.0, tx) == doctest::Approx(0.1738).epsilon(1e-3));
  CHECK(theta_at(1e9, tx) == doctest::Approx(std::numbers::pi / 2.0));
  double prev = -1.0;
  for (int i = 0; i < 50; ++i) {
    const double th = theta_at(0.2 * i, tx);
    CHECK(th >= prev);
    prev = th;
  }
}

TEST_CASE("advance position") {
  TrajectoryPoint p0;
  p0.t = 0.0;
  p0.y = 1.7;
  const double a = 0.2116;

  auto same = advance_position(p0, 0.0, 0.3, 0.1, 0.1, a);
  CHECK(same.x == p0.x);
  CHECK(same.y == p0.y);
  CHECK(same.v_c == 0.0);
  CHECK(same.t == doctest::Approx(0.1));

  auto h = advance_position(p0, 0.1, 0.0, 0.1, 0.1, a);
  CHECK(h.x == doctest::Approx(0.1));
  CHECK(h.y == doctest::Approx(1.7));
  CHECK(h.v_c == doctest::Approx(1.0));
  CHECK(h.r == doctest::Approx(a * 0.1));
  CHECK(h.s == doctest::Approx(0.1));

  auto v = advance_position(p0, 0.1, std::numbers::pi / 2.0, 0.1, 0.1, a);
  CHECK(v.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.y == doctest::Approx(1.8));

  CHECK_THROWS_AS(advance_position(h, 0.05, 0.0, 0.1, 0.2, a), InvalidStep);
}
