#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dropletmc/errors.hpp"
#include "dropletmc/model_params.hpp"

using namespace dropletmc;

TEST_CASE("face dimensions per sex") {
  const auto m = face_dimensions(Sex::male);
  CHECK(m.beta_bb == doctest::Approx(0.09131));
  CHECK(m.beta_ss == doctest::Approx(0.0757));
  const auto f = face_dimensions(Sex::female);
  CHECK(f.beta_bb == doctest::Approx(0.08853));
  CHECK(f.beta_ss == doctest::Approx(0.06901));
  const auto a = face_dimensions(Sex::average);
  CHECK(a.beta_bb == doctest::Approx(0.08992));
  CHECK(a.beta_ss == doctest::Approx(0.072355));
}

TEST_CASE("droplet table totals 4973 for every sex") {
  for (auto sex : {Sex::male, Sex::female, Sex::average}) {
    CHECK(default_scenario(sex).total_initial_count() == 4973);
  }
  std::uint64_t sum = 0;
  for (const auto& bin : cough_droplet_table()) sum += bin.count;
  CHECK(sum == 4973);
  CHECK(cough_droplet_table().size() == 17);
}

TEST_CASE("receiver radius") {
  CHECK(receiver_radius(3.0, 4.0) == doctest::Approx(2.5));
  CHECK(receiver_radius(0.08992, 0.072355) == doctest::Approx(0.05771).epsilon(1e-4));
  CHECK_THROWS_AS(receiver_radius(1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(receiver_radius(-1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(receiver_radius(std::nan(""), 1.0), InvalidParameter);
}

TEST_CASE("receiver geometry derives radius and area") {
  const ReceiverGeometry rx({1.5, 1.7, 0.0}, 0.03, 0.04);
  CHECK(rx.r_R() == doctest::Approx(0.025));
  CHECK(rx.A_R() == doctest::Approx(std::numbers::pi * 0.025 * 0.025));
  const auto moved = rx.with_position({2.0, 1.0, 0.5});
  CHECK(moved.r_R() == rx.r_R());
  CHECK(moved.position().x == 2.0);
  const auto rescaled = rx.with_betas(3.0, 4.0);
  CHECK(rescaled.r_R() == doctest::Approx(2.5));
  CHECK(rescaled.position() == rx.position());
}

TEST_CASE("male face is larger than female") {
  CHECK(default_scenario(Sex::male).receiver.A_R() > default_scenario(Sex::female).receiver.A_R());
}

TEST_CASE("droplet class volume") {
  const DropletClass c(1e-3, 12);
  CHECK(c.volume() == doctest::Approx(std::numbers::pi / 6.0 * 1e-9));
  CHECK_THROWS_AS(DropletClass(0.0, 1), ValidationError);
}

TEST_CASE("default scenario") {
  const auto cfg = default_scenario();
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.environment.rho_a == 1.172);
  CHECK(cfg.transmitter.position == Vec3{0.0, 1.7, 0.0});
  CHECK(cfg.receiver.position() == Vec3{1.5, 1.7, 0.0});
  CHECK(cfg.classes.size() == 17);
  CHECK(cfg.classes.front().diameter() == doctest::Approx(2e-6));
  CHECK(cfg.classes.back().diameter() == doctest::Approx(2e-3));
  CHECK(cfg.step_count() == 101);
}

TEST_CASE("step count includes t = 0") {
  auto cfg = default_scenario();
  cfg.controls.dt = 0.3;
  cfg.controls.t_s = 1.0;
  CHECK(cfg.step_count() == 4);
  cfg.controls.dt = 0.25;
  CHECK(cfg.step_count() == 5);
}

TEST_CASE("validation names the offending field") {
  auto check_field = [](ScenarioConfig cfg, const std::string& field) {
    try {
      cfg.validate();
      FAIL("expected ValidationError for " << field);
    } catch (const ValidationError& e) {
      CHECK(e.field() == field);
    }
  };
  auto cfg = default_scenario();
  cfg.controls.dt = 0.0;
  check_field(cfg, "controls.dt");

  cfg = default_scenario();
  cfg.controls.t_s = -1.0;
  check_field(cfg, "controls.t_s");

  cfg = default_scenario();
  cfg.controls.t_s = 0.05;
  check_field(cfg, "controls.dt");

  cfg = default_scenario();
  cfg.controls.gamma = -1;
  check_field(cfg, "controls.gamma");

  cfg = default_scenario();
  cfg.environment.rho_f = 2.0;
  check_field(cfg, "environment.rho_f");

  cfg = default_scenario();
  cfg.environment.rho_d = 1.0;
  check_field(cfg, "environment.rho_d");

  cfg = default_scenario();
  cfg.transmitter.alpha_e = 0.0;
  check_field(cfg, "transmitter.alpha_e");

  cfg = default_scenario();
  cfg.classes.clear();
  check_field(cfg, "droplet_class");
}

TEST_CASE("enum text round trip") {
  for (auto s : {Sex::male, Sex::female, Sex::average}) CHECK(parse_sex(to_string(s)) == s);
  for (auto l : {SettlingLaw::paper, SettlingLaw::derived}) {
    CHECK(parse_settling_law(to_string(l)) == l);
  }
  for (auto f : {ProbabilityForm::as_printed, ProbabilityForm::moment_consistent}) {
    CHECK(parse_probability_form(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_sex("other"), ValidationError);
}
