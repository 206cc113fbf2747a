#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dropletmc/config.hpp"
#include "dropletmc/engine.hpp"
#include "dropletmc/errors.hpp"
#include "dropletmc/output.hpp"

namespace py = pybind11;
namespace dm = dropletmc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cough-cloud droplet transmission simulator";

  auto base = py::register_exception<dm::Error>(m, "DropletError", PyExc_RuntimeError);
  py::register_exception<dm::InvalidParameter>(m, "InvalidParameter", base);
  py::register_exception<dm::MalformedConfig>(m, "MalformedConfig", base);
  py::register_exception<dm::ValidationError>(m, "ValidationError", base);
  py::register_exception<dm::NumericalFailure>(m, "NumericalFailure", base);
  py::register_exception<dm::OutOfRegime>(m, "OutOfRegime", base);
  py::register_exception<dm::SingularGeometry>(m, "SingularGeometry", base);
  py::register_exception<dm::InvalidStep>(m, "InvalidStep", base);
  py::register_exception<dm::DegenerateDistribution>(m, "DegenerateDistribution", base);
  py::register_exception<dm::EnsembleError>(m, "EnsembleError", base);
  py::register_exception<dm::IoError>(m, "IoError", base);

  py::enum_<dm::Sex>(m, "Sex")
      .value("male", dm::Sex::male)
      .value("female", dm::Sex::female)
      .value("average", dm::Sex::average);
  py::enum_<dm::SettlingLaw>(m, "SettlingLaw")
      .value("paper", dm::SettlingLaw::paper)
      .value("derived", dm::SettlingLaw::derived);
  py::enum_<dm::ProbabilityForm>(m, "ProbabilityForm")
      .value("as_printed", dm::ProbabilityForm::as_printed)
      .value("moment_consistent", dm::ProbabilityForm::moment_consistent);
  py::enum_<dm::OverlapBranch>(m, "OverlapBranch")
      .value("none", dm::OverlapBranch::none)
      .value("partial_overlap", dm::OverlapBranch::partial_overlap)
      .value("encompassed", dm::OverlapBranch::encompassed);
  py::enum_<dm::SweepParameter>(m, "SweepParameter")
      .value("x_R", dm::SweepParameter::x_R)
      .value("gamma", dm::SweepParameter::gamma)
      .value("theta0", dm::SweepParameter::theta0)
      .value("sex", dm::SweepParameter::sex);

  py::class_<dm::Vec3>(m, "Vec3")
      .def(py::init<>())
      .def(py::init([](double x, double y, double z) { return dm::Vec3{x, y, z}; }), py::arg("x"),
           py::arg("y"), py::arg("z"))
      .def_readwrite("x", &dm::Vec3::x)
      .def_readwrite("y", &dm::Vec3::y)
      .def_readwrite("z", &dm::Vec3::z)
      .def("__repr__", [](const dm::Vec3& v) {
        return "Vec3(" + py::repr(py::float_(v.x)).cast<std::string>() + ", " +
               py::repr(py::float_(v.y)).cast<std::string>() + ", " +
               py::repr(py::float_(v.z)).cast<std::string>() + ")";
      });

  py::class_<dm::Environment>(m, "Environment")
      .def(py::init<>())
      .def_readwrite("rho_a", &dm::Environment::rho_a)
      .def_readwrite("rho_f", &dm::Environment::rho_f)
      .def_readwrite("rho_d", &dm::Environment::rho_d)
      .def_readwrite("mu_a", &dm::Environment::mu_a)
      .def_readwrite("g", &dm::Environment::g);

  py::class_<dm::Transmitter>(m, "Transmitter")
      .def(py::init<>())
      .def_readwrite("position", &dm::Transmitter::position)
      .def_readwrite("I0", &dm::Transmitter::I0)
      .def_readwrite("F0", &dm::Transmitter::F0)
      .def_readwrite("theta0", &dm::Transmitter::theta0)
      .def_readwrite("v_c0", &dm::Transmitter::v_c0)
      .def_readwrite("alpha_e", &dm::Transmitter::alpha_e)
      .def_readwrite("eta", &dm::Transmitter::eta);

  py::class_<dm::DropletClass>(m, "DropletClass")
      .def(py::init<double, std::uint64_t>(), py::arg("diameter"), py::arg("initial_count"))
      .def_property_readonly("diameter", &dm::DropletClass::diameter)
      .def_property_readonly("initial_count", &dm::DropletClass::initial_count)
      .def_property_readonly("volume", &dm::DropletClass::volume);

  py::class_<dm::ReceiverGeometry>(m, "ReceiverGeometry")
      .def(py::init<dm::Vec3, double, double>(), py::arg("position"), py::arg("beta_bb"),
           py::arg("beta_ss"))
      .def_property_readonly("position", &dm::ReceiverGeometry::position)
      .def_property_readonly("beta_bb", &dm::ReceiverGeometry::beta_bb)
      .def_property_readonly("beta_ss", &dm::ReceiverGeometry::beta_ss)
      .def_property_readonly("r_R", &dm::ReceiverGeometry::r_R)
      .def_property_readonly("A_R", &dm::ReceiverGeometry::A_R)
      .def("with_position", &dm::ReceiverGeometry::with_position)
      .def("with_betas", &dm::ReceiverGeometry::with_betas);

  py::class_<dm::SimControls>(m, "SimControls")
      .def(py::init<>())
      .def_readwrite("dt", &dm::SimControls::dt)
      .def_readwrite("t_s", &dm::SimControls::t_s)
      .def_readwrite("gamma", &dm::SimControls::gamma)
      .def_readwrite("seed", &dm::SimControls::seed)
      .def_readwrite("settling_law", &dm::SimControls::settling_law)
      .def_readwrite("probability_form", &dm::SimControls::probability_form)
      .def_readwrite("stochastic", &dm::SimControls::stochastic);

  py::class_<dm::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("environment", &dm::ScenarioConfig::environment)
      .def_readwrite("transmitter", &dm::ScenarioConfig::transmitter)
      .def_readwrite("receiver", &dm::ScenarioConfig::receiver)
      .def_readwrite("classes", &dm::ScenarioConfig::classes)
      .def_readwrite("controls", &dm::ScenarioConfig::controls)
      .def("validate", &dm::ScenarioConfig::validate)
      .def("total_initial_count", &dm::ScenarioConfig::total_initial_count)
      .def("step_count", &dm::ScenarioConfig::step_count)
      .def("__eq__", [](const dm::ScenarioConfig& a, const dm::ScenarioConfig& b) { return a == b; });

  py::class_<dm::TrajectoryPoint>(m, "TrajectoryPoint")
      .def_readonly("t", &dm::TrajectoryPoint::t)
      .def_readonly("s", &dm::TrajectoryPoint::s)
      .def_readonly("theta", &dm::TrajectoryPoint::theta)
      .def_readonly("r", &dm::TrajectoryPoint::r)
      .def_readonly("x", &dm::TrajectoryPoint::x)
      .def_readonly("y", &dm::TrajectoryPoint::y)
      .def_readonly("z", &dm::TrajectoryPoint::z)
      .def_readonly("v_c", &dm::TrajectoryPoint::v_c);

  py::class_<dm::ClassState>(m, "ClassState")
      .def_readonly("class_index", &dm::ClassState::class_index)
      .def_readonly("lambda_", &dm::ClassState::lambda)
      .def_readonly("count", &dm::ClassState::count)
      .def_readonly("v_s", &dm::ClassState::v_s)
      .def_readonly("Re", &dm::ClassState::Re);

  py::class_<dm::Overlap>(m, "Overlap")
      .def_readonly("branch", &dm::Overlap::branch)
      .def_readonly("r_CS", &dm::Overlap::r_CS)
      .def_readonly("d_RC", &dm::Overlap::d_RC)
      .def_readonly("area", &dm::Overlap::area);

  py::class_<dm::ReceptionRecord>(m, "ReceptionRecord")
      .def_readonly("t", &dm::ReceptionRecord::t)
      .def_readonly("per_class_received", &dm::ReceptionRecord::per_class_received)
      .def_readonly("N_R", &dm::ReceptionRecord::N_R)
      .def_readonly("state", &dm::ReceptionRecord::state);

  py::class_<dm::ExposureMoments>(m, "ExposureMoments")
      .def(py::init([](double omega1, double omega2, double variance, dm::OverlapBranch branch) {
             return dm::ExposureMoments{omega1, omega2, variance, branch};
           }),
           py::arg("omega1"), py::arg("omega2"), py::arg("variance_partial"), py::arg("branch"))
      .def_readonly("omega1", &dm::ExposureMoments::omega1)
      .def_readonly("omega2", &dm::ExposureMoments::omega2)
      .def_readonly("variance_partial", &dm::ExposureMoments::variance_partial)
      .def_readonly("branch", &dm::ExposureMoments::branch)
      .def("mean", &dm::ExposureMoments::mean);

  py::class_<dm::StepRecord>(m, "StepRecord")
      .def_readonly("point", &dm::StepRecord::point)
      .def_readonly("Z", &dm::StepRecord::Z)
      .def_readonly("rho_c", &dm::StepRecord::rho_c)
      .def_readonly("classes", &dm::StepRecord::classes)
      .def_readonly("overlap", &dm::StepRecord::overlap)
      .def_readonly("reception", &dm::StepRecord::reception)
      .def_readonly("moments", &dm::StepRecord::moments)
      .def_readonly("probability", &dm::StepRecord::probability);

  py::class_<dm::RunSummary>(m, "RunSummary")
      .def_readonly("first_infection_time", &dm::RunSummary::first_infection_time)
      .def_readonly("total_received", &dm::RunSummary::total_received)
      .def_readonly("final_state", &dm::RunSummary::final_state)
      .def_readonly("peak_probability", &dm::RunSummary::peak_probability);

  py::class_<dm::TimeSeries>(m, "TimeSeries")
      .def_readonly("seed", &dm::TimeSeries::seed)
      .def_readonly("steps", &dm::TimeSeries::steps)
      .def_readonly("summary", &dm::TimeSeries::summary)
      .def("to_csv", [](const dm::TimeSeries& ts) { return dm::timeseries_csv(ts); });

  py::class_<dm::EnsembleStats>(m, "EnsembleStats")
      .def_readonly("n_runs", &dm::EnsembleStats::n_runs)
      .def_readonly("n_failed", &dm::EnsembleStats::n_failed)
      .def_readonly("failures", &dm::EnsembleStats::failures)
      .def_readonly("infection_frequency", &dm::EnsembleStats::infection_frequency)
      .def_readonly("half_width", &dm::EnsembleStats::half_width)
      .def_readonly("t", &dm::EnsembleStats::t)
      .def_readonly("N_R_mean", &dm::EnsembleStats::N_R_mean)
      .def_readonly("N_R_sd", &dm::EnsembleStats::N_R_sd);

  py::class_<dm::SweepPoint>(m, "SweepPoint")
      .def_readonly("value", &dm::SweepPoint::value)
      .def_readonly("infection_state", &dm::SweepPoint::infection_state)
      .def_readonly("first_infection_time", &dm::SweepPoint::first_infection_time)
      .def_readonly("peak_N_R", &dm::SweepPoint::peak_N_R)
      .def_readonly("probability", &dm::SweepPoint::probability);

  py::class_<dm::SweepResult>(m, "SweepResult")
      .def_readonly("axis", &dm::SweepResult::axis)
      .def_readonly("outcomes", &dm::SweepResult::outcomes)
      .def_readonly("config_hash", &dm::SweepResult::config_hash)
      .def_readonly("seed_policy", &dm::SweepResult::seed_policy);

  py::class_<dm::CurvePoint>(m, "CurvePoint")
      .def_readonly("x_R", &dm::CurvePoint::x_R)
      .def_readonly("t", &dm::CurvePoint::t)
      .def_readonly("step_time", &dm::CurvePoint::step_time)
      .def_readonly("probability", &dm::CurvePoint::probability)
      .def_readonly("instantaneous_probability", &dm::CurvePoint::instantaneous_probability)
      .def_readonly("branch", &dm::CurvePoint::branch);

  py::class_<dm::CurveResult>(m, "CurveResult")
      .def_readonly("points", &dm::CurveResult::points)
      .def_readonly("config_hash", &dm::CurveResult::config_hash);

  m.def("default_scenario", &dm::default_scenario, py::arg("sex") = dm::Sex::average);
  m.def("load_config", &dm::load_config, py::arg("text"));
  m.def("load_config_file", &dm::load_config_file, py::arg("path"));
  m.def("to_config_text", &dm::to_config_text, py::arg("config"));
  m.def("config_hash", &dm::config_hash, py::arg("config"));
  m.def("receiver_radius", &dm::receiver_radius, py::arg("beta_bb"), py::arg("beta_ss"));

  m.def("displacement_rhs", &dm::displacement_rhs, py::arg("t"), py::arg("transmitter"));
  m.def(
      "solve_s",
      [](double t, double z, const dm::Transmitter& tx, const dm::Environment& env) {
        return dm::solve_s(t, z, tx, env);
      },
      py::arg("t"), py::arg("Z"), py::arg("transmitter"), py::arg("environment"));
  m.def("theta_at", &dm::theta_at, py::arg("t"), py::arg("transmitter"));
  m.def("settling_velocity", &dm::settling_velocity, py::arg("d"), py::arg("v_c"),
        py::arg("environment"), py::arg("law") = dm::SettlingLaw::paper);
  m.def("intersection_area", &dm::intersection_area, py::arg("r_R"), py::arg("r_CS"),
        py::arg("d_RC"));
  m.def("q_function", &dm::q_function, py::arg("x"));
  m.def("infection_probability", &dm::infection_probability, py::arg("gamma"), py::arg("moments"),
        py::arg("form") = dm::ProbabilityForm::as_printed);

  // The drivers release the GIL; they spawn their own worker threads.
  m.def(
      "run_simulation",
      [](const dm::ScenarioConfig& cfg, std::optional<std::uint64_t> seed) {
        py::gil_scoped_release release;
        return dm::run_simulation(cfg, seed.value_or(cfg.controls.seed));
      },
      py::arg("config"), py::arg("seed") = py::none());
  m.def(
      "run_ensemble",
      [](const dm::ScenarioConfig& cfg, std::size_t n, std::uint64_t base_seed, unsigned threads) {
        py::gil_scoped_release release;
        return dm::run_ensemble(cfg, n, base_seed, threads);
      },
      py::arg("config"), py::arg("n"), py::arg("base_seed") = 1, py::arg("threads") = 0);
  m.def(
      "sweep",
      [](const dm::ScenarioConfig& cfg, dm::SweepParameter parameter,
         const std::vector<dm::SweepValue>& grid, unsigned threads) {
        py::gil_scoped_release release;
        return dm::sweep(cfg, parameter, grid, threads);
      },
      py::arg("config"), py::arg("parameter"), py::arg("grid"), py::arg("threads") = 0);
  m.def(
      "probability_curve",
      [](const dm::ScenarioConfig& cfg, const std::vector<double>& xs,
         const std::vector<double>& times, unsigned threads) {
        py::gil_scoped_release release;
        return dm::probability_curve(cfg, xs, times, threads);
      },
      py::arg("config"), py::arg("x_R_grid"), py::arg("times"), py::arg("threads") = 0);

  m.def(
      "summary_json",
      [](const dm::ScenarioConfig& cfg, const dm::TimeSeries& ts) {
        return dm::summary_json(cfg, ts).dump();
      },
      py::arg("config"), py::arg("timeseries"));
}
