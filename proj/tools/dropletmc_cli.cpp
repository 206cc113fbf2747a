// Command-line driver: run, ensemble, sweep, curve.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dropletmc/config.hpp"
#include "dropletmc/engine.hpp"
#include "dropletmc/errors.hpp"
#include "dropletmc/grid.hpp"
#include "dropletmc/output.hpp"

namespace dm = dropletmc;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dm::IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw dm::IoError("write to '" + path + "' failed");
}

std::vector<dm::SweepValue> sweep_grid(dm::SweepParameter param, const std::string& spec) {
  std::vector<dm::SweepValue> grid;
  if (param == dm::SweepParameter::sex) {
    for (auto word : dm::split_list(spec)) grid.emplace_back(dm::parse_sex(word));
  } else {
    for (double v : dm::parse_grid(spec)) grid.emplace_back(v);
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cough-cloud droplet transmission simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path, summary_path;
  std::size_t runs = 0;
  std::uint64_t base_seed = 1;
  std::string param_name, grid_spec, x_grid, times_spec;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "Single simulation; time series CSV and summary JSON");
  run->add_option("--config", config_path, "scenario file")->required();
  run->add_option("--seed", seed, "overrides controls.seed")->each([&](const std::string&) {
    seed_given = true;
  });
  run->add_option("--out", out_path, "time series CSV");
  run->add_option("--summary", summary_path, "summary JSON");

  auto* ens = app.add_subcommand("ensemble", "Independent runs over consecutive seeds");
  ens->add_option("--config", config_path, "scenario file")->required();
  ens->add_option("--runs", runs, "number of runs")->required()->check(CLI::PositiveNumber);
  ens->add_option("--base-seed", base_seed, "seed of the first run");
  ens->add_option("--out", out_path, "statistics JSON")->required();
  ens->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* swp = app.add_subcommand("sweep", "Infection state across one parameter");
  swp->add_option("--config", config_path, "scenario file")->required();
  swp->add_option("--param", param_name, "x_R | gamma | theta0 (deg) | sex")
      ->required()
      ->check(CLI::IsMember({"x_R", "gamma", "theta0", "sex"}));
  swp->add_option("--grid", grid_spec, "start:stop:step or comma list")->required();
  swp->add_option("--out", out_path, "CSV")->required();
  swp->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* crv = app.add_subcommand("curve", "Infection probability against distance and time");
  crv->add_option("--config", config_path, "scenario file")->required();
  crv->add_option("--x-grid", x_grid, "receiver distances, start:stop:step or list")->required();
  crv->add_option("--times", times_spec, "exposure times in seconds, comma list")->required();
  crv->add_option("--out", out_path, "CSV")->required();
  crv->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    auto cfg = dm::load_config_file(config_path);

    if (app.got_subcommand(run)) {
      const std::uint64_t s = seed_given ? seed : cfg.controls.seed;
      const auto ts = dm::run_simulation(cfg, s);
      if (!out_path.empty()) {
        auto out = open_out(out_path);
        dm::write_timeseries_csv(out, ts);
        finish(out, out_path);
      }
      const auto summary = dm::summary_json(cfg, ts).dump(2) + "\n";
      if (!summary_path.empty()) {
        auto out = open_out(summary_path);
        out << summary;
        finish(out, summary_path);
      } else {
        std::cout << summary;
      }
    } else if (app.got_subcommand(ens)) {
      const auto stats = dm::run_ensemble(cfg, runs, base_seed, threads);
      auto out = open_out(out_path);
      out << dm::ensemble_json(cfg, stats, base_seed).dump(2) << '\n';
      finish(out, out_path);
      for (const auto& f : stats.failures) std::cerr << "excluded: " << f << '\n';
    } else if (app.got_subcommand(swp)) {
      const auto param = dm::parse_sweep_parameter(param_name);
      const auto result = dm::sweep(cfg, param, sweep_grid(param, grid_spec), threads);
      auto out = open_out(out_path);
      dm::write_sweep_csv(out, result);
      finish(out, out_path);
    } else if (app.got_subcommand(crv)) {
      const auto result =
          dm::probability_curve(cfg, dm::parse_grid(x_grid), dm::parse_grid(times_spec), threads);
      auto out = open_out(out_path);
      dm::write_curve_csv(out, result);
      finish(out, out_path);
    }
  } catch (const dm::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const dm::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const dm::OutOfRegime& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const dm::SingularGeometry& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const dm::InvalidStep& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const dm::EnsembleError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const dm::Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
