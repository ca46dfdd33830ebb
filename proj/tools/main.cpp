#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "debeam/config.hpp"
#include "debeam/io.hpp"
#include "debeam/validation.hpp"

namespace {

using debeam::scenario::ScenarioConfig;

int fail_with_json(const std::string& type, const std::string& message,
                   const nlohmann::json& extra = {}) {
  nlohmann::json j;
  j["error"] = {{"type", type}, {"message", message}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j["error"][it.key()] = it.value();
  std::cerr << j.dump() << "\n";
  return 1;
}

int run_simulate(const ScenarioConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  debeam::scenario::ScenarioSetup setup = debeam::scenario::build_scenario(cfg);
  debeam::io::TrajectoryWriter traj(cfg.out_dir + "/trajectory.csv", setup.mesh.n_nodes());
  debeam::io::EnergyWriter energy(cfg.out_dir + "/energy.csv");
  debeam::scenario::RunCallbacks cb;
  cb.on_state = [&traj](const debeam::scenario::StepRecord& r) { traj.write(r); };
  cb.on_energy = [&energy](const debeam::scenario::EnergyRecord& r) { energy.write(r); };
  debeam::scenario::RunSummary summary = debeam::scenario::run(cfg, cb);
  debeam::io::write_summary(cfg.out_dir + "/summary.json", cfg, summary);
  std::printf("scenario %s: %d steps, %ld Newton iterations\n",
              debeam::scenario::kind_name(cfg.kind), summary.steps,
              summary.total_newton_iterations);
  std::printf("max constraint violation %.3e\n", summary.max_constraint_violation);
  std::printf("final tip displacement [%.6e %.6e %.6e] mm, rotation %.6e rad\n",
              summary.final_tip_displacement[0], summary.final_tip_displacement[1],
              summary.final_tip_displacement[2], summary.final_tip_rotation);
  std::printf("outputs in %s: trajectory.csv energy.csv summary.json\n", cfg.out_dir.c_str());
  return 0;
}

int run_validate_energy(const ScenarioConfig& cfg) {
  auto v = debeam::validation::validate_energy(cfg);
  std::printf("closed form vs series-integrand quadrature: max relative deviation %.3e\n",
              v.max_rel_truncated);
  std::printf("closed form vs exact-log quadrature:        max relative deviation %.3e\n",
              v.max_rel_exact);
  bool ok = v.max_rel_truncated <= 1e-10 && v.max_rel_exact <= 1e-2;
  if (!ok) {
    return fail_with_json("ValidationFailed", "energy validation outside tolerances",
                          {{"max_rel_truncated", v.max_rel_truncated},
                           {"max_rel_exact", v.max_rel_exact}});
  }
  std::printf("energy validation passed (%d samples)\n", v.samples);
  return 0;
}

int run_check_derivatives(const ScenarioConfig& cfg) {
  auto d = debeam::validation::check_derivatives(cfg);
  std::printf("tangent vs finite differences:  max relative error %.3e\n", d.tangent_rel_err);
  std::printf("gradient dual vs finite diff.:  max relative error %.3e (%d states)\n",
              d.gradient_rel_err, d.gradient_samples);
  bool ok = d.tangent_rel_err <= 1e-6 && d.gradient_rel_err <= 1e-6;
  if (!ok) {
    return fail_with_json("ValidationFailed", "derivative check outside tolerances",
                          {{"tangent_rel_err", d.tangent_rel_err},
                           {"gradient_rel_err", d.gradient_rel_err}});
  }
  std::printf("derivative check passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electromechanically coupled beam simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, energy_path;
  int stride = 0;

  CLI::App* sim = app.add_subcommand("simulate", "run a scenario and write CSV outputs");
  sim->add_option("config", config_path, "configuration file")->required();
  sim->add_option("--out", out_dir, "output directory (overrides output.dir)");
  sim->add_option("--stride", stride, "output stride (overrides output.stride)");
  sim->add_option("--energy-path", energy_path, "analytic|quadrature");

  std::string vcfg;
  CLI::App* val = app.add_subcommand("validate-energy",
                                     "compare the closed-form cross-section energy "
                                     "against numerical integration");
  val->add_option("config", vcfg, "configuration file")->required();

  std::string dcfg;
  CLI::App* chk = app.add_subcommand("check-derivatives",
                                     "compare the tangent and gradients against "
                                     "finite differences");
  chk->add_option("config", dcfg, "configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      ScenarioConfig cfg = debeam::config::load_file(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (stride > 0) cfg.stride = stride;
      if (!energy_path.empty()) {
        if (energy_path == "analytic") {
          cfg.energy_path = debeam::materials::EnergyPath::Analytic;
        } else if (energy_path == "quadrature") {
          cfg.energy_path = debeam::materials::EnergyPath::Quadrature;
        } else {
          throw debeam::ConfigError("--energy-path", "expected analytic|quadrature");
        }
      }
      return run_simulate(cfg);
    }
    if (val->parsed()) {
      return run_validate_energy(debeam::config::load_file(vcfg));
    }
    if (chk->parsed()) {
      return run_check_derivatives(debeam::config::load_file(dcfg));
    }
  } catch (const debeam::ConfigError& e) {
    return fail_with_json("ConfigError", e.what(), {{"field", e.field}});
  } catch (const debeam::NoConvergence& e) {
    return fail_with_json("NoConvergence", e.what(),
                          {{"step", e.step}, {"last_residual", e.last_residual}});
  } catch (const debeam::SimError& e) {
    return fail_with_json("SimError", e.what());
  } catch (const std::exception& e) {
    return fail_with_json("InternalError", e.what());
  }
  return 0;
}
