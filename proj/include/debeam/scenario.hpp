#pragma once

#include <functional>
#include <string>

#include "debeam/integrator.hpp"
#include "debeam/mesh.hpp"

// Scenario construction and the simulation driver: electrical boundary
// schedules for contraction, shear, bending and torsion, plus a custom mode
// with configurable electrode coverage.

namespace debeam::scenario {

enum class Kind { Contraction, Shear, Bending, Torsion, Custom };

// Which electrical unknowns are prescribed in the custom scenario.
enum class ElecBC { All, FixedEnd, None };

struct ScenarioConfig {
  Kind kind = Kind::Contraction;
  double length_mm = 0.1;
  double side_mm = 0.02;
  int elements = 5;
  MaterialParams material;  // built-in defaults; eta selects the damping
  double phi_o_v = 2e4;
  double alpha_v_mm = 0.0;
  double beta_v_mm = 0.0;
  double ramp_ms = 0.0;  // 0 = step application at t = 0
  ElecBC elec_bc = ElecBC::All;
  double dt_ms = 1e-4;
  double t_end_ms = 0.5;
  materials::EnergyPath energy_path = materials::EnergyPath::Analytic;
  int quad_order = 2;
  double newton_tol = 1e-10;
  int max_iterations = 50;
  std::string out_dir = "out";
  int stride = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig default_config(Kind kind);

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

struct ScenarioSetup {
  BeamMesh mesh;
  DirichletMask mask;
  Eigen::VectorXd q0;
};

ScenarioSetup build_scenario(const ScenarioConfig& cfg);

struct StepRecord {
  int step = 0;
  double t = 0.0;
  const Eigen::VectorXd* q = nullptr;
};

struct EnergyRecord {
  int step = 0;
  double t = 0.0;
  double hamiltonian = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  int newton_iterations = 0;
  double constraint_violation = 0.0;
};

struct RunCallbacks {
  std::function<void(const StepRecord&)> on_state;
  std::function<void(const EnergyRecord&)> on_energy;
};

struct RunSummary {
  int steps = 0;
  long total_newton_iterations = 0;
  double max_constraint_violation = 0.0;
  Vec3d final_tip_displacement{};
  double final_tip_rotation = 0.0;  // about the initial beam axis, radians
  double hamiltonian_first = 0.0;
  double hamiltonian_last = 0.0;
  double hamiltonian_min = 0.0;
  double hamiltonian_max = 0.0;
};

// Initialize with zero momentum, march to t_end, stream records at the
// configured stride. Throws NoConvergence with the failing step recorded.
RunSummary run(const ScenarioConfig& cfg, const RunCallbacks& cb = {});

// Tip rotation angle about the initial beam axis extracted from d1.
double tip_rotation_angle(const Eigen::VectorXd& q, const BeamMesh& mesh);

}  // namespace debeam::scenario
