#include "debeam/io.hpp"

#include <json.hpp>

#include <cstdio>

namespace debeam::io {

namespace {

void append_g17(std::string& s, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  s += buf;
}

}  // namespace

TrajectoryWriter::TrajectoryWriter(const std::string& path, int n_nodes)
    : out_(path, std::ios::binary), n_nodes_(n_nodes) {
  if (!out_) throw SimError("cannot open trajectory file '" + path + "'");
  std::string h = "t_ms";
  const char* fields[5] = {"phi", "d1", "d2", "d3", "elec"};
  const char* comps[3] = {"x", "y", "z"};
  const char* elec_comps[3] = {"phio", "alpha", "beta"};
  for (int a = 0; a < n_nodes_; ++a) {
    for (int f = 0; f < 5; ++f) {
      for (int i = 0; i < 3; ++i) {
        h += ",n" + std::to_string(a) + "_" + fields[f] + "_";
        h += (f == 4 ? elec_comps[i] : comps[i]);
      }
    }
  }
  h += "\n";
  out_ << h;
}

void TrajectoryWriter::write(const scenario::StepRecord& r) {
  std::string line;
  line.reserve(32 * (1 + 15 * n_nodes_));
  append_g17(line, r.t);
  const Eigen::VectorXd& q = *r.q;
  for (int i = 0; i < 15 * n_nodes_; ++i) {
    line += ',';
    append_g17(line, q[i]);
  }
  line += '\n';
  out_ << line;
}

EnergyWriter::EnergyWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw SimError("cannot open energy file '" + path + "'");
  out_ << "t_ms,H_d,T_d,V_d,newton_iterations,constraint_violation\n";
}

void EnergyWriter::write(const scenario::EnergyRecord& r) {
  std::string line;
  append_g17(line, r.t);
  line += ',';
  append_g17(line, r.hamiltonian);
  line += ',';
  append_g17(line, r.kinetic);
  line += ',';
  append_g17(line, r.potential);
  line += ',' + std::to_string(r.newton_iterations) + ',';
  append_g17(line, r.constraint_violation);
  line += '\n';
  out_ << line;
}

void write_summary(const std::string& path, const scenario::ScenarioConfig& cfg,
                   const scenario::RunSummary& s) {
  nlohmann::json j;
  j["scenario"] = scenario::kind_name(cfg.kind);
  j["steps"] = s.steps;
  j["dt_ms"] = cfg.dt_ms;
  j["t_end_ms"] = cfg.t_end_ms;
  j["total_newton_iterations"] = s.total_newton_iterations;
  j["max_constraint_violation"] = s.max_constraint_violation;
  j["final_tip_displacement_mm"] = {s.final_tip_displacement[0], s.final_tip_displacement[1],
                                    s.final_tip_displacement[2]};
  j["final_tip_rotation_rad"] = s.final_tip_rotation;
  j["hamiltonian"] = {{"first", s.hamiltonian_first},
                      {"last", s.hamiltonian_last},
                      {"min", s.hamiltonian_min},
                      {"max", s.hamiltonian_max}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open summary file '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace debeam::io
