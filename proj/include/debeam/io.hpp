#pragma once

#include <fstream>
#include <string>

#include "debeam/scenario.hpp"

// CSV trajectory/energy writers and the run summary document. Floats are
// written with 17 significant digits so identical runs produce identical
// bytes.

namespace debeam::io {

class TrajectoryWriter {
 public:
  TrajectoryWriter(const std::string& path, int n_nodes);
  void write(const scenario::StepRecord& r);

 private:
  std::ofstream out_;
  int n_nodes_;
};

class EnergyWriter {
 public:
  explicit EnergyWriter(const std::string& path);
  void write(const scenario::EnergyRecord& r);

 private:
  std::ofstream out_;
};

void write_summary(const std::string& path, const scenario::ScenarioConfig& cfg,
                   const scenario::RunSummary& s);

}  // namespace debeam::io
