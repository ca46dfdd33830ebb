#pragma once

#include <cstdint>

#include "debeam/scenario.hpp"

// Shared validation routines behind the validate-energy and
// check-derivatives commands and the acceptance suite.

namespace debeam::validation {

struct EnergyValidation {
  double max_rel_truncated = 0.0;  // closed form vs quadrature of the series integrand
  double max_rel_exact = 0.0;      // closed form vs exact-log quadrature
  int samples = 0;
};

EnergyValidation validate_energy(const scenario::ScenarioConfig& cfg, int samples = 500,
                                 std::uint64_t seed = 42);

struct DerivativeCheck {
  double tangent_rel_err = 0.0;   // step-one tangent vs finite differences
  double gradient_rel_err = 0.0;  // potential gradient, dual vs finite differences
  int gradient_samples = 0;
};

DerivativeCheck check_derivatives(const scenario::ScenarioConfig& cfg,
                                  int gradient_samples = 20, std::uint64_t seed = 43);

}  // namespace debeam::validation
