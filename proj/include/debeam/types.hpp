#pragma once

#include <stdexcept>
#include <string>

#include "debeam/linalg.hpp"

namespace debeam {

// Consistent unit system: mm - g - ms - V. Then force is N, stress is MPa
// and energy is N*mm, so the material table values can be used directly.
struct MaterialParams {
  double rho = 1.0;       // g/mm^3
  double lambda = 999.8;  // MPa
  double mu = 233.0;      // MPa
  double c1 = 5e-8;       // N/V^2
  double c2 = 1e-9;       // N/V^2
  double eps0 = 8.854e-12;  // C/(V*m); stored only, the vacuum term is not modeled
  double eta = 0.0;       // MPa*ms (Kelvin-Voigt viscosity)

  bool operator==(const MaterialParams&) const = default;
};

struct SectionProperties {
  double A = 0.0;      // mm^2
  double J11 = 0.0;    // mm^4
  double J22 = 0.0;    // mm^4
  double J12 = 0.0;    // mm^4
  double Jp = 0.0;     // mm^4
  double J1111 = 0.0;  // mm^6
  double J2222 = 0.0;  // mm^6
  double J1122 = 0.0;  // mm^6
  double A_rho = 0.0;  // g/mm
  // Rotary inertia of the cross-section paired with the director rates,
  // principal-axis convention: M_rho1 = rho*J22, M_rho2 = rho*J11.
  double M_rho1 = 0.0;  // g*mm
  double M_rho2 = 0.0;  // g*mm
};

SectionProperties square_section(double side, double rho);

// Per-node configuration: centerline position, director triad and the three
// electrical unknowns (phi_o [V], alpha [V/mm], beta [V/mm]).
struct NodeState {
  Vec3d phi{};
  Vec3d d1{1.0, 0.0, 0.0};
  Vec3d d2{0.0, 1.0, 0.0};
  Vec3d d3{0.0, 0.0, 1.0};
  Vec3d elec{};
};

struct ReferenceFrame {
  Vec3d d1{1.0, 0.0, 0.0};
  Vec3d d2{0.0, 1.0, 0.0};
  Vec3d d3{0.0, 0.0, 1.0};
  double s = 0.0;  // arc-length coordinate, mm
};

// Strain measures at an element midpoint. Gamma/K are the reference measures,
// gamma/kappa their spatial counterparts, eps = (alpha, beta, phi_o') and
// e = (alpha', beta', 0).
struct BeamStrains {
  Vec3d Gamma{};
  Vec3d K{};
  Vec3d gamma{};
  Vec3d kappa{};
  Vec3d eps{};
  Vec3d e{};
};

// Quadrature points with J below this abort the Newton step; the log terms
// in the energy are singular at J = 0.
inline constexpr double kMinJacobian = 1e-9;

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateElement : SimError {
  explicit DegenerateElement(const std::string& msg) : SimError(msg) {}
};

struct InvertedElement : SimError {
  int element = -1;
  InvertedElement(const std::string& msg, int elem) : SimError(msg), element(elem) {}
};

struct NonpositiveJacobian : SimError {
  int element = -1;
  int gauss_point = -1;
  explicit NonpositiveJacobian(const std::string& msg, int elem = -1, int gp = -1)
      : SimError(msg), element(elem), gauss_point(gp) {}
};

struct SingularTangent : SimError {
  explicit SingularTangent(const std::string& msg) : SimError(msg) {}
};

struct NoConvergence : SimError {
  int step = -1;
  int iterations = 0;
  double last_residual = 0.0;
  NoConvergence(const std::string& msg, int iters, double resid)
      : SimError(msg), iterations(iters), last_residual(resid) {}
};

struct ConfigError : SimError {
  std::string field;
  ConfigError(const std::string& field_name, const std::string& msg)
      : SimError(field_name + ": " + msg), field(field_name) {}
};

}  // namespace debeam
