#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "debeam/assembly.hpp"
#include "debeam/linsolve.hpp"
#include "debeam/mesh.hpp"

// Constrained variational time stepper: discrete Euler-Lagrange residual with
// nodal null-space projection, exponential-map reparametrization, Newton
// solve, momentum-consistent initialization and discrete Hamiltonian.

namespace debeam::integrator {

struct NewtonOpts {
  double tol = 1e-10;  // infinity norm of the reduced residual, scaled by dt
  int max_iter = 50;
  // tangent reuse policy used by the run loop (exact tangent is reassembled
  // whenever Newton slows down or the cache ages out)
  int refresh_steps = 50;
  int refresh_iters = 5;
  int dense_limit = 2000;
  bool force_banded = false;
};

struct Model {
  const BeamMesh* mesh = nullptr;
  DirichletMask mask;
  materials::EnergyPath path = materials::EnergyPath::Analytic;
  int quad_order = 2;
  NewtonOpts newton;
  linsolve::ReducedMap rmap;
  Eigen::VectorXd mass;  // lumped diagonal, 15 slots per node

  Model(const BeamMesh& m, DirichletMask dirichlet,
        materials::EnergyPath energy_path = materials::EnergyPath::Analytic,
        int order = 2, NewtonOpts opts = {});
};

struct StepDiagnostics {
  int iterations = 0;
  double residual_norm = 0.0;
  double constraint_violation = 0.0;
  int tangent_rebuilds = 0;
};

struct Energies {
  double hamiltonian = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
};

// Caches the factorized tangent across steps; step() refreshes it following
// the NewtonOpts policy.
class TangentCache {
 public:
  explicit TangentCache(const Model& m)
      : solver(m.rmap, m.newton.dense_limit, m.newton.force_banded) {}
  linsolve::TangentSolver solver;
  bool valid = false;
  int steps_since_rebuild = 0;
  int last_iterations = 0;
};

double discrete_lagrangian(const Eigen::VectorXd& qa, const Eigen::VectorXd& qb, double dt,
                           const Model& m);

// q_{n+1} from the nodal increments; masked slots take their scheduled values.
Eigen::VectorXd reparametrize(const Eigen::VectorXd& u, const Eigen::VectorXd& qn,
                              const Model& m, double t_next);

// Reduced discrete Euler-Lagrange residual at increment u.
Eigen::VectorXd del_residual(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                             const Eigen::VectorXd& u, double dt, const Model& m,
                             double t_next);

// Exact derivative of the reduced residual with respect to u (dense, for tests
// and the derivative-check tooling; step() assembles the same blocks into its
// cached solver).
Eigen::MatrixXd tangent(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                        const Eigen::VectorXd& u, double dt, const Model& m, double t_next);

Eigen::VectorXd step(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                     double t_curr, double dt, const Model& m,
                     StepDiagnostics* diag = nullptr, TangentCache* cache = nullptr);

// Solve for q_1 given q_0 and the initial momentum (15 slots per node; d3 and
// electrical slots are ignored by the projection).
Eigen::VectorXd initialize(const Eigen::VectorXd& q0, const Eigen::VectorXd& p0, double dt,
                           const Model& m, StepDiagnostics* diag = nullptr);

Energies discrete_hamiltonian(const Eigen::VectorXd& qn, const Eigen::VectorXd& q_next,
                              double dt, const Model& m);

// Projector eliminating the constraint-force content from the reduced nodal
// momentum (phi, d1, d2 slots).
Eigen::Matrix<double, 9, 9> node_momentum_projector(const NodeState& n, double weight,
                                                    const SectionProperties& sec);

}  // namespace debeam::integrator
