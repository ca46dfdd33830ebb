#include "debeam/integrator.hpp"

#include <cmath>
#include <limits>

#include "debeam/so3.hpp"

namespace debeam::integrator {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Mat15x9 = Eigen::Matrix<double, 15, 9>;

std::array<double, 9> node_increments(const VectorXd& u, int a) {
  std::array<double, 9> r;
  for (int i = 0; i < 9; ++i) r[i] = u[kGen * a + i];
  return r;
}

// masked slots get their prescribed increments before the update map runs
void fill_masked_increments(VectorXd& u, const VectorXd& qn, const Model& m, double t_next) {
  for (int a = 0; a < m.mesh->n_nodes(); ++a) {
    if (!m.mask.any(a)) continue;
    NodeSchedule sch = m.mask.schedule(a, t_next);
    NodeState n = node_state(qn, a);
    for (int i = 0; i < 3; ++i) {
      if (m.mask.mask[a][i]) u[kGen * a + i] = sch.phi[i] - n.phi[i];
      if (m.mask.mask[a][3 + i]) u[kGen * a + 3 + i] = sch.theta[i];
      if (m.mask.mask[a][6 + i]) u[kGen * a + 6 + i] = sch.elec[i] - n.elec[i];
    }
  }
}

template <typename S>
void reparam_node_kernel(const std::array<S, 9>& u, const NodeState& qn, Vec3<S>& phi,
                         Vec3<S>& d1, Vec3<S>& d2, Vec3<S>& d3, Vec3<S>& elec) {
  Vec3<S> th{u[3], u[4], u[5]};
  Mat3<S> R = so3::exp_map(th);
  auto rot = [&R](const Vec3d& d) {
    Vec3<S> v{S(d[0]), S(d[1]), S(d[2])};
    return R * v;
  };
  for (int i = 0; i < 3; ++i) {
    phi[i] = qn.phi[i] + u[i];
    elec[i] = qn.elec[i] + u[6 + i];
  }
  d1 = rot(qn.d1);
  d2 = rot(qn.d2);
  d3 = rot(qn.d3);
}

Mat15x9 reparam_jacobian(const std::array<double, 9>& u, const NodeState& qn) {
  using D9 = Dual<double, 9>;
  std::array<D9, 9> ud;
  for (int i = 0; i < 9; ++i) {
    ud[i].v = u[i];
    ud[i].d[i] = 1.0;
  }
  Vec3<D9> phi, d1, d2, d3, elec;
  reparam_node_kernel(ud, qn, phi, d1, d2, d3, elec);
  Mat15x9 J = Mat15x9::Zero();
  auto put = [&J](int row, const Vec3<D9>& v) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 9; ++j) J(row + i, j) = v[i].d[j];
  };
  put(0, phi);
  put(3, d1);
  put(6, d2);
  put(9, d3);
  put(12, elec);
  return J;
}

// r(x) = -M (x - qc)/dt - dt/2 gradV(mid) - dt/2 f_vis(mid, (x - qc)/dt);
// the viscous force enters the balance as a resisting force.
VectorXd residual_core(const VectorXd& qc, const VectorXd& x, double dt, const Model& m) {
  VectorXd mid = 0.5 * (qc + x);
  VectorXd r = -(m.mass.array() * (x - qc).array()).matrix() / dt;
  r -= 0.5 * dt * assembly::grad_potential(mid, *m.mesh, m.path, m.quad_order);
  if (m.mesh->material.eta != 0.0) {
    VectorXd v = (x - qc) / dt;
    r -= 0.5 * dt * assembly::viscous_generalized_force(mid, v, *m.mesh, m.quad_order);
  }
  return r;
}

// constant part of the step residual: D2 L_d(q_prev, q_curr) + f_n^+
VectorXd step_bias(const VectorXd& qp, const VectorXd& qc, double dt, const Model& m) {
  VectorXd mid = 0.5 * (qp + qc);
  VectorXd b = (m.mass.array() * (qc - qp).array()).matrix() / dt;
  b -= 0.5 * dt * assembly::grad_potential(mid, *m.mesh, m.path, m.quad_order);
  if (m.mesh->material.eta != 0.0) {
    VectorXd v = (qc - qp) / dt;
    b -= 0.5 * dt * assembly::viscous_generalized_force(mid, v, *m.mesh, m.quad_order);
  }
  return b;
}

struct SolveContext {
  const Model* m = nullptr;
  double dt = 0.0;
  double t_next = 0.0;
  double sigma = 1.0;   // +1 step, -1 initialization
  VectorXd qc;          // projection configuration
  VectorXd cpart;       // b (step) or -p0 (initialization)
  std::vector<Mat15x9> P;
};

SolveContext make_context(const VectorXd& qc, const Model& m, double dt, double t_next,
                          double sigma, VectorXd cpart) {
  SolveContext c;
  c.m = &m;
  c.dt = dt;
  c.t_next = t_next;
  c.sigma = sigma;
  c.qc = qc;
  c.cpart = std::move(cpart);
  c.P.resize(m.mesh->n_nodes());
  for (int a = 0; a < m.mesh->n_nodes(); ++a) {
    c.P[a] = assembly::node_null_space(node_state(qc, a));
  }
  return c;
}

VectorXd reduce_projected(const SolveContext& c, const VectorXd& full) {
  const Model& m = *c.m;
  VectorXd red(m.rmap.total);
  for (int a = 0; a < m.mesh->n_nodes(); ++a) {
    Eigen::Matrix<double, 9, 1> ra = c.P[a].transpose() * full.segment<15>(kDof * a);
    for (int g = 0; g < kGen; ++g) {
      int idx = m.rmap.index[a][g];
      if (idx >= 0) red[idx] = ra(g);
    }
  }
  return red;
}

VectorXd reduced_residual(const SolveContext& c, const VectorXd& x) {
  VectorXd full = c.cpart + c.sigma * residual_core(c.qc, x, c.dt, *c.m);
  return reduce_projected(c, full);
}

// seeded mid-configuration and velocity for the viscous tangent pass
void seed_vis(const VectorXd& qc, const VectorXd& x, int node, int base, double dt,
              kinematics::NodeVars<Dual<double, 30>>& cm,
              kinematics::NodeVars<Dual<double, 30>>& vel) {
  using D30 = Dual<double, 30>;
  const double* pc = qc.data() + kDof * node;
  const double* px = x.data() + kDof * node;
  D30* cs[5] = {cm.phi.c.data(), cm.d1.c.data(), cm.d2.c.data(), cm.d3.c.data(),
                cm.elec.c.data()};
  D30* vs[5] = {vel.phi.c.data(), vel.d1.c.data(), vel.d2.c.data(), vel.d3.c.data(),
                vel.elec.c.data()};
  for (int blk = 0; blk < 5; ++blk) {
    for (int i = 0; i < 3; ++i) {
      int s = 3 * blk + i;
      cs[blk][i].v = 0.5 * (pc[s] + px[s]);
      cs[blk][i].d[base + s] = 0.5;
      vs[blk][i].v = (px[s] - pc[s]) / dt;
      vs[blk][i].d[base + s] = 1.0 / dt;
    }
  }
}

// Assemble sigma * P^T (dr/dx) Dq into the sink.
template <typename Sink>
void assemble_tangent(const SolveContext& c, const VectorXd& u, const VectorXd& x,
                      Sink&& sink) {
  const Model& m = *c.m;
  const BeamMesh& mesh = *m.mesh;
  const double dt = c.dt;

  // derivative of the update map x = F_d(u, q_curr) at the current increment
  std::vector<Mat15x9> Dq(mesh.n_nodes());
  for (int a = 0; a < mesh.n_nodes(); ++a) {
    Dq[a] = reparam_jacobian(node_increments(u, a), node_state(c.qc, a));
  }

  auto scatter_block = [&](int na, int nb, const Eigen::Matrix<double, 9, 9>& blk) {
    for (int i = 0; i < kGen; ++i) {
      int gi = m.rmap.index[na][i];
      if (gi < 0) continue;
      for (int j = 0; j < kGen; ++j) {
        int gj = m.rmap.index[nb][j];
        if (gj < 0) continue;
        sink(gi, gj, blk(i, j));
      }
    }
  };

  // nodal inertia part: P^T (-M/dt) Dq
  for (int a = 0; a < mesh.n_nodes(); ++a) {
    Eigen::Matrix<double, 15, 9> MDq = Dq[a];
    for (int r = 0; r < kDof; ++r) MDq.row(r) *= -m.mass[kDof * a + r] / dt;
    Eigen::Matrix<double, 9, 9> blk = c.sigma * (c.P[a].transpose() * MDq);
    scatter_block(a, a, blk);
  }

  // element blocks: -dt * hess_x(V(mid(x))) - dt/2 * d f_vis/dx
  VectorXd qmid = 0.5 * (c.qc + x);
  Eigen::Matrix<double, 30, 1> grad;
  Eigen::Matrix<double, 30, 30> hess;
  const bool viscous = mesh.material.eta != 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    int na = mesh.elements[e].a;
    int nb = mesh.elements[e].b;
    assembly::element_grad_hess_mid(qmid, mesh, e, m.path, m.quad_order, grad, hess);
    Eigen::Matrix<double, 30, 30> A = -dt * hess;
    if (viscous) {
      using D30 = Dual<double, 30>;
      kinematics::NodeVars<D30> ca, cb, va, vb;
      seed_vis(c.qc, x, na, 0, dt, ca, va);
      seed_vis(c.qc, x, nb, 15, dt, cb, vb);
      auto f = assembly::element_viscous(ca, cb, va, vb, mesh, e, m.quad_order);
      for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) A(i, j) -= 0.5 * dt * f[i].d[j];
    }
    // project rows through P^T at the two nodes, columns through Dq
    Eigen::Matrix<double, 9, 30> rows_a = c.P[na].transpose() * A.topRows<15>();
    Eigen::Matrix<double, 9, 30> rows_b = c.P[nb].transpose() * A.bottomRows<15>();
    Eigen::Matrix<double, 9, 9> blk;
    blk = c.sigma * (rows_a.leftCols<15>() * Dq[na]);
    scatter_block(na, na, blk);
    blk = c.sigma * (rows_a.rightCols<15>() * Dq[nb]);
    scatter_block(na, nb, blk);
    blk = c.sigma * (rows_b.leftCols<15>() * Dq[na]);
    scatter_block(nb, na, blk);
    blk = c.sigma * (rows_b.rightCols<15>() * Dq[nb]);
    scatter_block(nb, nb, blk);
  }
}

VectorXd newton_solve(const SolveContext& c, TangentCache* cache, StepDiagnostics* diag) {
  const Model& m = *c.m;
  const NewtonOpts& opts = m.newton;
  const double tol = opts.tol * c.dt;

  VectorXd u = VectorXd::Zero(kGen * m.mesh->n_nodes());
  fill_masked_increments(u, c.qc, m, c.t_next);

  std::unique_ptr<linsolve::TangentSolver> local;
  linsolve::TangentSolver* solver = nullptr;
  if (cache) {
    solver = &cache->solver;
  } else {
    local = std::make_unique<linsolve::TangentSolver>(m.rmap, opts.dense_limit,
                                                      opts.force_banded);
    solver = local.get();
  }

  double prev_norm = std::numeric_limits<double>::infinity();
  int iters_since_rebuild = 1;
  int rebuilds = 0;
  int solves = 0;
  double nrm = 0.0;
  VectorXd x;
  for (int it = 0; it < opts.max_iter; ++it) {
    x = reparametrize(u, c.qc, m, c.t_next);
    VectorXd R = reduced_residual(c, x);
    nrm = R.size() > 0 ? R.cwiseAbs().maxCoeff() : 0.0;
    if (nrm <= tol) {
      if (diag) {
        diag->iterations = solves;
        diag->residual_norm = nrm;
        diag->constraint_violation = assembly::max_constraint_violation(x);
        diag->tangent_rebuilds = rebuilds;
      }
      if (cache) {
        cache->last_iterations = solves;
        cache->steps_since_rebuild += 1;
      }
      return x;
    }

    bool rebuild;
    if (!cache) {
      rebuild = true;  // exact Newton
    } else if (!cache->valid) {
      rebuild = true;
    } else if (it == 0 && (cache->steps_since_rebuild >= opts.refresh_steps ||
                           cache->last_iterations >= opts.refresh_iters)) {
      rebuild = true;
    } else {
      rebuild = (nrm > 0.5 * prev_norm) && iters_since_rebuild >= 1;
    }
    if (rebuild) {
      solver->reset();
      assemble_tangent(c, u, x, [&](int gi, int gj, double v) { solver->add(gi, gj, v); });
      solver->factorize();
      ++rebuilds;
      iters_since_rebuild = 0;
      if (cache) {
        cache->valid = true;
        cache->steps_since_rebuild = 0;
      }
    }
    VectorXd delta = solver->solve(-R);
    ++solves;
    ++iters_since_rebuild;
    for (int a = 0; a < m.mesh->n_nodes(); ++a) {
      for (int g = 0; g < kGen; ++g) {
        int idx = m.rmap.index[a][g];
        if (idx >= 0) u[kGen * a + g] += delta[idx];
      }
    }
    prev_norm = nrm;
  }
  if (cache) cache->valid = false;
  throw NoConvergence("Newton did not converge within the iteration limit",
                      m.newton.max_iter, nrm);
}

}  // namespace

Model::Model(const BeamMesh& m, DirichletMask dirichlet, materials::EnergyPath energy_path,
             int order, NewtonOpts opts)
    : mesh(&m),
      mask(std::move(dirichlet)),
      path(energy_path),
      quad_order(order),
      newton(opts) {
  if (static_cast<int>(mask.mask.size()) != m.n_nodes()) {
    throw ConfigError("mask", "Dirichlet mask size does not match the mesh");
  }
  rmap = linsolve::ReducedMap::build(mask);
  mass = assembly::lumped_mass_diagonal(m);
}

double discrete_lagrangian(const Eigen::VectorXd& qa, const Eigen::VectorXd& qb, double dt,
                           const Model& m) {
  if (!(dt > 0.0)) throw ConfigError("dt_ms", "time step must be positive");
  Eigen::VectorXd v = (qb - qa) / dt;
  Eigen::VectorXd mid = 0.5 * (qa + qb);
  return dt * (assembly::kinetic_energy(v, *m.mesh) -
               assembly::potential_energy(mid, *m.mesh, m.path, m.quad_order));
}

Eigen::VectorXd reparametrize(const Eigen::VectorXd& u, const Eigen::VectorXd& qn,
                              const Model& m, double t_next) {
  Eigen::VectorXd x(qn.size());
  for (int a = 0; a < m.mesh->n_nodes(); ++a) {
    NodeState n = node_state(qn, a);
    std::array<double, 9> ua = node_increments(u, a);
    Vec3<double> phi, d1, d2, d3, elec;
    reparam_node_kernel(ua, n, phi, d1, d2, d3, elec);
    NodeState out;
    out.phi = phi;
    out.d1 = d1;
    out.d2 = d2;
    out.d3 = d3;
    out.elec = elec;
    if (m.mask.any(a)) {
      NodeSchedule sch = m.mask.schedule(a, t_next);
      for (int i = 0; i < 3; ++i) {
        if (m.mask.mask[a][i]) out.phi[i] = sch.phi[i];        // bit-exact assignment
        if (m.mask.mask[a][6 + i]) out.elec[i] = sch.elec[i];  // bit-exact assignment
      }
    }
    set_node_state(x, a, out);
  }
  return x;
}

Eigen::VectorXd del_residual(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                             const Eigen::VectorXd& u, double dt, const Model& m,
                             double t_next) {
  SolveContext c =
      make_context(q_curr, m, dt, t_next, 1.0, step_bias(q_prev, q_curr, dt, m));
  Eigen::VectorXd ufull = u;
  fill_masked_increments(ufull, q_curr, m, t_next);
  Eigen::VectorXd x = reparametrize(ufull, q_curr, m, t_next);
  return reduced_residual(c, x);
}

Eigen::MatrixXd tangent(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                        const Eigen::VectorXd& u, double dt, const Model& m, double t_next) {
  SolveContext c =
      make_context(q_curr, m, dt, t_next, 1.0, step_bias(q_prev, q_curr, dt, m));
  Eigen::VectorXd ufull = u;
  fill_masked_increments(ufull, q_curr, m, t_next);
  Eigen::VectorXd x = reparametrize(ufull, q_curr, m, t_next);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m.rmap.total, m.rmap.total);
  assemble_tangent(c, ufull, x, [&](int gi, int gj, double v) { K(gi, gj) += v; });
  return K;
}

Eigen::VectorXd step(const Eigen::VectorXd& q_prev, const Eigen::VectorXd& q_curr,
                     double t_curr, double dt, const Model& m, StepDiagnostics* diag,
                     TangentCache* cache) {
  SolveContext c = make_context(q_curr, m, dt, t_curr + dt, 1.0,
                                step_bias(q_prev, q_curr, dt, m));
  return newton_solve(c, cache, diag);
}

Eigen::VectorXd initialize(const Eigen::VectorXd& q0, const Eigen::VectorXd& p0, double dt,
                           const Model& m, StepDiagnostics* diag) {
  SolveContext c = make_context(q0, m, dt, dt, -1.0, -p0);
  return newton_solve(c, nullptr, diag);
}

Eigen::Matrix<double, 9, 9> node_momentum_projector(const NodeState& n, double weight,
                                                    const SectionProperties& sec) {
  Eigen::Matrix<double, 9, 1> minv;
  minv.segment<3>(0).setConstant(1.0 / (weight * sec.A_rho));
  minv.segment<3>(3).setConstant(1.0 / (weight * sec.M_rho1));
  minv.segment<3>(6).setConstant(1.0 / (weight * sec.M_rho2));

  // reduced constraint Jacobian over (phi, d1, d2): the three constraints
  // involving only d1 and d2
  Eigen::Matrix<double, 3, 9> G = Eigen::Matrix<double, 3, 9>::Zero();
  for (int i = 0; i < 3; ++i) {
    G(0, 3 + i) = n.d1[i];
    G(1, 6 + i) = n.d2[i];
    G(2, 3 + i) = n.d2[i];
    G(2, 6 + i) = n.d1[i];
  }
  Eigen::Matrix<double, 9, 3> MinvGt = minv.asDiagonal() * G.transpose();
  Eigen::Matrix3d GMG = G * MinvGt;
  return Eigen::Matrix<double, 9, 9>::Identity() -
         G.transpose() * GMG.ldlt().solve(MinvGt.transpose());
}

Energies discrete_hamiltonian(const Eigen::VectorXd& qn, const Eigen::VectorXd& q_next,
                              double dt, const Model& m) {
  // D1 L_d(q_n, q_{n+1}) restricted to the (phi, d1, d2) slots of each node
  Eigen::VectorXd mid = 0.5 * (qn + q_next);
  Eigen::VectorXd d1ld = -(m.mass.array() * (q_next - qn).array()).matrix() / dt -
                         0.5 * dt * assembly::grad_potential(mid, *m.mesh, m.path, m.quad_order);
  Energies en;
  for (int a = 0; a < m.mesh->n_nodes(); ++a) {
    NodeState n = node_state(qn, a);
    double w = m.mesh->weight[a];
    Eigen::Matrix<double, 9, 1> minv;
    minv.segment<3>(0).setConstant(1.0 / (w * m.mesh->section.A_rho));
    minv.segment<3>(3).setConstant(1.0 / (w * m.mesh->section.M_rho1));
    minv.segment<3>(6).setConstant(1.0 / (w * m.mesh->section.M_rho2));

    Eigen::Matrix<double, 9, 9> Q = node_momentum_projector(n, w, m.mesh->section);
    Eigen::Matrix<double, 9, 1> slots = -d1ld.segment<9>(kDof * a);
    Eigen::Matrix<double, 9, 1> p = Q * slots;
    en.kinetic += 0.5 * p.dot((minv.array() * p.array()).matrix());
  }
  en.potential = assembly::potential_energy(qn, *m.mesh, m.path, m.quad_order);
  en.hamiltonian = en.kinetic + en.potential;
  return en;
}

}  // namespace debeam::integrator
