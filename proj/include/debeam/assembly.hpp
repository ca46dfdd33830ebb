#pragma once

#include <Eigen/Dense>

#include "debeam/materials.hpp"
#include "debeam/mesh.hpp"

// Element-level energy/force passes and global assembly of kinetic and
// potential energies, constraints, null-space blocks and viscous forces.

namespace debeam::assembly {

using kinematics::NodeVars;

// ---- seeding helpers (element slot layout: node a = 0..14, node b = 15..29) ----

template <typename S>
NodeVars<S> lift_node(const Eigen::VectorXd& q, int node) {
  NodeVars<S> r;
  const double* p = q.data() + kDof * node;
  for (int i = 0; i < 3; ++i) {
    r.phi[i] = p[i];
    r.d1[i] = p[3 + i];
    r.d2[i] = p[6 + i];
    r.d3[i] = p[9 + i];
    r.elec[i] = p[12 + i];
  }
  return r;
}

template <int N>
NodeVars<Dual<double, N>> seed_node(const Eigen::VectorXd& q, int node, int base) {
  NodeVars<Dual<double, N>> r = lift_node<Dual<double, N>>(q, node);
  Dual<double, N>* slots[5] = {r.phi.c.data(), r.d1.c.data(), r.d2.c.data(),
                               r.d3.c.data(), r.elec.c.data()};
  for (int blk = 0; blk < 5; ++blk)
    for (int i = 0; i < 3; ++i) slots[blk][i].d[base + 3 * blk + i] = 1.0;
  return r;
}

// inner+outer seeding with weight w on both levels (for d/dx of f(mid(x)))
inline NodeVars<Dual<Dual<double, 30>, 30>> seed_node_nested(const Eigen::VectorXd& qmid,
                                                             int node, int base, double w) {
  using DD = Dual<Dual<double, 30>, 30>;
  NodeVars<DD> r;
  const double* p = qmid.data() + kDof * node;
  DD* slots[5] = {r.phi.c.data(), r.d1.c.data(), r.d2.c.data(), r.d3.c.data(),
                  r.elec.c.data()};
  for (int blk = 0; blk < 5; ++blk)
    for (int i = 0; i < 3; ++i) {
      DD& s = slots[blk][i];
      int slot = base + 3 * blk + i;
      s.v.v = p[3 * blk + i];
      s.v.d[slot] = w;
      s.d[slot].v = w;
    }
  return r;
}

template <typename S>
S element_potential(const NodeVars<S>& a, const NodeVars<S>& b, const BeamMesh& mesh,
                    int elem, materials::EnergyPath path, int quad_order) {
  const ElementInfo& el = mesh.elements[elem];
  auto st = kinematics::element_strains_kernel(a, b, el.ref_mid, el.le);
  S omega = (path == materials::EnergyPath::Analytic)
                ? materials::dea_energy_analytic_kernel(st, mesh.section, mesh.material)
                : materials::dea_energy_quadrature_kernel(st, mesh.side, mesh.material,
                                                          quad_order, materials::LnMode::Exact,
                                                          elem);
  return el.le * omega;
}

template <typename T, int N>
Dual<T, N> const_dual(const T& v) {
  Dual<T, N> r;
  r.v = v;
  return r;
}

// Generalized viscous force of one element: gradient slots of
// le * sum_gp w_gp P_vis : F(q~) with P_vis frozen at (q, qdot).
// S = double gives the force; S = Dual<double,30> gives force + x-jacobian
// when the inputs carry x-derivative seeds.
template <typename S>
std::array<S, 30> element_viscous(const NodeVars<S>& ca, const NodeVars<S>& cb,
                                  const NodeVars<S>& va, const NodeVars<S>& vb,
                                  const BeamMesh& mesh, int elem, int quad_order) {
  const ElementInfo& el = mesh.elements[elem];
  const double eta = mesh.material.eta;
  const materials::GaussRule& g = materials::gauss_rule(quad_order);
  const double h = 0.5 * mesh.side;

  // pass 1: deformation gradient and its exact rate, viscous stress per point
  using TD = Dual<S, 1>;
  auto time_seed = [](const NodeVars<S>& c, const NodeVars<S>& v) {
    NodeVars<TD> r;
    const Vec3<S>* cs[5] = {&c.phi, &c.d1, &c.d2, &c.d3, &c.elec};
    const Vec3<S>* vs[5] = {&v.phi, &v.d1, &v.d2, &v.d3, &v.elec};
    Vec3<TD>* rs[5] = {&r.phi, &r.d1, &r.d2, &r.d3, &r.elec};
    for (int blk = 0; blk < 5; ++blk)
      for (int i = 0; i < 3; ++i) {
        (*rs[blk])[i].v = (*cs[blk])[i];
        (*rs[blk])[i].d[0] = (*vs[blk])[i];
      }
    return r;
  };
  auto stt = kinematics::element_strains_kernel(time_seed(ca, va), time_seed(cb, vb),
                                                el.ref_mid, el.le);
  std::array<Mat3<S>, 16> P;
  int k = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++k) {
      auto fg = kinematics::deformation_gradient(stt, h * g.x[i], h * g.x[j]);
      Mat3<S> F, Fd;
      for (int m = 0; m < 9; ++m) {
        F.m[m] = fg.F.m[m].v;
        Fd.m[m] = fg.F.m[m].d[0];
      }
      S J = fg.J.v;
      if (value_of(J) <= kMinJacobian) {
        throw NonpositiveJacobian("viscous force: nonpositive J at Gauss point", elem, k);
      }
      P[k] = materials::viscous_piola_kernel(F, Fd, J, eta);
    }
  }

  // pass 2: gradient of the frozen-stress work with respect to the 30 slots
  using QD = Dual<S, 30>;
  auto slot_seed = [](const NodeVars<S>& c, int base) {
    NodeVars<QD> r;
    const Vec3<S>* cs[5] = {&c.phi, &c.d1, &c.d2, &c.d3, &c.elec};
    Vec3<QD>* rs[5] = {&r.phi, &r.d1, &r.d2, &r.d3, &r.elec};
    for (int blk = 0; blk < 5; ++blk)
      for (int i = 0; i < 3; ++i) {
        QD& s = (*rs[blk])[i];
        s.v = (*cs[blk])[i];
        s.d[base + 3 * blk + i] = S(1.0);
      }
    return r;
  };
  auto stq = kinematics::element_strains_kernel(slot_seed(ca, 0), slot_seed(cb, 15),
                                                el.ref_mid, el.le);
  QD W(0.0);
  k = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++k) {
      auto fgq = kinematics::deformation_gradient(stq, h * g.x[i], h * g.x[j]);
      Mat3<QD> Pl;
      for (int m = 0; m < 9; ++m) Pl.m[m] = const_dual<S, 30>(P[k].m[m]);
      double w = h * g.w[i] * h * g.w[j];
      W += w * ddot(Pl, fgq.F);
    }
  }
  W = W * el.le;
  return W.d;
}

// ---- global assembly ----

double kinetic_energy(const Eigen::VectorXd& qdot, const BeamMesh& mesh);
double potential_energy(const Eigen::VectorXd& q, const BeamMesh& mesh,
                        materials::EnergyPath path, int quad_order);
Eigen::VectorXd grad_potential(const Eigen::VectorXd& q, const BeamMesh& mesh,
                               materials::EnergyPath path, int quad_order);
// gradient and element Hessian blocks of V evaluated at mid(x) = (q_fix + x)/2,
// derivatives taken with respect to x (one nested-dual pass per element)
void element_grad_hess_mid(const Eigen::VectorXd& qmid, const BeamMesh& mesh, int elem,
                           materials::EnergyPath path, int quad_order,
                           Eigen::Matrix<double, 30, 1>& grad,
                           Eigen::Matrix<double, 30, 30>& hess);

Eigen::VectorXd viscous_generalized_force(const Eigen::VectorXd& q,
                                          const Eigen::VectorXd& qdot, const BeamMesh& mesh,
                                          int quad_order);

Eigen::VectorXd lumped_mass_diagonal(const BeamMesh& mesh);

using Vector6d = Eigen::Matrix<double, 6, 1>;
Vector6d node_constraints(const NodeState& n);
Eigen::Matrix<double, 6, 15> node_constraint_jacobian(const NodeState& n);
Eigen::Matrix<double, 15, 9> node_null_space(const NodeState& n);
Eigen::MatrixXd assemble_global_null_space(const Eigen::VectorXd& q, const DirichletMask& mask);
double max_constraint_violation(const Eigen::VectorXd& q);

}  // namespace debeam::assembly
