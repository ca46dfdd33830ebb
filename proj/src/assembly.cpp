#include "debeam/assembly.hpp"

#include "debeam/so3.hpp"

namespace debeam::assembly {

double kinetic_energy(const Eigen::VectorXd& qdot, const BeamMesh& mesh) {
  double t = 0.0;
  for (int a = 0; a < mesh.n_nodes(); ++a) {
    const double* p = qdot.data() + kDof * a;
    double phi2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    double d12 = p[3] * p[3] + p[4] * p[4] + p[5] * p[5];
    double d22 = p[6] * p[6] + p[7] * p[7] + p[8] * p[8];
    t += mesh.weight[a] * 0.5 *
         (mesh.section.A_rho * phi2 + mesh.section.M_rho1 * d12 + mesh.section.M_rho2 * d22);
  }
  return t;
}

double potential_energy(const Eigen::VectorXd& q, const BeamMesh& mesh,
                        materials::EnergyPath path, int quad_order) {
  double v = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    auto a = lift_node<double>(q, mesh.elements[e].a);
    auto b = lift_node<double>(q, mesh.elements[e].b);
    v += element_potential(a, b, mesh, e, path, quad_order);
  }
  return v;
}

Eigen::VectorXd grad_potential(const Eigen::VectorXd& q, const BeamMesh& mesh,
                               materials::EnergyPath path, int quad_order) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(q.size());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    int na = mesh.elements[e].a;
    int nb = mesh.elements[e].b;
    auto a = seed_node<30>(q, na, 0);
    auto b = seed_node<30>(q, nb, 15);
    Dual<double, 30> v = element_potential(a, b, mesh, e, path, quad_order);
    for (int i = 0; i < 15; ++i) {
      g[kDof * na + i] += v.d[i];
      g[kDof * nb + i] += v.d[15 + i];
    }
  }
  return g;
}

void element_grad_hess_mid(const Eigen::VectorXd& qmid, const BeamMesh& mesh, int elem,
                           materials::EnergyPath path, int quad_order,
                           Eigen::Matrix<double, 30, 1>& grad,
                           Eigen::Matrix<double, 30, 30>& hess) {
  auto a = seed_node_nested(qmid, mesh.elements[elem].a, 0, 0.5);
  auto b = seed_node_nested(qmid, mesh.elements[elem].b, 15, 0.5);
  auto v = element_potential(a, b, mesh, elem, path, quad_order);
  for (int i = 0; i < 30; ++i) {
    grad(i) = v.d[i].v;
    for (int j = 0; j < 30; ++j) hess(i, j) = v.d[i].d[j];
  }
}

Eigen::VectorXd viscous_generalized_force(const Eigen::VectorXd& q,
                                          const Eigen::VectorXd& qdot, const BeamMesh& mesh,
                                          int quad_order) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(q.size());
  if (mesh.material.eta == 0.0) return f;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    int na = mesh.elements[e].a;
    int nb = mesh.elements[e].b;
    auto fa = element_viscous(lift_node<double>(q, na), lift_node<double>(q, nb),
                              lift_node<double>(qdot, na), lift_node<double>(qdot, nb),
                              mesh, e, quad_order);
    for (int i = 0; i < 15; ++i) {
      f[kDof * na + i] += fa[i];
      f[kDof * nb + i] += fa[15 + i];
    }
  }
  return f;
}

Eigen::VectorXd lumped_mass_diagonal(const BeamMesh& mesh) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(kDof * mesh.n_nodes());
  for (int a = 0; a < mesh.n_nodes(); ++a) {
    double w = mesh.weight[a];
    for (int i = 0; i < 3; ++i) {
      m[kDof * a + i] = w * mesh.section.A_rho;
      m[kDof * a + 3 + i] = w * mesh.section.M_rho1;
      m[kDof * a + 6 + i] = w * mesh.section.M_rho2;
      // d3 and electrical slots carry no inertia
    }
  }
  return m;
}

Vector6d node_constraints(const NodeState& n) {
  Vector6d g;
  g << 0.5 * (dot(n.d1, n.d1) - 1.0), 0.5 * (dot(n.d2, n.d2) - 1.0),
      0.5 * (dot(n.d3, n.d3) - 1.0), dot(n.d1, n.d2), dot(n.d1, n.d3), dot(n.d2, n.d3);
  return g;
}

Eigen::Matrix<double, 6, 15> node_constraint_jacobian(const NodeState& n) {
  Eigen::Matrix<double, 6, 15> G = Eigen::Matrix<double, 6, 15>::Zero();
  auto put = [&G](int row, int block, const Vec3d& v) {
    for (int i = 0; i < 3; ++i) G(row, 3 + 3 * block + i) = v[i];
  };
  put(0, 0, n.d1);
  put(1, 1, n.d2);
  put(2, 2, n.d3);
  put(3, 0, n.d2);
  put(3, 1, n.d1);
  put(4, 0, n.d3);
  put(4, 2, n.d1);
  put(5, 1, n.d3);
  put(5, 2, n.d2);
  return G;
}

Eigen::Matrix<double, 15, 9> node_null_space(const NodeState& n) {
  Eigen::Matrix<double, 15, 9> P = Eigen::Matrix<double, 15, 9>::Zero();
  P.block<3, 3>(0, 0).setIdentity();
  const Vec3d* d[3] = {&n.d1, &n.d2, &n.d3};
  for (int k = 0; k < 3; ++k) {
    Mat3d h = so3::hat(*d[k]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) P(3 + 3 * k + i, 3 + j) = -h(i, j);
  }
  P.block<3, 3>(12, 6).setIdentity();
  return P;
}

Eigen::MatrixXd assemble_global_null_space(const Eigen::VectorXd& q,
                                           const DirichletMask& mask) {
  int n = static_cast<int>(q.size()) / kDof;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(kDof * n, kGen * n);
  for (int a = 0; a < n; ++a) {
    Eigen::Matrix<double, 15, 9> Pa = node_null_space(node_state(q, a));
    for (int g = 0; g < kGen; ++g) {
      if (mask.mask[a][g]) continue;  // prescribed columns drop out
      P.block<15, 1>(kDof * a, kGen * a + g) = Pa.col(g);
    }
  }
  return P;
}

double max_constraint_violation(const Eigen::VectorXd& q) {
  int n = static_cast<int>(q.size()) / kDof;
  double m = 0.0;
  for (int a = 0; a < n; ++a) {
    Vector6d g = node_constraints(node_state(q, a));
    m = std::max(m, g.cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace debeam::assembly
