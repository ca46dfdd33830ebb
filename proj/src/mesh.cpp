#include "debeam/mesh.hpp"

namespace debeam {

void BeamMesh::finalize() {
  if (n_nodes() < 2) throw ConfigError("mesh", "a beam needs at least two nodes");
  for (int i = 0; i + 1 < n_nodes(); ++i) {
    if (!(s[i + 1] > s[i])) {
      throw ConfigError("mesh", "node arc-lengths must be strictly increasing");
    }
  }
  elements.clear();
  for (int e = 0; e + 1 < n_nodes(); ++e) {
    ElementInfo el;
    el.a = e;
    el.b = e + 1;
    el.le = s[e + 1] - s[e];
    const ReferenceFrame& fa = frames[e];
    const ReferenceFrame& fb = frames[e + 1];
    el.ref_mid = kinematics::midpoint_triad(fa.d1, fa.d2, fa.d3, fb.d1, fb.d2, fb.d3);
    elements.push_back(el);
  }
  weight.assign(n_nodes(), 0.0);
  for (const auto& el : elements) {
    weight[el.a] += 0.5 * el.le;
    weight[el.b] += 0.5 * el.le;
  }
}

BeamMesh make_straight_beam(double length, int n_elements, double side,
                            const MaterialParams& mat) {
  if (n_elements < 1) throw ConfigError("elements", "need at least one element");
  if (!(length > 0.0)) throw ConfigError("length_mm", "length must be positive");
  if (!(side > 0.0)) throw ConfigError("side_mm", "cross-section side must be positive");
  BeamMesh mesh;
  mesh.material = mat;
  mesh.side = side;
  mesh.section = square_section(side, mat.rho);
  int n = n_elements + 1;
  mesh.s.resize(n);
  mesh.frames.resize(n);
  for (int i = 0; i < n; ++i) {
    mesh.s[i] = length * double(i) / double(n_elements);
    mesh.frames[i].s = mesh.s[i];
  }
  mesh.finalize();
  return mesh;
}

NodeState node_state(const Eigen::VectorXd& q, int node) {
  NodeState n;
  const double* p = q.data() + kDof * node;
  for (int i = 0; i < 3; ++i) {
    n.phi[i] = p[i];
    n.d1[i] = p[3 + i];
    n.d2[i] = p[6 + i];
    n.d3[i] = p[9 + i];
    n.elec[i] = p[12 + i];
  }
  return n;
}

void set_node_state(Eigen::VectorXd& q, int node, const NodeState& n) {
  double* p = q.data() + kDof * node;
  for (int i = 0; i < 3; ++i) {
    p[i] = n.phi[i];
    p[3 + i] = n.d1[i];
    p[6 + i] = n.d2[i];
    p[9 + i] = n.d3[i];
    p[12 + i] = n.elec[i];
  }
}

Eigen::VectorXd reference_configuration(const BeamMesh& mesh) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(kDof * mesh.n_nodes());
  for (int a = 0; a < mesh.n_nodes(); ++a) {
    NodeState n;
    const ReferenceFrame& f = mesh.frames[a];
    n.phi = mesh.s[a] * f.d3;
    n.d1 = f.d1;
    n.d2 = f.d2;
    n.d3 = f.d3;
    n.elec = Vec3d{};
    set_node_state(q, a, n);
  }
  return q;
}

}  // namespace debeam
