#include "debeam/kinematics.hpp"

#include <cmath>

namespace debeam::kinematics {

namespace {

double gram_defect(const Vec3d& d1, const Vec3d& d2, const Vec3d& d3) {
  double m = std::abs(dot(d1, d1) - 1.0);
  m = std::max(m, std::abs(dot(d2, d2) - 1.0));
  m = std::max(m, std::abs(dot(d3, d3) - 1.0));
  m = std::max(m, std::abs(dot(d1, d2)));
  m = std::max(m, std::abs(dot(d1, d3)));
  m = std::max(m, std::abs(dot(d2, d3)));
  return m;
}

BeamStrains to_strains(const StrainState<double>& st) {
  BeamStrains s;
  s.Gamma = st.Gamma;
  s.K = st.K;
  s.gamma = st.gamma;
  s.kappa = st.kappa;
  s.eps = st.eps;
  s.e = st.e;
  return s;
}

}  // namespace

TriadD midpoint_triad(const Vec3d& d1a, const Vec3d& d2a, const Vec3d& d3a,
                      const Vec3d& d1b, const Vec3d& d2b, const Vec3d& d3b) {
  return gram_schmidt<double>(0.5 * (d1a + d1b), 0.5 * (d2a + d2b), 0.5 * (d3a + d3b));
}

BeamStrains element_strains(const NodeState& a, const NodeState& b,
                            const ReferenceFrame& ref_a, const ReferenceFrame& ref_b,
                            double element_length) {
  if (!(element_length > 0.0)) {
    throw DegenerateElement("element_strains: element_length must be positive");
  }
  if (gram_defect(a.d1, a.d2, a.d3) > 1e-8 || gram_defect(b.d1, b.d2, b.d3) > 1e-8) {
    throw SimError("element_strains: nodal directors not orthonormal within 1e-8");
  }
  TriadD ref = midpoint_triad(ref_a.d1, ref_a.d2, ref_a.d3, ref_b.d1, ref_b.d2, ref_b.d3);
  auto st = element_strains_kernel(lift<double>(a), lift<double>(b), ref, element_length);
  return to_strains(st);
}

Vec3d a_reference(const BeamStrains& s, double X1, double X2, const ReferenceFrame& ref) {
  return s.Gamma + cross(s.K, X1 * ref.d1 + X2 * ref.d2);
}

StrainState<double> make_state(const BeamStrains& s, const TriadD& cur, const TriadD& ref) {
  StrainState<double> st;
  st.Gamma = s.Gamma;
  st.K = s.K;
  st.eps = s.eps;
  st.e = s.e;
  st.cur = cur;
  st.ref = ref;
  st.Lambda = outer(cur.d1, ref.d1) + outer(cur.d2, ref.d2) + outer(cur.d3, ref.d3);
  st.gamma = st.Lambda * s.Gamma;
  st.kappa = st.Lambda * s.K;
  return st;
}

DeformationGradient deformation_gradient(const BeamStrains& s, const TriadD& cur,
                                         const TriadD& ref, double X1, double X2) {
  auto st = make_state(s, cur, ref);
  auto fg = deformation_gradient<double>(st, X1, X2);
  if (fg.J <= kMinJacobian) {
    throw InvertedElement("deformation_gradient: J below minimum", -1);
  }
  DeformationGradient r;
  r.F = fg.F;
  r.J = fg.J;
  r.C = right_cauchy_green(st, X1, X2);
  return r;
}

Mat3d deformation_gradient_rate(const NodeState& a, const NodeState& b,
                                const NodeState& adot, const NodeState& bdot,
                                const ReferenceFrame& ref_a, const ReferenceFrame& ref_b,
                                double element_length, double X1, double X2) {
  using TD = Dual<double, 1>;
  auto seed = [](const NodeState& q, const NodeState& qdot) {
    NodeVars<TD> r;
    auto set = [](Vec3<TD>& out, const Vec3d& v, const Vec3d& vd) {
      for (int i = 0; i < 3; ++i) {
        out[i].v = v[i];
        out[i].d[0] = vd[i];
      }
    };
    set(r.phi, q.phi, qdot.phi);
    set(r.d1, q.d1, qdot.d1);
    set(r.d2, q.d2, qdot.d2);
    set(r.d3, q.d3, qdot.d3);
    set(r.elec, q.elec, qdot.elec);
    return r;
  };
  TriadD ref = midpoint_triad(ref_a.d1, ref_a.d2, ref_a.d3, ref_b.d1, ref_b.d2, ref_b.d3);
  auto st = element_strains_kernel(seed(a, adot), seed(b, bdot), ref, element_length);
  auto fg = deformation_gradient<TD>(st, X1, X2);
  Mat3d rate;
  for (int i = 0; i < 9; ++i) rate.m[i] = fg.F.m[i].d[0];
  return rate;
}

Vec3d electric_field(const BeamStrains& s, const ReferenceFrame& ref, double X1, double X2) {
  double axial = s.eps[2] + s.e[0] * X1 + s.e[1] * X2;
  return -(s.eps[0] * ref.d1 + s.eps[1] * ref.d2 + axial * ref.d3);
}

}  // namespace debeam::kinematics
