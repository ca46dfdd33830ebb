#pragma once

#include "debeam/dual.hpp"
#include "debeam/linalg.hpp"
#include "debeam/types.hpp"

// Strain measures, deformation gradient and electric field of a two-node
// element. Linear shape functions, evaluated at the one-point Gauss location
// (the element midpoint). All kernels are templated on the scalar so the
// assembly can differentiate through them with dual numbers.

namespace debeam::kinematics {

template <typename S>
struct NodeVars {
  Vec3<S> phi, d1, d2, d3, elec;
};

template <typename S>
struct Triad {
  Vec3<S> d1{1.0, 0.0, 0.0};
  Vec3<S> d2{0.0, 1.0, 0.0};
  Vec3<S> d3{0.0, 0.0, 1.0};
};

using TriadD = Triad<double>;

inline TriadD triad_of(const ReferenceFrame& f) { return {f.d1, f.d2, f.d3}; }

template <typename S>
inline NodeVars<S> lift(const NodeState& n) {
  NodeVars<S> r;
  for (int i = 0; i < 3; ++i) {
    r.phi[i] = n.phi[i];
    r.d1[i] = n.d1[i];
    r.d2[i] = n.d2[i];
    r.d3[i] = n.d3[i];
    r.elec[i] = n.elec[i];
  }
  return r;
}

template <typename S>
inline Triad<S> gram_schmidt(const Vec3<S>& t1, const Vec3<S>& t2, const Vec3<S>& t3) {
  Triad<S> r;
  r.d1 = t1 * (1.0 / sqrt(dot(t1, t1)));
  Vec3<S> w2 = t2 - dot(t2, r.d1) * r.d1;
  r.d2 = w2 * (1.0 / sqrt(dot(w2, w2)));
  Vec3<S> w3 = t3 - dot(t3, r.d1) * r.d1 - dot(t3, r.d2) * r.d2;
  r.d3 = w3 * (1.0 / sqrt(dot(w3, w3)));
  return r;
}

// Everything the cross-section energy needs at the element midpoint.
template <typename S>
struct StrainState {
  Vec3<S> Gamma, K;      // reference measures
  Vec3<S> gamma, kappa;  // spatial counterparts
  Vec3<S> eps;           // (alpha, beta, phi_o')
  Vec3<S> e;             // (alpha', beta', 0)
  Triad<S> cur;          // interpolated current triad, re-orthonormalized
  TriadD ref;            // initial triad at the midpoint
  Mat3<S> Lambda;        // d_i(t) (x) d_i(0)
};

template <typename S>
StrainState<S> element_strains_kernel(const NodeVars<S>& a, const NodeVars<S>& b,
                                      const TriadD& ref, double le) {
  StrainState<S> st;
  st.ref = ref;
  double inv_le = 1.0 / le;

  // Interpolated midpoint directors are not exactly orthonormal between two
  // rotated triads; re-orthonormalize before building Lambda.
  st.cur = gram_schmidt<S>(0.5 * (a.d1 + b.d1), 0.5 * (a.d2 + b.d2), 0.5 * (a.d3 + b.d3));
  st.Lambda = outer(st.cur.d1, ref.d1) + outer(st.cur.d2, ref.d2) + outer(st.cur.d3, ref.d3);

  Vec3<S> phi_s = (b.phi - a.phi) * inv_le;
  st.gamma = phi_s - st.cur.d3;

  Vec3<S> d1_s = (b.d1 - a.d1) * inv_le;
  Vec3<S> d2_s = (b.d2 - a.d2) * inv_le;
  Vec3<S> d3_s = (b.d3 - a.d3) * inv_le;
  // kappa from d_k' = kappa x d_k, consistently over the triad
  st.kappa = 0.5 * (cross(st.cur.d1, d1_s) + cross(st.cur.d2, d2_s) + cross(st.cur.d3, d3_s));

  Mat3<S> LamT = transpose(st.Lambda);
  st.Gamma = LamT * st.gamma;
  st.K = LamT * st.kappa;

  st.eps[0] = 0.5 * (a.elec[1] + b.elec[1]);
  st.eps[1] = 0.5 * (a.elec[2] + b.elec[2]);
  st.eps[2] = (b.elec[0] - a.elec[0]) * inv_le;
  st.e[0] = (b.elec[1] - a.elec[1]) * inv_le;
  st.e[1] = (b.elec[2] - a.elec[2]) * inv_le;
  st.e[2] = 0.0;
  return st;
}

template <typename S>
inline Vec3<S> a_reference(const StrainState<S>& st, double X1, double X2) {
  return st.Gamma + cross(st.K, X1 * st.ref.d1 + X2 * st.ref.d2);
}

template <typename S>
struct DefGrad {
  Mat3<S> F;
  S J;
};

template <typename S>
inline DefGrad<S> deformation_gradient(const StrainState<S>& st, double X1, double X2) {
  Vec3<S> aa = st.gamma + cross(st.kappa, X1 * st.cur.d1 + X2 * st.cur.d2);
  DefGrad<S> r;
  r.F = (Mat3<S>::identity() + outer(aa, st.cur.d3)) * st.Lambda;
  r.J = 1.0 + dot(aa, st.cur.d3);
  return r;
}

template <typename S>
inline Mat3<S> right_cauchy_green(const StrainState<S>& st, double X1, double X2) {
  Vec3<S> ar = a_reference(st, X1, X2);
  Mat3<S> ard3 = outer(ar, st.ref.d3);
  Mat3<S> c = Mat3<S>::identity() + ard3 + transpose(ard3) +
              dot(ar, ar) * outer(st.ref.d3, st.ref.d3);
  return c;
}

template <typename S>
inline Mat3<S> green_lagrange(const StrainState<S>& st, double X1, double X2) {
  Vec3<S> ar = a_reference(st, X1, X2);
  Mat3<S> ard3 = outer(ar, st.ref.d3);
  return 0.5 * (ard3 + transpose(ard3)) + (0.5 * dot(ar, ar)) * outer(st.ref.d3, st.ref.d3);
}

template <typename S>
inline Vec3<S> electric_field(const StrainState<S>& st, double X1, double X2) {
  S axial = st.eps[2] + st.e[0] * X1 + st.e[1] * X2;
  return -(st.eps[0] * st.ref.d1 + st.eps[1] * st.ref.d2 + axial * st.ref.d3);
}

// ---- public double-precision API ----

BeamStrains element_strains(const NodeState& a, const NodeState& b,
                            const ReferenceFrame& ref_a, const ReferenceFrame& ref_b,
                            double element_length);

// Midpoint triads (current and reference) for an element, re-orthonormalized.
TriadD midpoint_triad(const Vec3d& d1a, const Vec3d& d2a, const Vec3d& d3a,
                      const Vec3d& d1b, const Vec3d& d2b, const Vec3d& d3b);

Vec3d a_reference(const BeamStrains& s, double X1, double X2, const ReferenceFrame& ref);

struct DeformationGradient {
  Mat3d F;
  double J;
  Mat3d C;
};

DeformationGradient deformation_gradient(const BeamStrains& s, const TriadD& cur,
                                         const TriadD& ref, double X1, double X2);

// Exact rate of the discrete deformation-gradient map along (q, qdot).
Mat3d deformation_gradient_rate(const NodeState& a, const NodeState& b,
                                const NodeState& adot, const NodeState& bdot,
                                const ReferenceFrame& ref_a, const ReferenceFrame& ref_b,
                                double element_length, double X1, double X2);

Vec3d electric_field(const BeamStrains& s, const ReferenceFrame& ref, double X1, double X2);

// Rebuild a consistent internal state from public strain data (used by the
// materials API, which works on strain measures rather than nodal states).
StrainState<double> make_state(const BeamStrains& s, const TriadD& cur, const TriadD& ref);

}  // namespace debeam::kinematics
