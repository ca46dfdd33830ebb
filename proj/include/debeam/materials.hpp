#pragma once

#include <array>

#include "debeam/kinematics.hpp"
#include "debeam/types.hpp"

namespace debeam::materials {

// Production energy path for the coupled model. Analytic integrates the
// series form of the cross-section energy in closed form; Quadrature applies
// tensor Gauss integration to the exact-log integrand.
enum class EnergyPath { Analytic, Quadrature };

// Log handling inside the quadrature integrand. Truncated replaces
// ln(1+x) by x - x^2/2 and is the oracle for the analytic path.
enum class LnMode { Exact, Truncated };

struct GaussRule {
  int n = 0;
  std::array<double, 4> x{};
  std::array<double, 4> w{};
};

const GaussRule& gauss_rule(int order);

// Saint-Venant-Kirchhoff reduced beam energy per arc-length,
// 1/2 G' D^N G + 1/2 K' D^K K. Inputs are components in the initial frame.
double svk_beam_energy(const Vec3d& Gamma, const Vec3d& K, const SectionProperties& sec,
                       double lambda, double mu);

template <typename S>
S continuum_energy_kernel(const Mat3<S>& C, const S& J, const Vec3<S>& E,
                          const MaterialParams& p) {
  S lj = log(J);
  return 0.5 * p.mu * (trace(C) - 3.0) - p.mu * lj + 0.5 * p.lambda * lj * lj +
         p.c1 * dot(E, E) + p.c2 * dot(E, C * E);
}

double continuum_energy(const Mat3d& C, double J, const Vec3d& E, const MaterialParams& p);

// Cross-section integration of the continuum energy with the beam kinematic
// ansatz, over a square side x side. Energy per arc-length.
template <typename S>
S dea_energy_quadrature_kernel(const kinematics::StrainState<S>& st, double side,
                               const MaterialParams& p, int order, LnMode mode,
                               int element_id = -1) {
  const GaussRule& g = gauss_rule(order);
  double h = 0.5 * side;
  S total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      double X1 = h * g.x[i];
      double X2 = h * g.x[j];
      double w = h * g.w[i] * h * g.w[j];
      Mat3<S> C = kinematics::right_cauchy_green(st, X1, X2);
      Vec3<S> E = kinematics::electric_field(st, X1, X2);
      S x = dot(kinematics::a_reference(st, X1, X2), st.ref.d3);
      S density;
      if (mode == LnMode::Exact) {
        S J = 1.0 + x;
        if (value_of(J) <= kMinJacobian) {
          throw NonpositiveJacobian("cross-section Gauss point has nonpositive J",
                                    element_id, i * g.n + j);
        }
        density = continuum_energy_kernel(C, J, E, p);
      } else {
        S y = x - 0.5 * x * x;
        density = 0.5 * p.mu * (trace(C) - 3.0) - p.mu * y + 0.5 * p.lambda * y * y +
                  p.c1 * dot(E, E) + p.c2 * dot(E, C * E);
      }
      total += w * density;
    }
  }
  return total;
}

// Closed-form cross-section energy: moment-weighted coefficient sum
// (C1+C7) J1111 + (C2+C8) J1122 + (C3+C9) J11 + (C4+C10) J2222
// + (C5+C11) J22 + (C6+C12) A. The curvature scalars k_i are the
// cross-section components of kappa (kappa = k_i d_i(t), equal to K.d_i(0)).
template <typename S>
S dea_energy_analytic_kernel(const kinematics::StrainState<S>& st,
                             const SectionProperties& sec, const MaterialParams& p) {
  const kinematics::TriadD& r0 = st.ref;
  S k1 = dot(st.K, r0.d1);
  S k2 = dot(st.K, r0.d2);
  Vec3<S> u1 = cross(st.K, r0.d1);  // X1 gradient of a^r
  Vec3<S> u2 = cross(st.K, r0.d2);  // X2 gradient of a^r
  S dg = dot(st.Gamma, r0.d3);      // = gamma . d3(t)
  S y0 = dg - 0.5 * dg * dg;
  S omdg = 1.0 - dg;
  S GG = dot(st.Gamma, st.Gamma);
  S u1u1 = dot(u1, u1);
  S u2u2 = dot(u2, u2);
  S u1u2 = dot(u1, u2);
  S e1 = st.e[0], e2 = st.e[1];
  S p1 = st.eps[0], p2 = st.eps[1], p3 = st.eps[2];

  S C1 = 0.125 * p.lambda * k2 * k2 * k2 * k2;
  S C2 = 0.75 * p.lambda * k1 * k1 * k2 * k2;
  S C3 = 0.5 * p.mu * u1u1 + 0.5 * p.mu * k2 * k2 - 0.5 * p.lambda * k2 * k2 * y0 +
         0.5 * p.lambda * k2 * k2 * omdg * omdg;
  S C4 = 0.125 * p.lambda * k1 * k1 * k1 * k1;
  S C5 = 0.5 * p.mu * u2u2 + 0.5 * p.mu * k1 * k1 - 0.5 * p.lambda * k1 * k1 * y0 +
         0.5 * p.lambda * k1 * k1 * omdg * omdg;
  S C6 = 0.5 * p.mu * (GG + 2.0 * dg) - p.mu * y0 + 0.5 * p.lambda * y0 * y0;

  S C7 = p.c2 * e1 * e1 * u1u1;
  S C8 = p.c2 * (e1 * e1 * u2u2 + e2 * e2 * u1u1 + 4.0 * e1 * e2 * u1u2);
  S C9 = p.c2 * p3 * p3 * u1u1 + p.c2 * e1 * e1 * (GG + 1.0) +
         2.0 * p.c2 * e1 * p1 * dot(r0.d1, u1) + 2.0 * p.c2 * e1 * p2 * dot(r0.d2, u1) +
         2.0 * p.c2 * e1 * p3 * dot(r0.d3, u1) + 2.0 * p.c2 * e1 * e1 * dot(r0.d3, st.Gamma) +
         2.0 * p.c2 * p3 * e1 * dot(r0.d3, u1) + 4.0 * p.c2 * p3 * e1 * dot(st.Gamma, u1) +
         p.c1 * e1 * e1;
  S C10 = p.c2 * e2 * e2 * u2u2;
  S C11 = p.c1 * e2 * e2 + 2.0 * p.c2 * e2 * p1 * dot(r0.d1, u2) +
          2.0 * p.c2 * e2 * p2 * dot(r0.d2, u2) + 2.0 * p.c2 * e2 * p3 * dot(r0.d3, u2) +
          2.0 * p.c2 * e2 * e2 * dot(r0.d3, st.Gamma) + p.c2 * e2 * e2 * (GG + 1.0) +
          p.c2 * p3 * p3 * u2u2 + 2.0 * p.c2 * p3 * e2 * dot(r0.d3, u2) +
          4.0 * p.c2 * p3 * e2 * dot(st.Gamma, u2);
  S C12 = p.c1 * (p1 * p1 + p2 * p2 + p3 * p3) +
          2.0 * p.c2 * p3 *
              (p1 * dot(r0.d1, st.Gamma) + p2 * dot(r0.d2, st.Gamma) +
               p3 * dot(r0.d3, st.Gamma)) +
          p.c2 * (p1 * p1 + p2 * p2 + p3 * p3 * (GG + 1.0));

  return (C1 + C7) * sec.J1111 + (C2 + C8) * sec.J1122 + (C3 + C9) * sec.J11 +
         (C4 + C10) * sec.J2222 + (C5 + C11) * sec.J22 + (C6 + C12) * sec.A;
}

double dea_beam_energy_quadrature(const BeamStrains& s, const kinematics::TriadD& cur,
                                  const kinematics::TriadD& ref, double side,
                                  const MaterialParams& p, int order,
                                  LnMode mode = LnMode::Exact);

double dea_beam_energy_analytic(const BeamStrains& s, const kinematics::TriadD& cur,
                                const kinematics::TriadD& ref, const SectionProperties& sec,
                                const MaterialParams& p);

// Kelvin-Voigt viscous first Piola-Kirchhoff stress,
// 1/2 J eta (F^-T Fdot^T F^-T + Fdot C^-1).
template <typename S>
Mat3<S> viscous_piola_kernel(const Mat3<S>& F, const Mat3<S>& Fdot, const S& J, double eta) {
  Mat3<S> Finv = inverse(F);
  Mat3<S> FinvT = transpose(Finv);
  Mat3<S> Cinv = Finv * FinvT;
  Mat3<S> r = FinvT * transpose(Fdot) * FinvT + Fdot * Cinv;
  return (0.5 * eta) * J * r;
}

Mat3d viscous_piola(const Mat3d& F, const Mat3d& Fdot, double J, const MaterialParams& p);

// Beam constitutive forces conjugate to (Gamma, K, eps): (f, m, d^e up to sign).
struct BeamForces {
  Vec3d dGamma;
  Vec3d dK;
  Vec3d dEps;
};

BeamForces beam_forces(const BeamStrains& s, const kinematics::TriadD& cur,
                       const kinematics::TriadD& ref, const SectionProperties& sec,
                       double side, const MaterialParams& p, EnergyPath path, int order);

}  // namespace debeam::materials
