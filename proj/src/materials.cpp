#include "debeam/materials.hpp"

#include <cmath>

namespace debeam::materials {

const GaussRule& gauss_rule(int order) {
  static const GaussRule g2 = {2, {-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
  static const GaussRule g3 = {3,
                               {0.0, -0.7745966692414834, 0.7745966692414834},
                               {0.8888888888888888, 0.5555555555555556, 0.5555555555555556}};
  static const GaussRule g4 = {4,
                               {-0.3399810435848563, 0.3399810435848563,
                                -0.8611363115940526, 0.8611363115940526},
                               {0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538, 0.3478548451374538}};
  switch (order) {
    case 2:
      return g2;
    case 3:
      return g3;
    case 4:
      return g4;
    default:
      throw ConfigError("quad_order", "cross-section quadrature order must be 2, 3 or 4");
  }
}

double svk_beam_energy(const Vec3d& Gamma, const Vec3d& K, const SectionProperties& sec,
                       double lambda, double mu) {
  double l2m = lambda + 2.0 * mu;
  double en = 0.5 * (mu * sec.A * (Gamma[0] * Gamma[0] + Gamma[1] * Gamma[1]) +
                     l2m * sec.A * Gamma[2] * Gamma[2]);
  double ek = 0.5 * (l2m * (sec.J22 * K[0] * K[0] + sec.J11 * K[1] * K[1] +
                            2.0 * sec.J12 * K[0] * K[1]) +
                     mu * sec.Jp * K[2] * K[2]);
  return en + ek;
}

double continuum_energy(const Mat3d& C, double J, const Vec3d& E, const MaterialParams& p) {
  if (J <= 0.0) {
    throw NonpositiveJacobian("continuum_energy: J must be positive");
  }
  return continuum_energy_kernel<double>(C, J, E, p);
}

double dea_beam_energy_quadrature(const BeamStrains& s, const kinematics::TriadD& cur,
                                  const kinematics::TriadD& ref, double side,
                                  const MaterialParams& p, int order, LnMode mode) {
  auto st = kinematics::make_state(s, cur, ref);
  return dea_energy_quadrature_kernel<double>(st, side, p, order, mode);
}

double dea_beam_energy_analytic(const BeamStrains& s, const kinematics::TriadD& cur,
                                const kinematics::TriadD& ref, const SectionProperties& sec,
                                const MaterialParams& p) {
  auto st = kinematics::make_state(s, cur, ref);
  return dea_energy_analytic_kernel<double>(st, sec, p);
}

Mat3d viscous_piola(const Mat3d& F, const Mat3d& Fdot, double J, const MaterialParams& p) {
  if (J <= 0.0) {
    throw NonpositiveJacobian("viscous_piola: J must be positive");
  }
  return viscous_piola_kernel<double>(F, Fdot, J, p.eta);
}

BeamForces beam_forces(const BeamStrains& s, const kinematics::TriadD& cur,
                       const kinematics::TriadD& ref, const SectionProperties& sec,
                       double side, const MaterialParams& p, EnergyPath path, int order) {
  using D9 = Dual<double, 9>;
  kinematics::StrainState<D9> st;
  auto seed = [](Vec3<D9>& out, const Vec3d& v, int base) {
    for (int i = 0; i < 3; ++i) {
      out[i].v = v[i];
      out[i].d[base + i] = 1.0;
    }
  };
  seed(st.Gamma, s.Gamma, 0);
  seed(st.K, s.K, 3);
  seed(st.eps, s.eps, 6);
  for (int i = 0; i < 3; ++i) st.e[i] = s.e[i];
  for (int i = 0; i < 3; ++i) {
    st.cur.d1[i] = cur.d1[i];
    st.cur.d2[i] = cur.d2[i];
    st.cur.d3[i] = cur.d3[i];
  }
  st.ref = ref;
  Mat3d lam = outer(cur.d1, ref.d1) + outer(cur.d2, ref.d2) + outer(cur.d3, ref.d3);
  for (int i = 0; i < 9; ++i) st.Lambda.m[i] = lam.m[i];
  st.gamma = st.Lambda * st.Gamma;
  st.kappa = st.Lambda * st.K;

  D9 omega = (path == EnergyPath::Analytic)
                 ? dea_energy_analytic_kernel<D9>(st, sec, p)
                 : dea_energy_quadrature_kernel<D9>(st, side, p, order, LnMode::Exact);
  BeamForces f;
  for (int i = 0; i < 3; ++i) {
    f.dGamma[i] = omega.d[i];
    f.dK[i] = omega.d[3 + i];
    f.dEps[i] = omega.d[6 + i];
  }
  return f;
}

}  // namespace debeam::materials
