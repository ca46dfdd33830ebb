#include <doctest.h>

#include "debeam/derivcheck.hpp"
#include "oracles.hpp"

using namespace debeam;
using namespace debeam::materials;
using testutil::make_rng;
using testutil::rel_err;

namespace {

kinematics::TriadD identity_triad() {
  kinematics::TriadD t;
  t.d1 = {1, 0, 0};
  t.d2 = {0, 1, 0};
  t.d3 = {0, 0, 1};
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("materials");

TEST_CASE("square section moments") {
  double b = 0.02;
  SectionProperties s = square_section(b, 1.0);
  double b4 = b * b * b * b;
  double b6 = b4 * b * b;
  CHECK(s.A == doctest::Approx(4e-4).epsilon(1e-15));
  CHECK(s.J11 == doctest::Approx(b4 / 12.0).epsilon(1e-15));
  CHECK(s.J22 == doctest::Approx(b4 / 12.0).epsilon(1e-15));
  CHECK(s.Jp == doctest::Approx(b4 / 6.0).epsilon(1e-15));
  CHECK(s.J1111 == doctest::Approx(b6 / 80.0).epsilon(1e-15));
  CHECK(s.J1122 == doctest::Approx(b6 / 144.0).epsilon(1e-15));
  CHECK(s.J12 == 0.0);
  // matches the quoted magnitudes
  CHECK(s.J11 == doctest::Approx(1.3333e-8).epsilon(1e-4));
  CHECK(s.Jp == doctest::Approx(2.6667e-8).epsilon(1e-4));
}

TEST_CASE("svk energy zero state and sign flip") {
  SectionProperties s = square_section(0.02, 1.0);
  CHECK(svk_beam_energy({0, 0, 0}, {0, 0, 0}, s, 999.8, 233.0) == 0.0);
  auto rng = make_rng(301);
  for (int k = 0; k < 20; ++k) {
    Vec3d G = testutil::rand_vec(rng, 0.2);
    Vec3d K = testutil::rand_vec(rng, 10.0);
    double a = svk_beam_energy(G, K, s, 999.8, 233.0);
    double b = svk_beam_energy(-G, -K, s, 999.8, 233.0);
    CHECK(a == b);
    CHECK(a >= 0.0);
  }
}

TEST_CASE("svk Hessian equals the block-diagonal tangents") {
  SectionProperties s = square_section(0.02, 1.0);
  double lambda = 999.8, mu = 233.0;
  double l2m = lambda + 2.0 * mu;
  // exact second differences; the energy is a quadratic form
  double h = 1e-2;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(6);
  auto f = [&](const Eigen::VectorXd& z) {
    return svk_beam_energy({z[0], z[1], z[2]}, {z[3], z[4], z[5]}, s, lambda, mu);
  };
  Eigen::MatrixXd H(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      Eigen::VectorXd xpp = x0, xpm = x0, xmp = x0, xmm = x0;
      xpp[i] += h;
      xpp[j] += h;
      xpm[i] += h;
      xpm[j] -= h;
      xmp[i] -= h;
      xmp[j] += h;
      xmm[i] -= h;
      xmm[j] -= h;
      H(i, j) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
    }
  }
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(6, 6);
  expect(0, 0) = mu * s.A;
  expect(1, 1) = mu * s.A;
  expect(2, 2) = l2m * s.A;
  expect(3, 3) = l2m * s.J22;
  expect(4, 4) = l2m * s.J11;
  expect(3, 4) = expect(4, 3) = l2m * s.J12;
  expect(5, 5) = mu * s.Jp;
  CHECK((H - expect).cwiseAbs().maxCoeff() <= 1e-8 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("continuum energy closed forms") {
  MaterialParams p;
  CHECK(continuum_energy(Mat3d::identity(), 1.0, {0, 0, 0}, p) == 0.0);
  double E3 = 123.5;
  CHECK(continuum_energy(Mat3d::identity(), 1.0, {0, 0, E3}, p) ==
        doctest::Approx((p.c1 + p.c2) * E3 * E3).epsilon(1e-14));
  double s = 1.1;
  Mat3d C = Mat3d::identity();
  C(2, 2) = s * s;
  double expect = 0.5 * p.mu * (s * s - 1.0) - p.mu * std::log(s) +
                  0.5 * p.lambda * std::log(s) * std::log(s);
  CHECK(continuum_energy(C, s, {0, 0, 0}, p) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(continuum_energy(C, 0.0, {0, 0, 0}, p), NonpositiveJacobian);
  CHECK_THROWS_AS(continuum_energy(C, -0.3, {0, 0, 0}, p), NonpositiveJacobian);
}

TEST_CASE("quadrature energy zero state") {
  MaterialParams p;
  BeamStrains s;
  auto id = identity_triad();
  for (int order : {2, 3, 4}) {
    CHECK(dea_beam_energy_quadrature(s, id, id, 0.02, p, order) == 0.0);
  }
}

TEST_CASE("quadrature order insensitivity at small strain") {
  MaterialParams p;
  auto rng = make_rng(302);
  double b = 0.02;
  auto id = identity_triad();
  for (int k = 0; k < 50; ++k) {
    auto bun = testutil::random_bundle(rng, 1e-5, 1e-5 / b, 1e3, 1e-3);
    double q2 = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 2, LnMode::Truncated);
    double q4 = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 4, LnMode::Truncated);
    CHECK(rel_err(q2, q4) <= 1e-10);
  }
  // orders 3 and 4 integrate the quartic integrand exactly even at
  // moderate strain
  for (int k = 0; k < 50; ++k) {
    auto bun = testutil::random_bundle(rng, 1e-2, 1e-2 / b, 2e4, 2e4);
    double q3 = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 3, LnMode::Truncated);
    double q4 = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 4, LnMode::Truncated);
    CHECK(rel_err(q3, q4) <= 1e-12);
  }
}

TEST_CASE("uniform axial field slab integral") {
  MaterialParams p;
  BeamStrains s;
  double k = 2e5;
  s.eps = {0.0, 0.0, k};
  auto id = identity_triad();
  double b = 0.02;
  double expect = b * b * (p.c1 + p.c2) * k * k;
  CHECK(rel_err(dea_beam_energy_quadrature(s, id, id, b, p, 2), expect) <= 1e-13);
  SectionProperties sec = square_section(b, p.rho);
  CHECK(rel_err(dea_beam_energy_analytic(s, id, id, sec, p), expect) <= 1e-13);
}

TEST_CASE("analytic energy zero state") {
  MaterialParams p;
  BeamStrains s;
  auto id = identity_triad();
  CHECK(dea_beam_energy_analytic(s, id, id, square_section(0.02, 1.0), p) == 0.0);
}

TEST_CASE("analytic energy matches truncated quadrature to 1e-10") {
  // the independent oracle for the closed-form coefficients
  MaterialParams p;
  auto rng = make_rng(303);
  double b = 0.02;
  SectionProperties sec = square_section(b, p.rho);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    auto bun = testutil::random_bundle(rng, 1e-2, 1e-2 / b, 2e4, 2e4);
    double qa = dea_beam_energy_analytic(bun.s, bun.cur, bun.ref, sec, p);
    double qq = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 3, LnMode::Truncated);
    worst = std::max(worst, rel_err(qa, qq));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("analytic energy matches exact-log quadrature within one percent") {
  MaterialParams p;
  auto rng = make_rng(304);
  double b = 0.02;
  SectionProperties sec = square_section(b, p.rho);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    auto bun = testutil::random_bundle(rng, 1e-2, 1e-2 / b, 2e4, 2e4);
    double qa = dea_beam_energy_analytic(bun.s, bun.cur, bun.ref, sec, p);
    double qq = dea_beam_energy_quadrature(bun.s, bun.cur, bun.ref, b, p, 4, LnMode::Exact);
    worst = std::max(worst, rel_err(qa, qq));
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("nonpositive jacobian at a quadrature point is identified") {
  MaterialParams p;
  BeamStrains s;
  s.Gamma = {0.0, 0.0, -1.2};
  auto id = identity_triad();
  try {
    dea_beam_energy_quadrature(s, id, id, 0.02, p, 3, LnMode::Exact);
    CHECK(false);
  } catch (const NonpositiveJacobian& e) {
    CHECK(e.gauss_point >= 0);
  }
  // the series path stays finite there
  CHECK(std::isfinite(dea_beam_energy_quadrature(s, id, id, 0.02, p, 3, LnMode::Truncated)));
  CHECK_THROWS_AS(gauss_rule(5), ConfigError);
}

TEST_CASE("viscous stress closed forms") {
  MaterialParams p;
  p.eta = 0.37;
  Mat3d zero{};
  CHECK(max_abs(viscous_piola(Mat3d::identity(), zero, 1.0, p)) == 0.0);
  auto rng = make_rng(305);
  Mat3d D{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      D(i, j) = testutil::urand(rng, -1.0, 1.0);
      D(j, i) = D(i, j);
    }
  Mat3d P = viscous_piola(Mat3d::identity(), D, 1.0, p);
  CHECK(max_abs(P - p.eta * D) <= 1e-14 * std::max(1.0, max_abs(D)));
  CHECK_THROWS_AS(viscous_piola(Mat3d::identity(), D, -1.0, p), NonpositiveJacobian);
}

TEST_CASE("viscous dissipation power is nonnegative") {
  MaterialParams p;
  p.eta = 0.5;
  auto rng = make_rng(306);
  for (int k = 0; k < 1000; ++k) {
    Mat3d F = Mat3d::identity();
    for (int i = 0; i < 9; ++i) F.m[i] += testutil::urand(rng, -0.05, 0.05);
    Mat3d Fd;
    for (int i = 0; i < 9; ++i) Fd.m[i] = testutil::urand(rng, -1.0, 1.0);
    double J = det(F);
    REQUIRE(J > 0.0);
    Mat3d P = viscous_piola(F, Fd, J, p);
    CHECK(ddot(P, Fd) >= 0.0);
  }
}

TEST_CASE("no spontaneous polarization force at the reference state") {
  MaterialParams p;
  BeamStrains s;
  auto id = identity_triad();
  SectionProperties sec = square_section(0.02, p.rho);
  BeamForces f = beam_forces(s, id, id, sec, 0.02, p, EnergyPath::Analytic, 3);
  CHECK(max_abs(f.dEps) == 0.0);
  CHECK(max_abs(f.dGamma) == 0.0);
  CHECK(max_abs(f.dK) == 0.0);
}

TEST_CASE("constitutive forces match finite differences of the energy") {
  MaterialParams p;
  auto rng = make_rng(307);
  double b = 0.02;
  SectionProperties sec = square_section(b, p.rho);
  for (auto path : {EnergyPath::Quadrature, EnergyPath::Analytic}) {
    for (int k = 0; k < 10; ++k) {
      auto bun = testutil::random_bundle(rng, 1e-2, 1e-2 / b, 2e4, 2e4);
      BeamForces f = beam_forces(bun.s, bun.cur, bun.ref, sec, b, p, path, 3);
      Eigen::VectorXd x0(9);
      for (int i = 0; i < 3; ++i) {
        x0[i] = bun.s.Gamma[i];
        x0[3 + i] = bun.s.K[i];
        x0[6 + i] = bun.s.eps[i];
      }
      auto energy = [&](const Eigen::VectorXd& z) {
        BeamStrains s = bun.s;
        for (int i = 0; i < 3; ++i) {
          s.Gamma[i] = z[i];
          s.K[i] = z[3 + i];
          s.eps[i] = z[6 + i];
        }
        return path == EnergyPath::Analytic
                   ? dea_beam_energy_analytic(s, bun.cur, bun.ref, sec, p)
                   : dea_beam_energy_quadrature(s, bun.cur, bun.ref, b, p, 3);
      };
      derivcheck::FDSettings fds;
      fds.h_rel = 1e-5;
      fds.h_abs = 1e-6;  // the energies here are O(10); a larger floor keeps
                         // the central difference out of the roundoff regime
      Eigen::VectorXd g = derivcheck::fd_gradient(energy, x0, fds);
      Eigen::VectorXd ga(9);
      for (int i = 0; i < 3; ++i) {
        ga[i] = f.dGamma[i];
        ga[3 + i] = f.dK[i];
        ga[6 + i] = f.dEps[i];
      }
      double scale = std::max(1e-12, ga.cwiseAbs().maxCoeff());
      CHECK((g - ga).cwiseAbs().maxCoeff() <= 1e-6 * scale);
    }
  }
}

TEST_SUITE_END();
