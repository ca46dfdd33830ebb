#include <doctest.h>

#include "debeam/derivcheck.hpp"
#include "oracles.hpp"

using namespace debeam;
using namespace debeam::derivcheck;

TEST_SUITE_BEGIN("derivcheck");

TEST_CASE("gradient of a quadratic") {
  auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  Eigen::VectorXd g = fd_gradient(f, x);
  CHECK(std::abs(g[0] - 2.0) <= 1e-8);
  CHECK(std::abs(g[1] - 4.0) <= 1e-8);
}

TEST_CASE("gradient of a constant") {
  auto f = [](const Eigen::VectorXd&) { return 3.25; };
  Eigen::VectorXd x = Eigen::VectorXd::Random(5);
  CHECK(fd_gradient(f, x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("jacobian of a linear map") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Random(4, 3);
  auto f = [&A](const Eigen::VectorXd& x) -> Eigen::VectorXd { return A * x; };
  Eigen::VectorXd x = Eigen::VectorXd::Random(3);
  Eigen::MatrixXd J = fd_jacobian(f, x);
  CHECK((J - A).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("forward scheme works too") {
  FDSettings s;
  s.scheme = FDSettings::Scheme::Forward;
  auto f = [](const Eigen::VectorXd& x) { return x[0] * x[0]; };
  Eigen::VectorXd x(1);
  x << 3.0;
  Eigen::VectorXd g = fd_gradient(f, x, s);
  CHECK(std::abs(g[0] - 6.0) <= 1e-4);
}

TEST_CASE("fd jacobian of the node constraints matches the closed form") {
  auto rng = testutil::make_rng(601);
  NodeState n;
  auto t = testutil::triad_from_rotation(testutil::rand_rotation(rng));
  n.d1 = t.d1;
  n.d2 = t.d2;
  n.d3 = t.d3;
  Eigen::VectorXd q(kDof);
  set_node_state(q, 0, n);
  auto f = [](const Eigen::VectorXd& qq) -> Eigen::VectorXd {
    return assembly::node_constraints(node_state(qq, 0));
  };
  Eigen::MatrixXd J = fd_jacobian(f, q);
  Eigen::MatrixXd G = assembly::node_constraint_jacobian(n);
  CHECK((J - G).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("cross-engine check against the dual-number potential gradient") {
  MaterialParams p;
  BeamMesh mesh = make_straight_beam(0.1, 3, 0.02, p);
  auto rng = testutil::make_rng(602);
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXd q = testutil::random_configuration(rng, mesh, 1e-4, 1e-2, 2e2);
    auto f = [&](const Eigen::VectorXd& qq) {
      return assembly::potential_energy(qq, mesh, materials::EnergyPath::Analytic, 2);
    };
    FDSettings s;
    s.h_abs = 1e-7;
    Eigen::VectorXd g = fd_gradient(f, q, s);
    Eigen::VectorXd gd = assembly::grad_potential(q, mesh, materials::EnergyPath::Analytic, 2);
    double scale = std::max(gd.cwiseAbs().maxCoeff(), 1e-12);
    CHECK((g - gd).cwiseAbs().maxCoeff() <= 1e-6 * scale);
  }
}

TEST_CASE("schwarz symmetry of the double finite difference") {
  MaterialParams p;
  BeamMesh mesh = make_straight_beam(0.1, 2, 0.02, p);
  auto rng = testutil::make_rng(603);
  Eigen::VectorXd q = testutil::random_configuration(rng, mesh, 1e-4, 1e-2, 1e2);
  auto f = [&](const Eigen::VectorXd& qq) {
    return assembly::potential_energy(qq, mesh, materials::EnergyPath::Analytic, 2);
  };
  FDSettings outer;
  outer.h_abs = 1e-5;
  outer.h_rel = 1e-5;
  FDSettings inner;
  inner.h_abs = 1e-6;
  inner.h_rel = 1e-6;
  auto grad = [&](const Eigen::VectorXd& qq) -> Eigen::VectorXd {
    return fd_gradient(f, qq, inner);
  };
  Eigen::MatrixXd H = fd_jacobian(grad, q, outer);
  double scale = H.cwiseAbs().maxCoeff();
  CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-3 * scale);
}

TEST_CASE("central differences converge at second order") {
  auto f = [](const Eigen::VectorXd& x) { return std::exp(std::sin(3.0 * x[0])); };
  Eigen::VectorXd x(1);
  x << 0.4;
  double exact = 3.0 * std::cos(3.0 * x[0]) * std::exp(std::sin(3.0 * x[0]));
  std::vector<double> hs, errs;
  for (double h = 1e-2; h >= 1e-3; h /= std::pow(10.0, 0.25)) {
    FDSettings s;
    s.h_rel = 0.0;
    s.h_abs = h;
    double g = fd_gradient(f, x, s)[0];
    hs.push_back(std::log10(h));
    errs.push_back(std::log10(std::abs(g - exact)));
  }
  // least-squares slope over the decade
  double n = hs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < hs.size(); ++i) {
    sx += hs[i];
    sy += errs[i];
    sxx += hs[i] * hs[i];
    sxy += hs[i] * errs[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.1));  // 2 +/- 0.2
}

TEST_SUITE_END();
