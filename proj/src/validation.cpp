#include "debeam/validation.hpp"

#include <random>

#include "debeam/derivcheck.hpp"
#include "debeam/so3.hpp"

namespace debeam::validation {

namespace {

using kinematics::TriadD;

Vec3d rand_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

Mat3d rand_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3d v{u(rng), u(rng), u(rng)};
  double n = std::sqrt(dot(v, v));
  if (n < 1e-8) return Mat3d::identity();
  std::uniform_real_distribution<double> a(0.0, 3.1);
  return so3::exp_map<double>(v * (a(rng) / n));
}

TriadD triad_of(const Mat3d& r) {
  TriadD t;
  for (int i = 0; i < 3; ++i) {
    t.d1[i] = r(i, 0);
    t.d2[i] = r(i, 1);
    t.d3[i] = r(i, 2);
  }
  return t;
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

EnergyValidation validate_energy(const scenario::ScenarioConfig& cfg, int samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const MaterialParams& p = cfg.material;
  const double b = cfg.side_mm;
  SectionProperties sec = square_section(b, p.rho);

  const double mech = 1e-2;
  const double curv = 2e-2 / b;  // keeps |K| * b/2 at the mechanical scale
  const double eps_scale =
      std::max({std::abs(cfg.phi_o_v) / cfg.length_mm, std::abs(cfg.alpha_v_mm),
                std::abs(cfg.beta_v_mm), 1e3});
  const double e_scale = eps_scale / cfg.length_mm * 0.1;

  EnergyValidation out;
  out.samples = samples;
  for (int k = 0; k < samples; ++k) {
    Mat3d R0 = rand_rotation(rng);
    Mat3d R1 = rand_rotation(rng);
    TriadD ref = triad_of(R0);
    TriadD cur = triad_of(R1 * R0);
    Mat3d Lam = outer(cur.d1, ref.d1) + outer(cur.d2, ref.d2) + outer(cur.d3, ref.d3);
    BeamStrains s;
    s.Gamma = rand_vec(rng, mech);
    s.K = rand_vec(rng, curv);
    s.gamma = Lam * s.Gamma;
    s.kappa = Lam * s.K;
    s.eps = rand_vec(rng, eps_scale);
    std::uniform_real_distribution<double> ue(-e_scale, e_scale);
    s.e = {ue(rng), ue(rng), 0.0};

    double analytic = materials::dea_beam_energy_analytic(s, cur, ref, sec, p);
    double trunc =
        materials::dea_beam_energy_quadrature(s, cur, ref, b, p, 3, materials::LnMode::Truncated);
    double exact =
        materials::dea_beam_energy_quadrature(s, cur, ref, b, p, 4, materials::LnMode::Exact);
    out.max_rel_truncated = std::max(out.max_rel_truncated, rel(analytic, trunc));
    out.max_rel_exact = std::max(out.max_rel_exact, rel(analytic, exact));
  }
  return out;
}

DerivativeCheck check_derivatives(const scenario::ScenarioConfig& cfg, int gradient_samples,
                                  std::uint64_t seed) {
  DerivativeCheck out;
  out.gradient_samples = gradient_samples;

  scenario::ScenarioSetup s = scenario::build_scenario(cfg);
  integrator::NewtonOpts opts;
  opts.tol = cfg.newton_tol;
  opts.max_iter = cfg.max_iterations;
  integrator::Model model(s.mesh, s.mask, cfg.energy_path, cfg.quad_order, opts);
  const double dt = cfg.dt_ms;

  Eigen::VectorXd q1 =
      integrator::initialize(s.q0, Eigen::VectorXd::Zero(s.q0.size()), dt, model);

  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(kGen * s.mesh.n_nodes());
  Eigen::MatrixXd K = integrator::tangent(s.q0, q1, u0, dt, model, 2.0 * dt);
  auto resid = [&](const Eigen::VectorXd& ur) -> Eigen::VectorXd {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(kGen * s.mesh.n_nodes());
    for (size_t a = 0; a < model.rmap.index.size(); ++a)
      for (int g = 0; g < kGen; ++g) {
        int idx = model.rmap.index[a][g];
        if (idx >= 0) u[kGen * a + g] = ur[idx];
      }
    return integrator::del_residual(s.q0, q1, u, dt, model, 2.0 * dt);
  };
  derivcheck::FDSettings fds;
  fds.h_abs = 1e-7;
  Eigen::MatrixXd Kfd = derivcheck::fd_jacobian(resid, Eigen::VectorXd::Zero(model.rmap.total),
                                                fds);
  out.tangent_rel_err =
      (K - Kfd).cwiseAbs().maxCoeff() / std::max(K.cwiseAbs().maxCoeff(), 1e-300);

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < gradient_samples; ++k) {
    Eigen::VectorXd q = reference_configuration(s.mesh);
    for (int a = 0; a < s.mesh.n_nodes(); ++a) {
      NodeState n = node_state(q, a);
      Mat3d R = so3::exp_map<double>(rand_vec(rng, 1e-2));
      n.phi = n.phi + rand_vec(rng, 1e-4);
      n.d1 = R * n.d1;
      n.d2 = R * n.d2;
      n.d3 = R * n.d3;
      n.elec = rand_vec(rng, std::max(1.0, std::abs(cfg.phi_o_v) * 1e-2));
      set_node_state(q, a, n);
    }
    auto f = [&](const Eigen::VectorXd& qq) {
      return assembly::potential_energy(qq, s.mesh, cfg.energy_path, cfg.quad_order);
    };
    Eigen::VectorXd gfd = derivcheck::fd_gradient(f, q, fds);
    Eigen::VectorXd gd = assembly::grad_potential(q, s.mesh, cfg.energy_path, cfg.quad_order);
    double scale = std::max(gd.cwiseAbs().maxCoeff(), 1e-300);
    worst = std::max(worst, (gfd - gd).cwiseAbs().maxCoeff() / scale);
  }
  out.gradient_rel_err = worst;
  return out;
}

}  // namespace debeam::validation
