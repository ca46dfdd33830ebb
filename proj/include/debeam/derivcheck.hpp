#pragma once

#include <Eigen/Dense>
#include <functional>

// Finite-difference oracle used by the test suites to validate the
// dual-number derivative engine. Kept independent of the production
// derivative paths on purpose.

namespace debeam::derivcheck {

struct FDSettings {
  enum class Scheme { Central, Forward };
  Scheme scheme = Scheme::Central;
  double h_rel = 1e-6;
  double h_abs = 1e-9;  // absolute floor for the per-component step
};

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, const FDSettings& s = {});

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, const FDSettings& s = {});

}  // namespace debeam::derivcheck
