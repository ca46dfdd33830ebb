#include "debeam/derivcheck.hpp"

#include <cmath>

namespace debeam::derivcheck {

namespace {
double step_size(double xi, const FDSettings& s) {
  return std::max(s.h_rel * std::abs(xi), s.h_abs);
}
}  // namespace

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, const FDSettings& s) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  double f0 = s.scheme == FDSettings::Scheme::Forward ? f(x) : 0.0;
  for (int i = 0; i < x.size(); ++i) {
    double h = step_size(x[i], s);
    if (s.scheme == FDSettings::Scheme::Central) {
      xp[i] = x[i] + h;
      double fp = f(xp);
      xp[i] = x[i] - h;
      double fm = f(xp);
      g[i] = (fp - fm) / (2.0 * h);
    } else {
      xp[i] = x[i] + h;
      g[i] = (f(xp) - f0) / h;
    }
    xp[i] = x[i];
  }
  return g;
}

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, const FDSettings& s) {
  Eigen::VectorXd f0;
  if (s.scheme == FDSettings::Scheme::Forward) f0 = f(x);
  Eigen::MatrixXd J;
  Eigen::VectorXd xp = x;
  for (int i = 0; i < x.size(); ++i) {
    double h = step_size(x[i], s);
    Eigen::VectorXd col;
    if (s.scheme == FDSettings::Scheme::Central) {
      xp[i] = x[i] + h;
      Eigen::VectorXd fp = f(xp);
      xp[i] = x[i] - h;
      Eigen::VectorXd fm = f(xp);
      col = (fp - fm) / (2.0 * h);
    } else {
      xp[i] = x[i] + h;
      col = (f(xp) - f0) / h;
    }
    xp[i] = x[i];
    if (J.size() == 0) J.setZero(col.size(), x.size());
    J.col(i) = col;
  }
  return J;
}

}  // namespace debeam::derivcheck
