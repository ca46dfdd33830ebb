#include "debeam/linsolve.hpp"

#include <cmath>

#include "debeam/types.hpp"

namespace debeam::linsolve {

ReducedMap ReducedMap::build(const DirichletMask& mask) {
  ReducedMap m;
  int n = static_cast<int>(mask.mask.size());
  m.index.assign(n, {});
  m.node_offset.assign(n, 0);
  m.node_size.assign(n, 0);
  int idx = 0;
  for (int a = 0; a < n; ++a) {
    m.node_offset[a] = idx;
    for (int g = 0; g < kGen; ++g) {
      if (mask.mask[a][g]) {
        m.index[a][g] = -1;
      } else {
        m.index[a][g] = idx++;
      }
    }
    m.node_size[a] = idx - m.node_offset[a];
  }
  m.total = idx;
  return m;
}

TangentSolver::TangentSolver(const ReducedMap& map, int dense_limit, bool force_banded)
    : map_(&map) {
  banded_ = force_banded || map.total > dense_limit;
  if (!banded_) {
    dense_.setZero(map.total, map.total);
  } else {
    int n = static_cast<int>(map.node_size.size());
    diag_.resize(n);
    upper_.resize(n > 0 ? n - 1 : 0);
    lower_.resize(n > 0 ? n - 1 : 0);
    for (int a = 0; a < n; ++a) {
      diag_[a].setZero(map.node_size[a], map.node_size[a]);
      if (a + 1 < n) {
        upper_[a].setZero(map.node_size[a], map.node_size[a + 1]);
        lower_[a].setZero(map.node_size[a + 1], map.node_size[a]);
      }
    }
    node_of_index_.assign(map.total, 0);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < map.node_size[a]; ++i) node_of_index_[map.node_offset[a] + i] = a;
  }
}

void TangentSolver::reset() {
  factorized_ = false;
  if (!banded_) {
    dense_.setZero();
  } else {
    for (auto& d : diag_) d.setZero();
    for (auto& u : upper_) u.setZero();
    for (auto& l : lower_) l.setZero();
  }
}

void TangentSolver::add(int gi, int gj, double v) {
  if (!banded_) {
    dense_(gi, gj) += v;
    return;
  }
  int a = node_of_index_[gi];
  int b = node_of_index_[gj];
  int ri = gi - map_->node_offset[a];
  int rj = gj - map_->node_offset[b];
  if (a == b) {
    diag_[a](ri, rj) += v;
  } else if (b == a + 1) {
    upper_[a](ri, rj) += v;
  } else if (a == b + 1) {
    lower_[b](ri, rj) += v;
  } else {
    throw SimError("TangentSolver: entry outside the block-tridiagonal pattern");
  }
}

void TangentSolver::check_block_lu(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, int rows,
                                   const char* what) const {
  if (rows == 0) return;
  Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
  double mx = d.maxCoeff();
  if (mx == 0.0 || d.minCoeff() < 1e-14 * mx || !std::isfinite(mx)) {
    throw SingularTangent(std::string("tangent factorization failed: ") + what);
  }
}

void TangentSolver::factorize() {
  scale_.resize(map_->total);
  auto set_scale = [this](int gi, double dia) {
    double a = std::abs(dia);
    scale_[gi] = a > 0.0 && std::isfinite(a) ? 1.0 / std::sqrt(a) : 1.0;
  };
  if (!banded_) {
    for (int i = 0; i < map_->total; ++i) set_scale(i, dense_(i, i));
    Eigen::MatrixXd b = scale_.asDiagonal() * dense_ * scale_.asDiagonal();
    lu_.compute(b);
    check_block_lu(lu_, static_cast<int>(b.rows()), "dense LU");
    factorized_ = true;
    return;
  }
  int n = static_cast<int>(diag_.size());
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < map_->node_size[a]; ++i)
      set_scale(map_->node_offset[a] + i, diag_[a](i, i));
  auto node_scale = [this](int a) {
    return scale_.segment(map_->node_offset[a], map_->node_size[a]);
  };
  auto scaled = [&](const Eigen::MatrixXd& blk, int row_node, int col_node) {
    return Eigen::MatrixXd(node_scale(row_node).asDiagonal() * blk *
                           node_scale(col_node).asDiagonal());
  };
  slu_.clear();
  slu_.resize(n);
  winv_.assign(n, Eigen::MatrixXd());
  Eigen::MatrixXd s = scaled(diag_[0], 0, 0);
  slu_[0].compute(s);
  check_block_lu(slu_[0], static_cast<int>(s.rows()), "block 0");
  Eigen::MatrixXd sinv_prev;
  if (s.rows() > 0)
    sinv_prev = slu_[0].inverse();
  else
    sinv_prev = Eigen::MatrixXd::Zero(0, 0);
  for (int a = 1; a < n; ++a) {
    winv_[a] = scaled(lower_[a - 1], a, a - 1) * sinv_prev;
    Eigen::MatrixXd sa = scaled(diag_[a], a, a) - winv_[a] * scaled(upper_[a - 1], a - 1, a);
    slu_[a].compute(sa);
    check_block_lu(slu_[a], static_cast<int>(sa.rows()), "block elimination");
    if (sa.rows() > 0)
      sinv_prev = slu_[a].inverse();
    else
      sinv_prev = Eigen::MatrixXd::Zero(0, 0);
  }
  factorized_ = true;
}

Eigen::VectorXd TangentSolver::solve(const Eigen::VectorXd& rhs) const {
  if (!factorized_) throw SimError("TangentSolver::solve before factorize");
  if (!banded_) {
    Eigen::VectorXd y = lu_.solve((scale_.array() * rhs.array()).matrix());
    return (scale_.array() * y.array()).matrix();
  }
  int n = static_cast<int>(diag_.size());
  Eigen::VectorXd srhs = (scale_.array() * rhs.array()).matrix();
  std::vector<Eigen::VectorXd> y(n);
  for (int a = 0; a < n; ++a) {
    y[a] = srhs.segment(map_->node_offset[a], map_->node_size[a]);
    if (a > 0 && winv_[a].rows() > 0 && winv_[a].cols() > 0) y[a] -= winv_[a] * y[a - 1];
  }
  Eigen::VectorXd x(map_->total);
  Eigen::VectorXd xa;
  auto scaled_upper = [&](int a) {
    return Eigen::MatrixXd(
        scale_.segment(map_->node_offset[a], map_->node_size[a]).asDiagonal() * upper_[a] *
        scale_.segment(map_->node_offset[a + 1], map_->node_size[a + 1]).asDiagonal());
  };
  for (int a = n - 1; a >= 0; --a) {
    Eigen::VectorXd b = y[a];
    if (a + 1 < n && upper_[a].rows() > 0 && upper_[a].cols() > 0)
      b -= scaled_upper(a) * x.segment(map_->node_offset[a + 1], map_->node_size[a + 1]);
    xa = map_->node_size[a] > 0 ? slu_[a].solve(b) : Eigen::VectorXd(0);
    x.segment(map_->node_offset[a], map_->node_size[a]) = xa;
  }
  return (scale_.array() * x.array()).matrix();
}

Eigen::MatrixXd TangentSolver::dense_copy() const {
  if (!banded_) return dense_;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(map_->total, map_->total);
  int n = static_cast<int>(diag_.size());
  for (int a = 0; a < n; ++a) {
    m.block(map_->node_offset[a], map_->node_offset[a], map_->node_size[a],
            map_->node_size[a]) = diag_[a];
    if (a + 1 < n) {
      m.block(map_->node_offset[a], map_->node_offset[a + 1], map_->node_size[a],
              map_->node_size[a + 1]) = upper_[a];
      m.block(map_->node_offset[a + 1], map_->node_offset[a], map_->node_size[a + 1],
              map_->node_size[a]) = lower_[a];
    }
  }
  return m;
}

}  // namespace debeam::linsolve
