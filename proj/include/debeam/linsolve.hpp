#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "debeam/mesh.hpp"

namespace debeam::linsolve {

// Bookkeeping for the reduced (null-space projected, Dirichlet-trimmed) system.
struct ReducedMap {
  std::vector<std::array<int, kGen>> index;  // (node, gdof) -> reduced index or -1
  std::vector<int> node_offset;
  std::vector<int> node_size;
  int total = 0;

  static ReducedMap build(const DirichletMask& mask);
};

// Tangent storage and factorization. Dense up to dense_limit unknowns;
// beyond that a block-tridiagonal elimination exploits the 1D connectivity.
class TangentSolver {
 public:
  TangentSolver(const ReducedMap& map, int dense_limit = 2000, bool force_banded = false);

  void reset();
  void add(int gi, int gj, double v);
  void factorize();
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  bool banded() const { return banded_; }
  Eigen::MatrixXd dense_copy() const;

 private:
  const ReducedMap* map_;
  bool banded_ = false;
  bool factorized_ = false;
  // symmetric diagonal equilibration; the electrical stiffness sits many
  // orders below the inertia terms when electrical unknowns are free
  Eigen::VectorXd scale_;

  // dense path
  Eigen::MatrixXd dense_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;

  // banded path: per-node diagonal blocks and couplings to the next node
  std::vector<Eigen::MatrixXd> diag_;   // n_a x n_a
  std::vector<Eigen::MatrixXd> upper_;  // n_a x n_{a+1}
  std::vector<Eigen::MatrixXd> lower_;  // n_{a+1} x n_a
  std::vector<Eigen::MatrixXd> winv_;   // L_{a-1} S_{a-1}^{-1}
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> slu_;
  std::vector<int> node_of_index_;

  void check_block_lu(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, int rows,
                      const char* what) const;
};

}  // namespace debeam::linsolve
