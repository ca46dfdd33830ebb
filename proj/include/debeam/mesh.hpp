#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "debeam/kinematics.hpp"
#include "debeam/types.hpp"

namespace debeam {

inline constexpr int kDof = 15;  // configuration slots per node
inline constexpr int kGen = 9;   // generalized (null-space) slots per node

struct ElementInfo {
  int a = 0;
  int b = 0;
  double le = 0.0;
  kinematics::TriadD ref_mid;
};

struct BeamMesh {
  std::vector<double> s;  // nodal arc-length, strictly increasing
  std::vector<ReferenceFrame> frames;
  SectionProperties section;
  MaterialParams material;
  double side = 0.0;  // square cross-section side, mm

  std::vector<ElementInfo> elements;  // derived by finalize()
  std::vector<double> weight;         // nodal lumping weights (half adjacent lengths)

  int n_nodes() const { return static_cast<int>(s.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  void finalize();
};

BeamMesh make_straight_beam(double length, int n_elements, double side,
                            const MaterialParams& mat);

NodeState node_state(const Eigen::VectorXd& q, int node);
void set_node_state(Eigen::VectorXd& q, int node, const NodeState& n);

// Straight stress-free configuration with identity triads and zero voltage.
Eigen::VectorXd reference_configuration(const BeamMesh& mesh);

// Prescribed values for the masked generalized slots of one node at time t.
// phi/elec entries are assigned values; theta entries are increments.
struct NodeSchedule {
  Vec3d phi{};
  Vec3d theta{};
  Vec3d elec{};
};

struct DirichletMask {
  // per node, slots: u_phi (0..2), theta (3..5), v (6..8)
  std::vector<std::array<bool, 9>> mask;
  std::function<NodeSchedule(int node, double t)> schedule;

  static DirichletMask none(int n_nodes) {
    DirichletMask m;
    m.mask.assign(n_nodes, {});
    return m;
  }
  bool any(int node) const {
    for (bool b : mask[node])
      if (b) return true;
    return false;
  }
  int masked_count() const {
    int c = 0;
    for (const auto& nm : mask)
      for (bool b : nm) c += b ? 1 : 0;
    return c;
  }
};

}  // namespace debeam
