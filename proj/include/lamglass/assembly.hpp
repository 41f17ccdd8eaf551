#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "lamglass/constraints.hpp"
#include "lamglass/element.hpp"
#include "lamglass/state.hpp"

namespace lamglass {

/// Global dof index for (layer, node, component) in the layer-major numbering
/// d = [d_layer1, d_layer2, d_layer3] that keeps the tangent block diagonal.
inline int global_dof(int layer, int node, DofComponent component, int node_count) {
  return (layer * node_count + node) * 3 + static_cast<int>(component);
}

/// Row of the multiplier/constraint vector for (interface, node, component),
/// interface-major, then node, then (X = 0, Z = 1).
inline int multiplier_row(int interface, int node, int component, int node_count) {
  return (interface * node_count + node) * 2 + component;
}

/// Maps (layer, node, component) onto global and support-reduced indices.
class DofMap {
 public:
  explicit DofMap(const BeamModel& model)
      : node_count_(model.node_count()), reduced_(model.dof_count(), 0) {
    std::vector<char> fixed_flag(reduced_.size(), 0);
    for (const auto& support : model.supports) {
      if (support.fix_u) fixed_flag[global_dof(support.layer, support.node, DofComponent::axial, node_count_)] = 1;
      if (support.fix_w) fixed_flag[global_dof(support.layer, support.node, DofComponent::deflection, node_count_)] = 1;
      if (support.fix_phi) fixed_flag[global_dof(support.layer, support.node, DofComponent::rotation, node_count_)] = 1;
    }
    for (int g = 0; g < static_cast<int>(reduced_.size()); ++g) {
      if (fixed_flag[g]) {
        reduced_[g] = -1;
        fixed_.push_back(g);
      } else {
        reduced_[g] = static_cast<int>(free_.size());
        free_.push_back(g);
      }
    }
  }

  int global_index(int layer, int node, DofComponent component) const {
    return global_dof(layer, node, component, node_count_);
  }
  /// Reduced index of a global dof, or -1 when the dof is fixed.
  int reduced_index(int global) const { return reduced_[global]; }
  bool is_fixed(int global) const { return reduced_[global] < 0; }
  int full_count() const { return static_cast<int>(reduced_.size()); }
  int free_count() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& fixed_indices() const { return fixed_; }
  const std::vector<int>& free_indices() const { return free_; }

 private:
  int node_count_;
  std::vector<int> reduced_;
  std::vector<int> fixed_;
  std::vector<int> free_;
};

/// Gathers the element dofs of element e in a layer from the full
/// displacement vector.
inline ElementDofs gather_element_dofs(const BeamModel& model, const Eigen::VectorXd& displacement,
                                       int layer, int element) {
  const int nn = model.node_count();
  ElementDofs d;
  d.u1 = displacement[global_dof(layer, element, DofComponent::axial, nn)];
  d.w1 = displacement[global_dof(layer, element, DofComponent::deflection, nn)];
  d.phi1 = displacement[global_dof(layer, element, DofComponent::rotation, nn)];
  d.u2 = displacement[global_dof(layer, element + 1, DofComponent::axial, nn)];
  d.w2 = displacement[global_dof(layer, element + 1, DofComponent::deflection, nn)];
  d.phi2 = displacement[global_dof(layer, element + 1, DofComponent::rotation, nn)];
  d.length = model.element_length();
  return d;
}

/// Assembled blocks in the full (unreduced) numbering.
struct FullSystem {
  int dof_count = 0;
  int constraint_count = 0;
  std::vector<Eigen::Triplet<double>> stiffness_triplets;  ///< K_t + K_lambda
  std::vector<Eigen::Triplet<double>> jacobian_triplets;   ///< C
  Eigen::VectorXd internal_force;
  Eigen::VectorXd external_force;
  Eigen::VectorXd gap;  ///< constraint values c
  double min_thickness = 0.0;
};

/// Support-reduced blocks of the linearized saddle-point system. Constraint
/// rows whose six columns are all eliminated by supports are dropped
/// (trivially satisfied by the homogeneous supports); `active_rows` maps the
/// kept rows back to the full multiplier numbering.
struct GlobalSystem {
  Eigen::SparseMatrix<double> stiffness;            ///< n x n, symmetric
  Eigen::SparseMatrix<double> constraint_jacobian;  ///< m_active x n
  Eigen::VectorXd out_of_balance;                   ///< f_int - f_ext on free dofs
  Eigen::VectorXd gap;                              ///< active constraint values
  std::vector<int> active_rows;
  double external_force_norm = 0.0;
  double min_thickness = 0.0;
};

/// Assembles tangent, internal/external forces, constraint values and their
/// Jacobian at the given state, in the full numbering. Element loop order is
/// fixed, so reassembly is deterministic.
inline FullSystem assemble_full(const BeamModel& model, const SystemState& state) {
  const int nn = model.node_count();
  const int n_layers = model.layer_count();
  FullSystem full;
  full.dof_count = model.dof_count();
  full.constraint_count = model.constraint_count();
  full.min_thickness = model.min_thickness();
  full.internal_force = Eigen::VectorXd::Zero(full.dof_count);
  full.external_force = Eigen::VectorXd::Zero(full.dof_count);
  full.gap = Eigen::VectorXd::Zero(full.constraint_count);
  full.stiffness_triplets.reserve(static_cast<std::size_t>(model.n_el) * n_layers * 36 +
                                  static_cast<std::size_t>(full.constraint_count) * 2);
  full.jacobian_triplets.reserve(static_cast<std::size_t>(full.constraint_count) * 6);

  for (int layer = 0; layer < n_layers; ++layer) {
    const LayerSection& section = model.layers[layer].section;
    for (int e = 0; e < model.n_el; ++e) {
      const ElementDofs dofs = gather_element_dofs(model, state.displacement, layer, e);
      const Vector6 fe = internal_force(section, dofs);
      const Matrix6 ke = tangent_stiffness(section, dofs);
      int idx[6];
      for (int c = 0; c < 3; ++c) {
        idx[c] = global_dof(layer, e, static_cast<DofComponent>(c), nn);
        idx[3 + c] = global_dof(layer, e + 1, static_cast<DofComponent>(c), nn);
      }
      for (int a = 0; a < 6; ++a) {
        full.internal_force[idx[a]] += fe(a);
        for (int b = 0; b < 6; ++b) {
          if (ke(a, b) != 0.0) {
            full.stiffness_triplets.emplace_back(idx[a], idx[b], ke(a, b));
          }
        }
      }
    }
  }

  // External loads (dead, transverse only).
  if (!model.loads.distributed.empty()) {
    for (int layer = 0; layer < n_layers; ++layer) {
      const auto& per_element = model.loads.distributed[layer];
      for (int e = 0; e < static_cast<int>(per_element.size()); ++e) {
        const Vector6 fe = external_force(per_element[e], model.element_length());
        full.external_force[global_dof(layer, e, DofComponent::deflection, nn)] += fe(1);
        full.external_force[global_dof(layer, e + 1, DofComponent::deflection, nn)] += fe(4);
      }
    }
  }
  for (const auto& load : model.loads.point_loads) {
    const int node = model.node_at(load.position);
    full.external_force[global_dof(load.layer, node, DofComponent::deflection, nn)] += load.magnitude;
  }

  // Interface compatibility: values, Jacobian blocks and multiplier-weighted
  // curvature at every node of every interface.
  for (int interface = 0; interface < model.interface_count(); ++interface) {
    const double h_upper = model.layers[interface].section.thickness;
    const double h_lower = model.layers[interface + 1].section.thickness;
    for (int node = 0; node < nn; ++node) {
      int cols[6];
      for (int c = 0; c < 3; ++c) {
        cols[c] = global_dof(interface, node, static_cast<DofComponent>(c), nn);
        cols[3 + c] = global_dof(interface + 1, node, static_cast<DofComponent>(c), nn);
      }
      NodeState upper{state.displacement[cols[0]], state.displacement[cols[1]],
                      state.displacement[cols[2]]};
      NodeState lower{state.displacement[cols[3]], state.displacement[cols[4]],
                      state.displacement[cols[5]]};

      const ConstraintPair pair = constraint_values(upper, lower, h_upper, h_lower);
      const Matrix2x6 jac = constraint_jacobian_block(upper.phi, lower.phi, h_upper, h_lower);
      const int row_x = multiplier_row(interface, node, 0, nn);
      const int row_z = multiplier_row(interface, node, 1, nn);
      full.gap[row_x] = pair.c_x;
      full.gap[row_z] = pair.c_z;
      for (int b = 0; b < 6; ++b) {
        if (jac(0, b) != 0.0) full.jacobian_triplets.emplace_back(row_x, cols[b], jac(0, b));
        if (jac(1, b) != 0.0) full.jacobian_triplets.emplace_back(row_z, cols[b], jac(1, b));
      }

      const double lambda_x = state.multipliers[row_x];
      const double lambda_z = state.multipliers[row_z];
      if (lambda_x != 0.0 || lambda_z != 0.0) {
        const Matrix6 klam =
            constraint_hessian_contribution(lambda_x, lambda_z, upper.phi, lower.phi, h_upper, h_lower);
        if (klam(2, 2) != 0.0) full.stiffness_triplets.emplace_back(cols[2], cols[2], klam(2, 2));
        if (klam(5, 5) != 0.0) full.stiffness_triplets.emplace_back(cols[5], cols[5], klam(5, 5));
      }
    }
  }

  return full;
}

/// Deletes rows/columns of supported dofs (homogeneous values only) and drops
/// constraint rows left without any free column.
inline GlobalSystem apply_dirichlet(const FullSystem& full, const DofMap& map) {
  GlobalSystem sys;
  sys.min_thickness = full.min_thickness;
  const int n = map.free_count();

  std::vector<Eigen::Triplet<double>> k_reduced;
  k_reduced.reserve(full.stiffness_triplets.size());
  for (const auto& t : full.stiffness_triplets) {
    const int r = map.reduced_index(t.row());
    const int c = map.reduced_index(t.col());
    if (r >= 0 && c >= 0) k_reduced.emplace_back(r, c, t.value());
  }
  sys.stiffness.resize(n, n);
  sys.stiffness.setFromTriplets(k_reduced.begin(), k_reduced.end());

  std::vector<char> row_active(full.constraint_count, 0);
  for (const auto& t : full.jacobian_triplets) {
    if (!map.is_fixed(t.col())) row_active[t.row()] = 1;
  }
  std::vector<int> row_map(full.constraint_count, -1);
  for (int r = 0; r < full.constraint_count; ++r) {
    if (row_active[r]) {
      row_map[r] = static_cast<int>(sys.active_rows.size());
      sys.active_rows.push_back(r);
    }
  }
  std::vector<Eigen::Triplet<double>> c_reduced;
  c_reduced.reserve(full.jacobian_triplets.size());
  for (const auto& t : full.jacobian_triplets) {
    const int c = map.reduced_index(t.col());
    if (c >= 0 && row_map[t.row()] >= 0) c_reduced.emplace_back(row_map[t.row()], c, t.value());
  }
  sys.constraint_jacobian.resize(static_cast<int>(sys.active_rows.size()), n);
  sys.constraint_jacobian.setFromTriplets(c_reduced.begin(), c_reduced.end());

  sys.out_of_balance.resize(n);
  double f_ext_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const int g = map.free_indices()[k];
    sys.out_of_balance[k] = full.internal_force[g] - full.external_force[g];
    f_ext_sq += full.external_force[g] * full.external_force[g];
  }
  sys.external_force_norm = std::sqrt(f_ext_sq);

  sys.gap.resize(static_cast<int>(sys.active_rows.size()));
  for (std::size_t i = 0; i < sys.active_rows.size(); ++i) {
    sys.gap[static_cast<int>(i)] = full.gap[sys.active_rows[i]];
  }
  return sys;
}

inline GlobalSystem assemble(const BeamModel& model, const SystemState& state, const DofMap& map) {
  return apply_dirichlet(assemble_full(model, state), map);
}

inline GlobalSystem assemble(const BeamModel& model, const SystemState& state) {
  return assemble(model, state, DofMap(model));
}

}  // namespace lamglass
