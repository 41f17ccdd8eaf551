#pragma once

#include <cmath>

#include "lamglass/linalg.hpp"
#include "lamglass/model.hpp"

namespace lamglass {

/// Interface gap values (c_X, c_Z) for one node of one interface; both are
/// zero whenever the deformed interface points of the adjacent layers
/// coincide, in particular in the undeformed stack.
struct ConstraintPair {
  double c_x = 0.0;  ///< [m]
  double c_z = 0.0;  ///< [m]
};

/// Nodal kinematic state (u, w, phi) of one layer at one node.
struct NodeState {
  double u = 0.0;
  double w = 0.0;
  double phi = 0.0;
};

/// Compatibility gaps between layer i (upper) and layer i+1 (lower) at one
/// node:
///   c_X = u_i - u_i1 + (h_i sin(phi_i) + h_i1 sin(phi_i1)) / 2
///   c_Z = -(h_i + h_i1)/2 + w_i - w_i1 + (h_i cos(phi_i) + h_i1 cos(phi_i1)) / 2
inline ConstraintPair constraint_values(const NodeState& upper, const NodeState& lower,
                                        double h_upper, double h_lower) {
  ConstraintPair c;
  c.c_x = upper.u - lower.u + 0.5 * (h_upper * std::sin(upper.phi) + h_lower * std::sin(lower.phi));
  c.c_z = -0.5 * (h_upper + h_lower) + upper.w - lower.w +
          0.5 * (h_upper * std::cos(upper.phi) + h_lower * std::cos(lower.phi));
  return c;
}

/// Jacobian of the gap pair with respect to the six participating dofs,
/// columns ordered (u_i, w_i, phi_i, u_i1, w_i1, phi_i1).
inline Matrix2x6 constraint_jacobian_block(double phi_upper, double phi_lower, double h_upper,
                                           double h_lower) {
  Matrix2x6 c;
  c << 1.0, 0.0, 0.5 * h_upper * std::cos(phi_upper), -1.0, 0.0, 0.5 * h_lower * std::cos(phi_lower),
       0.0, 1.0, -0.5 * h_upper * std::sin(phi_upper), 0.0, -1.0, -0.5 * h_lower * std::sin(phi_lower);
  return c;
}

/// Multiplier-weighted constraint curvature, lambda_X d2c_X + lambda_Z d2c_Z.
/// Nonzero only on the two rotation diagonals:
///   K(phi_i)  = -h_i  (sin(phi_i)  lambda_X + cos(phi_i)  lambda_Z) / 2
///   K(phi_i1) = -h_i1 (sin(phi_i1) lambda_X + cos(phi_i1) lambda_Z) / 2
inline Matrix6 constraint_hessian_contribution(double lambda_x, double lambda_z, double phi_upper,
                                               double phi_lower, double h_upper, double h_lower) {
  Matrix6 k = Matrix6::Zero();
  k(2, 2) = -0.5 * h_upper * (std::sin(phi_upper) * lambda_x + std::cos(phi_upper) * lambda_z);
  k(5, 5) = -0.5 * h_lower * (std::sin(phi_lower) * lambda_x + std::cos(phi_lower) * lambda_z);
  return k;
}

}  // namespace lamglass
