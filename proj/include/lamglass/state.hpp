#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lamglass/model.hpp"

namespace lamglass {

/// Global unknowns at one Newton iterate: the full nodal displacement vector
/// (fixed entries stay zero, supports are homogeneous) and the full Lagrange
/// multiplier vector, ordered interface-major, then node, then (X, Z).
/// Multipliers of constraint rows eliminated together with their supports
/// are kept at zero.
struct SystemState {
  Eigen::VectorXd displacement;  ///< size 3 * layers * nodes [m, m, rad]
  Eigen::VectorXd multipliers;   ///< size 2 * interfaces * nodes [N]
  int iterations = 0;
};

inline SystemState zero_state(const BeamModel& model) {
  SystemState s;
  s.displacement = Eigen::VectorXd::Zero(model.dof_count());
  s.multipliers = Eigen::VectorXd::Zero(model.constraint_count());
  s.iterations = 0;
  return s;
}

/// Normalized residuals driving the Newton loop:
///   eta1 = ||f_int - f_ext + C^T lambda||_2 / ||f_ext||_2
///   eta2 = ||c||_2 / min_i h_i
struct ResidualPair {
  double eta1 = 0.0;
  double eta2 = 0.0;
};

struct ResidualRecord {
  int iteration = 0;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

using ConvergenceLog = std::vector<ResidualRecord>;

}  // namespace lamglass
