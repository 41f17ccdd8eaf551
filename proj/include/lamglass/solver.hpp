#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <string>
#include <utility>
#include <vector>

#include "lamglass/assembly.hpp"

namespace lamglass {

/// Raised when the Newton loop exhausts max_iterations; carries the residual
/// history and the last iterate for diagnostics.
class DivergenceError : public SolveError {
 public:
  DivergenceError(const std::string& what, ConvergenceLog log, SystemState state)
      : SolveError(what), log_(std::move(log)), state_(std::move(state)) {}
  const ConvergenceLog& log() const noexcept { return log_; }
  const SystemState& state() const noexcept { return state_; }

 private:
  ConvergenceLog log_;
  SystemState state_;
};

/// Residuals of the first-order optimality conditions at the given state.
/// eta1 is normalized by ||f_ext||_2 (left unnormalized when no load is
/// applied), eta2 by the smallest layer thickness.
inline ResidualPair residuals(const GlobalSystem& system, const SystemState& state) {
  Eigen::VectorXd lambda_active(static_cast<Eigen::Index>(system.active_rows.size()));
  for (std::size_t i = 0; i < system.active_rows.size(); ++i) {
    lambda_active[static_cast<Eigen::Index>(i)] = state.multipliers[system.active_rows[i]];
  }
  const Eigen::VectorXd gradient =
      system.out_of_balance + system.constraint_jacobian.transpose() * lambda_active;
  ResidualPair r;
  r.eta1 = system.external_force_norm > 0.0 ? gradient.norm() / system.external_force_norm
                                            : gradient.norm();
  r.eta2 = system.gap.norm() / system.min_thickness;
  return r;
}

enum class KktBackend { sparse, dense };

struct KktSolution {
  Eigen::VectorXd displacement_increment;  ///< delta d on the free dofs
  Eigen::VectorXd multipliers;             ///< full new multipliers (active rows)
};

namespace detail {

/// Solves the scaled bordered system with one step of iterative refinement.
/// A refinement correction comparable to the solution itself marks a
/// (numerically) singular factorization: backward-stable LU can return
/// arbitrarily large vectors for singular systems without failing, but the
/// correction then fails to shrink.
template <typename Factorization>
inline Eigen::VectorXd solve_refined(const Factorization& factorization,
                                     const Eigen::SparseMatrix<double>& matrix,
                                     const Eigen::VectorXd& rhs) {
  Eigen::VectorXd x = factorization.solve(rhs);
  if (!x.allFinite()) {
    throw SingularSystemError(
        "KKT solve produced non-finite values; the model likely lacks supports that "
        "remove all rigid-body modes");
  }
  const Eigen::VectorXd correction = factorization.solve(rhs - matrix * x);
  if (!correction.allFinite() || correction.norm() > 1e-3 * x.norm()) {
    throw SingularSystemError(
        "KKT system is singular or severely ill-conditioned; check that the supports "
        "remove all rigid-body modes");
  }
  x += correction;
  return x;
}

}  // namespace detail

/// Direct solve of the bordered saddle-point system
///   [K, C^T; C, 0] [delta d; lambda] = -[f_int - f_ext; c].
/// The matrix is symmetrically equilibrated before factorization; the
/// multipliers are obtained in full (the update replaces), while the
/// displacement increment adds to the iterate. The dense backend factors the
/// same matrix with an independent dense LU and serves as a cross-check of
/// the sparse path.
inline KktSolution solve_kkt(const GlobalSystem& system, KktBackend backend = KktBackend::sparse) {
  const Eigen::Index n = system.out_of_balance.size();
  const Eigen::Index m = system.gap.size();
  const Eigen::Index total = n + m;
  if (n == 0) throw SingularSystemError("all displacement dofs are fixed");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(system.stiffness.nonZeros()) +
                   2 * static_cast<std::size_t>(system.constraint_jacobian.nonZeros()));
  for (int k = 0; k < system.stiffness.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.stiffness, k); it; ++it) {
      triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  for (int k = 0; k < system.constraint_jacobian.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.constraint_jacobian, k); it; ++it) {
      const int r = static_cast<int>(n + it.row());
      const int c = static_cast<int>(it.col());
      triplets.emplace_back(r, c, it.value());
      triplets.emplace_back(c, r, it.value());
    }
  }

  // Symmetric equilibration by row infinity norms; a structurally empty row
  // means a dof without stiffness or an empty constraint.
  Eigen::VectorXd row_max = Eigen::VectorXd::Zero(total);
  for (const auto& t : triplets) {
    row_max[t.row()] = std::max(row_max[t.row()], std::abs(t.value()));
  }
  Eigen::VectorXd scale(total);
  for (Eigen::Index i = 0; i < total; ++i) {
    if (row_max[i] <= 0.0) {
      throw SingularSystemError(
          "singular KKT system: row " + std::to_string(i) +
          " is empty; check that supports and constraints reach every dof");
    }
    scale[i] = 1.0 / std::sqrt(row_max[i]);
  }
  for (auto& t : triplets) {
    t = Eigen::Triplet<double>(t.row(), t.col(), t.value() * scale[t.row()] * scale[t.col()]);
  }

  Eigen::SparseMatrix<double> bordered(total, total);
  bordered.setFromTriplets(triplets.begin(), triplets.end());
  bordered.makeCompressed();

  Eigen::VectorXd rhs(total);
  rhs.head(n) = -system.out_of_balance;
  rhs.tail(m) = -system.gap;
  rhs.array() *= scale.array();

  Eigen::VectorXd solution;
  if (backend == KktBackend::sparse) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(bordered);
    lu.factorize(bordered);
    if (lu.info() != Eigen::Success) {
      throw SingularSystemError(
          "sparse KKT factorization failed; the model likely lacks supports that "
          "remove all rigid-body modes");
    }
    solution = detail::solve_refined(lu, bordered, rhs);
  } else {
    const Eigen::MatrixXd dense(bordered);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    solution = detail::solve_refined(lu, bordered, rhs);
  }

  // Backward-error check catches quietly singular factorizations.
  const double residual_norm = (bordered * solution - rhs).norm();
  const double denom = bordered.norm() * solution.norm() + rhs.norm();
  if (!(residual_norm <= 1e-8 * denom)) {
    throw SingularSystemError(
        "KKT solve failed the backward-error check; the model likely lacks supports "
        "that remove all rigid-body modes");
  }

  solution.array() *= scale.array();
  KktSolution out;
  out.displacement_increment = solution.head(n);
  out.multipliers = solution.tail(m);
  return out;
}

struct SolveReport {
  SystemState state;
  ConvergenceLog log;
};

namespace detail {

inline void apply_step(const DofMap& map, const std::vector<int>& active_rows,
                       const KktSolution& step, SystemState& state) {
  for (int k = 0; k < map.free_count(); ++k) {
    state.displacement[map.free_indices()[k]] += step.displacement_increment[k];
  }
  state.multipliers.setZero();
  for (std::size_t i = 0; i < active_rows.size(); ++i) {
    state.multipliers[active_rows[i]] = step.multipliers[static_cast<Eigen::Index>(i)];
  }
}

}  // namespace detail

/// Newton iteration on the KKT optimality system with consistent
/// linearization. The full load is applied in one step from the zero state;
/// iteration stops once eta1 <= eps_1 and eta2 <= eps_2. A zero load vector
/// returns the zero state immediately (eta1 is undefined then).
inline SolveReport newton_solve(const BeamModel& model) {
  if (model.analysis.kind != AnalysisKind::nonlinear) {
    throw ValidationError("newton_solve requires analysis kind 'nonlinear'");
  }
  const DofMap map(model);
  SolveReport report;
  report.state = zero_state(model);
  GlobalSystem system = assemble(model, report.state, map);
  if (system.external_force_norm == 0.0) return report;

  ResidualPair res = residuals(system, report.state);
  while (res.eta1 > model.analysis.tol_equilibrium ||
         res.eta2 > model.analysis.tol_compatibility) {
    if (report.state.iterations >= model.analysis.max_iterations) {
      throw DivergenceError(
          "Newton solve did not converge within " + std::to_string(model.analysis.max_iterations) +
              " iterations (eta1 = " + std::to_string(res.eta1) +
              ", eta2 = " + std::to_string(res.eta2) + ")",
          report.log, report.state);
    }
    const KktSolution step = solve_kkt(system);
    detail::apply_step(map, system.active_rows, step, report.state);
    ++report.state.iterations;
    system = assemble(model, report.state, map);
    res = residuals(system, report.state);
    report.log.push_back({report.state.iterations, res.eta1, res.eta2});
  }
  return report;
}

/// Geometrically linear model: a single KKT solve at the reference state
/// (identical to the first Newton iterate, same assembly and factorization
/// path). Stresses of linear results are evaluated with the linearized
/// strain measures downstream.
inline SolveReport linear_solve(const BeamModel& model) {
  if (model.analysis.kind != AnalysisKind::linear) {
    throw ValidationError("linear_solve requires analysis kind 'linear'");
  }
  const DofMap map(model);
  SolveReport report;
  report.state = zero_state(model);
  GlobalSystem system = assemble(model, report.state, map);
  if (system.external_force_norm == 0.0) return report;

  const KktSolution step = solve_kkt(system);
  detail::apply_step(map, system.active_rows, step, report.state);
  report.state.iterations = 1;
  system = assemble(model, report.state, map);
  const ResidualPair res = residuals(system, report.state);
  report.log.push_back({1, res.eta1, res.eta2});
  return report;
}

}  // namespace lamglass
