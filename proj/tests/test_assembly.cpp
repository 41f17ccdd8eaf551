#include <gtest/gtest.h>

#include <random>

#include "lamglass/assembly.hpp"
#include "lamglass/presets.hpp"
#include "test_support.hpp"

using namespace lamglass;

namespace {

// Three-layer stack with no supports, small mesh; useful to inspect raw
// assembly output.
BeamModel unsupported_stack(int n_el) {
  BeamModel model = presets::simply_supported_model(50.0, 40);
  model.n_el = n_el;
  model.supports.clear();
  model.loads.point_loads.clear();
  return validate(std::move(model));
}

Eigen::VectorXd random_displacement(const BeamModel& model, std::mt19937& gen,
                                    double disp_scale, double rot_scale) {
  std::uniform_real_distribution<double> disp(-disp_scale, disp_scale);
  std::uniform_real_distribution<double> rot(-rot_scale, rot_scale);
  Eigen::VectorXd d(model.dof_count());
  for (int layer = 0; layer < model.layer_count(); ++layer) {
    for (int node = 0; node < model.node_count(); ++node) {
      d[global_dof(layer, node, DofComponent::axial, model.node_count())] = disp(gen);
      d[global_dof(layer, node, DofComponent::deflection, model.node_count())] = disp(gen);
      d[global_dof(layer, node, DofComponent::rotation, model.node_count())] = rot(gen);
    }
  }
  return d;
}

double total_internal_energy(const BeamModel& model, const Eigen::VectorXd& displacement) {
  double energy = 0.0;
  for (int layer = 0; layer < model.layer_count(); ++layer) {
    for (int e = 0; e < model.n_el; ++e) {
      energy += internal_energy(model.layers[layer].section,
                                gather_element_dofs(model, displacement, layer, e));
    }
  }
  return energy;
}

}  // namespace

TEST(DofMap, LayerMajorNumberingAndSupportElimination) {
  const BeamModel model = presets::fixed_end_model(15.0, 10);
  const DofMap map(model);
  EXPECT_EQ(map.full_count(), 9 * 11);
  EXPECT_EQ(map.free_count(), 9 * 11 - 18);
  EXPECT_EQ(static_cast<int>(map.fixed_indices().size()), 18);
  EXPECT_EQ(map.global_index(0, 0, DofComponent::axial), 0);
  EXPECT_EQ(map.global_index(1, 0, DofComponent::axial), 33);
  EXPECT_EQ(map.global_index(2, 10, DofComponent::rotation), 98);
  EXPECT_TRUE(map.is_fixed(map.global_index(0, 0, DofComponent::deflection)));
  EXPECT_TRUE(map.is_fixed(map.global_index(2, 10, DofComponent::rotation)));
  EXPECT_FALSE(map.is_fixed(map.global_index(1, 5, DofComponent::deflection)));
}

TEST(DofMap, FixingOneEndNodeOfEachLayerRemovesNineDofs) {
  BeamModel model = unsupported_stack(4);
  for (int layer = 0; layer < 3; ++layer) {
    model.supports.push_back({layer, 0, true, true, true});
  }
  model = validate(std::move(model));
  const DofMap map(model);
  EXPECT_EQ(map.free_count(), map.full_count() - 9);
}

TEST(AssembleFull, CountingRuleForOneElementPerLayer) {
  // Construct the n_el = 1 stack directly; it only exercises the counting
  // rule 9(n_el+1) x 9(n_el+1) and 4(n_el+1) rows.
  BeamModel model = presets::simply_supported_model(50.0, 40);
  model.n_el = 1;
  model.supports.clear();
  model.loads.point_loads.clear();
  const SystemState state = zero_state(model);
  const FullSystem full = assemble_full(model, state);
  EXPECT_EQ(full.dof_count, 18);
  EXPECT_EQ(full.constraint_count, 8);
  int max_row = 0, max_col = 0;
  for (const auto& t : full.stiffness_triplets) {
    max_row = std::max(max_row, t.row());
    max_col = std::max(max_col, t.col());
  }
  EXPECT_LT(max_row, 18);
  EXPECT_LT(max_col, 18);
}

TEST(Assemble, ZeroStateMatchesIndependentSmallStrainAssembly) {
  const BeamModel model = unsupported_stack(3);
  const DofMap map(model);
  const GlobalSystem sys = assemble(model, zero_state(model), map);

  // Independent global small-strain stiffness from strain-displacement rows.
  const double le = model.element_length();
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(model.dof_count(), model.dof_count());
  for (int layer = 0; layer < 3; ++layer) {
    const LayerSection& s = model.layers[layer].section;
    Vector6 axial, shear, bending;
    axial << -1.0 / le, 0, 0, 1.0 / le, 0, 0;
    shear << 0, -1.0 / le, 0.5, 0, 1.0 / le, 0.5;
    bending << 0, 0, -1.0 / le, 0, 0, 1.0 / le;
    const Matrix6 ke = le * (s.ea() * axial * axial.transpose() +
                             s.ga_s() * shear * shear.transpose() +
                             s.ei() * bending * bending.transpose());
    for (int e = 0; e < model.n_el; ++e) {
      int idx[6];
      for (int c = 0; c < 3; ++c) {
        idx[c] = global_dof(layer, e, static_cast<DofComponent>(c), model.node_count());
        idx[3 + c] = global_dof(layer, e + 1, static_cast<DofComponent>(c), model.node_count());
      }
      for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) oracle(idx[a], idx[b]) += ke(a, b);
      }
    }
  }
  const Eigen::MatrixXd assembled(sys.stiffness);
  EXPECT_LE((assembled - oracle).norm(), 1e-12 * oracle.norm());
}

TEST(Assemble, ZeroStateHasZeroGapAndMinusExternalForce) {
  BeamModel model = unsupported_stack(4);
  model.loads.point_loads.push_back({0, 0.5, 50.0});
  model = validate(std::move(model));
  const DofMap map(model);
  const GlobalSystem sys = assemble(model, zero_state(model), map);
  EXPECT_EQ(sys.gap.norm(), 0.0);

  Eigen::VectorXd expected = Eigen::VectorXd::Zero(map.free_count());
  const int loaded =
      map.reduced_index(global_dof(0, model.node_at(0.5), DofComponent::deflection, model.node_count()));
  expected[loaded] = -50.0;
  EXPECT_EQ((sys.out_of_balance - expected).norm(), 0.0);
  EXPECT_DOUBLE_EQ(sys.external_force_norm, 50.0);
}

TEST(Assemble, DistributedLoadUsesConsistentNodalValues) {
  BeamModel model = unsupported_stack(4);
  const double q = 80.0;
  model.loads.distributed = {std::vector<double>(4, q), {}, {}};
  model = validate(std::move(model));
  const GlobalSystem sys = assemble(model, zero_state(model), DofMap(model));
  const double le = model.element_length();
  const int nn = model.node_count();
  // End nodes carry q le / 2, interior nodes q le.
  EXPECT_NEAR(-sys.out_of_balance[global_dof(0, 0, DofComponent::deflection, nn)], 0.5 * q * le,
              1e-12);
  EXPECT_NEAR(-sys.out_of_balance[global_dof(0, 2, DofComponent::deflection, nn)], q * le, 1e-12);
  EXPECT_EQ(sys.out_of_balance[global_dof(1, 2, DofComponent::deflection, nn)], 0.0);
}

TEST(Assemble, StiffnessIsSymmetricAndLayerBlockDiagonal) {
  BeamModel model = unsupported_stack(4);
  std::mt19937 gen(9);
  SystemState state = zero_state(model);
  state.displacement = random_displacement(model, gen, 1e-3, 0.1);
  std::uniform_real_distribution<double> lambda(-3.0, 3.0);
  for (int i = 0; i < state.multipliers.size(); ++i) state.multipliers[i] = lambda(gen);

  const GlobalSystem sys = assemble(model, state, DofMap(model));
  const Eigen::MatrixXd k(sys.stiffness);
  EXPECT_EQ((k - k.transpose()).norm(), 0.0);

  const int per_layer = 3 * model.node_count();
  for (int layer_a = 0; layer_a < 3; ++layer_a) {
    for (int layer_b = 0; layer_b < 3; ++layer_b) {
      if (layer_a == layer_b) continue;
      EXPECT_EQ(k.block(layer_a * per_layer, layer_b * per_layer, per_layer, per_layer).norm(), 0.0)
          << "coupling between layers " << layer_a << " and " << layer_b;
    }
  }
}

TEST(Assemble, ConstraintRowsTouchAtMostSixColumns) {
  BeamModel model = unsupported_stack(5);
  std::mt19937 gen(10);
  SystemState state = zero_state(model);
  state.displacement = random_displacement(model, gen, 1e-3, 0.1);
  const GlobalSystem sys = assemble(model, state, DofMap(model));
  const Eigen::MatrixXd c(sys.constraint_jacobian);
  for (int row = 0; row < c.rows(); ++row) {
    int nonzero = 0;
    for (int col = 0; col < c.cols(); ++col) nonzero += c(row, col) != 0.0 ? 1 : 0;
    EXPECT_LE(nonzero, 6);
    EXPECT_GE(nonzero, 2);
  }
}

TEST(Assemble, InternalForceIsGradientOfTotalEnergy) {
  const BeamModel model = unsupported_stack(4);
  std::mt19937 gen(12);
  const Eigen::VectorXd d = random_displacement(model, gen, 5e-4, 0.05);
  SystemState state = zero_state(model);
  state.displacement = d;
  const FullSystem full = assemble_full(model, state);

  Eigen::VectorXd direction = random_displacement(model, gen, 1.0, 1.0);
  direction /= direction.norm();
  const double h = 1e-7;
  SystemState plus = state, minus = state;
  plus.displacement += h * direction;
  minus.displacement -= h * direction;
  const double fd = (total_internal_energy(model, plus.displacement) -
                     total_internal_energy(model, minus.displacement)) /
                    (2.0 * h);
  const double analytic = full.internal_force.dot(direction);
  EXPECT_NEAR(analytic, fd, 1e-6 * std::max(1.0, std::abs(analytic)));
}

TEST(Assemble, EnergyGatherMatchesDirectIndexing) {
  const BeamModel model = unsupported_stack(4);
  std::mt19937 gen(13);
  const Eigen::VectorXd d = random_displacement(model, gen, 5e-4, 0.05);
  const double via_gather = total_internal_energy(model, d);

  double direct = 0.0;
  const int nn = model.node_count();
  for (int layer = 0; layer < 3; ++layer) {
    for (int e = 0; e < model.n_el; ++e) {
      ElementDofs dofs;
      dofs.u1 = d[(layer * nn + e) * 3 + 0];
      dofs.w1 = d[(layer * nn + e) * 3 + 1];
      dofs.phi1 = d[(layer * nn + e) * 3 + 2];
      dofs.u2 = d[(layer * nn + e + 1) * 3 + 0];
      dofs.w2 = d[(layer * nn + e + 1) * 3 + 1];
      dofs.phi2 = d[(layer * nn + e + 1) * 3 + 2];
      dofs.length = model.element_length();
      direct += internal_energy(model.layers[layer].section, dofs);
    }
  }
  EXPECT_LE(std::abs(via_gather - direct), 1e-12 * std::max(1.0, std::abs(direct)));
}

TEST(ApplyDirichlet, DropsConstraintRowsWithoutFreeColumns) {
  const BeamModel model = presets::fixed_end_model(15.0, 10);
  const DofMap map(model);
  const GlobalSystem sys = assemble(model, zero_state(model), map);
  // All six columns of both interfaces vanish at the two clamped end nodes.
  EXPECT_EQ(static_cast<int>(sys.active_rows.size()), 4 * 11 - 8);
  const int nn = model.node_count();
  for (const int row : sys.active_rows) {
    EXPECT_NE(row, multiplier_row(0, 0, 0, nn));
    EXPECT_NE(row, multiplier_row(0, 0, 1, nn));
    EXPECT_NE(row, multiplier_row(1, 10, 0, nn));
    EXPECT_NE(row, multiplier_row(1, 10, 1, nn));
  }
}

TEST(ApplyDirichlet, SimplySupportedKeepsAllConstraintRows) {
  const BeamModel model = presets::simply_supported_model(50.0, 10);
  const GlobalSystem sys = assemble(model, zero_state(model), DofMap(model));
  EXPECT_EQ(static_cast<int>(sys.active_rows.size()), model.constraint_count());
  EXPECT_EQ(sys.constraint_jacobian.cols(), 9 * 11 - 3);
}
