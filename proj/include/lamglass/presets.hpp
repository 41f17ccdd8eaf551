#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lamglass/model.hpp"
#include "lamglass/state.hpp"

namespace lamglass::presets {

/// Reference values for one load level of a benchmark preset. Deflections in
/// mm, stresses (bottom fiber of the bottom layer at mid-span) in MPa; NaN
/// marks values the source does not report.
struct ReferenceRow {
  double load_n = 0.0;
  double w_linear_mm = 0.0;
  double w_nonlinear_mm = 0.0;
  double s_linear_mpa = 0.0;
  double s_nonlinear_mpa = 0.0;
  double w_ref_a_mm = 0.0;
  double w_ref_b_mm = 0.0;
  double s_ref_a_mpa = 0.0;
  double s_ref_b_mpa = 0.0;
};

struct PresetReference {
  std::string ref_a_label;  ///< first reference column (experiment or analytical)
  std::string ref_b_label;  ///< second reference column (analytical or 2D FE)
  std::vector<ReferenceRow> rows;
  double equivalent_load_n = 0.0;  ///< load at which the equivalent models are tabulated
  double w_monolithic_mm = 0.0;
  double w_two_layer_mm = 0.0;
  double convergence_load_n = 0.0;
  std::vector<ResidualRecord> convergence;  ///< reference residual history

  const ReferenceRow* row_for(double load_n) const {
    for (const auto& row : rows) {
      if (std::abs(row.load_n - load_n) <= 1e-9 * std::max(1.0, std::abs(load_n))) return &row;
    }
    return nullptr;
  }
};

inline constexpr double glass_young_modulus = 64.5e9;  // Pa
inline constexpr double glass_shear_modulus = 26.2e9;  // Pa

/// Simply supported three-layer beam: glass 5 mm / PVB 0.38 mm / glass 5 mm,
/// total length 1 m, span 0.8 m (supports at X = 0.1 and 0.9 m on the bottom
/// layer, axially held at the left support), mid-span point load on the top
/// layer. Width 0.1 m, back-calculated from the tabulated monolithic
/// deflection. Statically determinate, so the response stays essentially
/// linear.
inline BeamModel simply_supported_model(double load_n, int n_el = 40) {
  constexpr double width = 0.1;
  constexpr double length = 1.0;
  BeamModel model;
  model.n_el = n_el;
  const auto add_layer = [&](double e, double g, double h) {
    Layer layer;
    layer.section = build_section(e, g, width, h);
    layer.geometry.length = length;
    model.layers.push_back(layer);
  };
  add_layer(glass_young_modulus, glass_shear_modulus, 5.0e-3);
  add_layer(3.61e6, 1.28e6, 0.38e-3);
  add_layer(glass_young_modulus, glass_shear_modulus, 5.0e-3);

  const auto left = try_node_at(0.1, length, n_el);
  const auto right = try_node_at(0.9, length, n_el);
  const auto mid = try_node_at(0.5, length, n_el);
  if (!left || !right || !mid) {
    throw ValidationError("simply-supported preset needs the support (0.1 m, 0.9 m) and mid-span "
                          "positions on the mesh; use an n_el divisible by 10");
  }
  model.supports.push_back({2, *left, true, true, false});
  model.supports.push_back({2, *right, false, true, false});
  model.loads.point_loads.push_back({0, 0.5, load_n});
  return validate(std::move(model));
}

/// Fixed-end three-layer beam: glass 2.12 mm / PVB 0.76 mm / glass 2.12 mm,
/// length 1.5 m, all dofs of all layers clamped at both ends, mid-span point
/// load on the top layer. Width 0.05 m, back-calculated from the tabulated
/// monolithic deflection. The full horizontal restraint develops membrane
/// forces, so the response is strongly nonlinear.
inline BeamModel fixed_end_model(double load_n, int n_el = 150) {
  constexpr double width = 0.05;
  constexpr double length = 1.5;
  BeamModel model;
  model.n_el = n_el;
  const auto add_layer = [&](double e, double g, double h) {
    Layer layer;
    layer.section = build_section(e, g, width, h);
    layer.geometry.length = length;
    model.layers.push_back(layer);
  };
  add_layer(glass_young_modulus, glass_shear_modulus, 2.12e-3);
  add_layer(2.8e6, 1.0e6, 0.76e-3);
  add_layer(glass_young_modulus, glass_shear_modulus, 2.12e-3);

  const auto mid = try_node_at(0.75, length, n_el);
  if (!mid) {
    throw ValidationError("fixed-end preset needs the mid-span position on the mesh; "
                          "use an even n_el");
  }
  for (int layer = 0; layer < 3; ++layer) {
    model.supports.push_back({layer, 0, true, true, true});
    model.supports.push_back({layer, n_el, true, true, true});
  }
  model.loads.point_loads.push_back({0, 0.75, load_n});
  return validate(std::move(model));
}

inline const PresetReference& simply_supported_reference() {
  static const PresetReference ref = [] {
    PresetReference r;
    r.ref_a_label = "experiment";
    r.ref_b_label = "analytical";
    //              F      w_lin  w_nl   S_lin  S_nl   w_exp w_an  S_exp  S_an
    r.rows = {{50.0, 1.34, 1.34, 7.14, 7.14, 1.27, 1.34, 9.55, 7.23},
              {100.0, 2.68, 2.68, 14.27, 14.28, 2.55, 2.69, 12.34, 14.45},
              {150.0, 4.02, 4.02, 21.41, 21.42, 4.12, 4.03, 21.89, 21.68},
              {200.0, 5.37, 5.35, 28.55, 28.55, 5.57, 5.38, 26.27, 28.90}};
    r.equivalent_load_n = 50.0;
    r.w_monolithic_mm = 0.89;
    r.w_two_layer_mm = 3.97;
    r.convergence_load_n = std::numeric_limits<double>::quiet_NaN();
    return r;
  }();
  return ref;
}

inline const PresetReference& fixed_end_reference() {
  static const PresetReference ref = [] {
    PresetReference r;
    r.ref_a_label = "analytical";
    r.ref_b_label = "fe2d";
    //              F       w_lin    w_nl   S_lin    S_nl   w_an   w_num  S_an   S_num
    r.rows = {{15.0, 14.44, 6.00, 19.51, 12.60, 5.92, 5.92, 12.87, 12.46},
              {30.0, 28.88, 8.17, 39.02, 20.12, 8.10, 8.10, 20.69, 19.89},
              {45.0, 43.32, 9.66, 58.53, 26.28, 9.60, 9.60, 27.13, 25.94},
              {60.0, 57.76, 10.83, 78.03, 31.69, 10.78, 10.78, 32.82, 31.25},
              {90.0, 86.65, 12.68, 117.05, 41.18, 12.64, 12.63, 42.82, 40.51},
              {120.0, 115.53, 14.14, 156.07, 49.53, 14.10, 14.09, 51.68, 48.64},
              {150.0, 144.41, 15.36, 195.09, 57.13, 15.34, 15.32, 59.76, 56.00}};
    r.equivalent_load_n = 15.0;
    r.w_monolithic_mm = 7.85;
    r.w_two_layer_mm = 51.48;
    r.convergence_load_n = 150.0;
    r.convergence = {{1, 8.49e2, 7.94e-1},  {2, 1.50e3, 4.65e-1},  {3, 1.02e2, 6.12e-2},
                     {4, 2.07e2, 5.61e-2},  {5, 2.31e1, 1.11e-2},  {6, 2.43e1, 7.53e-3},
                     {7, 4.93e0, 2.58e-3},  {8, 1.41e0, 8.17e-4},  {9, 1.38e-1, 8.23e-5},
                     {10, 1.58e-3, 8.33e-7}, {11, 2.53e-7, 1.18e-10}};
    return r;
  }();
  return ref;
}

inline std::vector<std::string> preset_names() { return {"simply-supported", "fixed-end"}; }

inline BeamModel preset_model(const std::string& name, double load_n,
                              std::optional<int> n_el = std::nullopt) {
  if (name == "simply-supported") return simply_supported_model(load_n, n_el.value_or(40));
  if (name == "fixed-end") return fixed_end_model(load_n, n_el.value_or(150));
  throw ValidationError("unknown preset '" + name + "' (available: simply-supported, fixed-end)");
}

inline const PresetReference* find_reference(const std::string& name) {
  if (name == "simply-supported") return &simply_supported_reference();
  if (name == "fixed-end") return &fixed_end_reference();
  return nullptr;
}

}  // namespace lamglass::presets
