#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "lamglass/errors.hpp"

namespace lamglass {

/// Elastic constants and cross-section of one layer, together with the
/// derived section properties entering the beam element.
///
/// Invariants (established by build_section / validate):
///   area       A   = b * h
///   shear_area A_s = (5/6) * A
///   inertia    I   = b * h^3 / 12
struct LayerSection {
  double young_modulus = 0.0;  ///< E [Pa]
  double shear_modulus = 0.0;  ///< G [Pa]
  double width = 0.0;          ///< b [m]
  double thickness = 0.0;      ///< h [m]
  double area = 0.0;           ///< A [m^2]
  double shear_area = 0.0;     ///< A_s [m^2]
  double inertia = 0.0;        ///< I [m^4]

  double ea() const { return young_modulus * area; }
  double ga_s() const { return shear_modulus * shear_area; }
  double ei() const { return young_modulus * inertia; }
};

/// Builds a LayerSection and derives A, A_s, I. Throws ValidationError
/// naming the offending field for non-positive inputs.
inline LayerSection build_section(double young_modulus, double shear_modulus,
                                  double width, double thickness) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be a positive finite number");
    }
  };
  positive(young_modulus, "young_modulus");
  positive(shear_modulus, "shear_modulus");
  positive(width, "width");
  positive(thickness, "thickness");
  LayerSection s;
  s.young_modulus = young_modulus;
  s.shear_modulus = shear_modulus;
  s.width = width;
  s.thickness = thickness;
  s.area = width * thickness;
  s.shear_area = (5.0 / 6.0) * s.area;
  s.inertia = width * thickness * thickness * thickness / 12.0;
  return s;
}

/// Placement of one layer in the global frame. Z points downward; origins of
/// a contiguous stack satisfy O_Z(i+1) - O_Z(i) = (h(i) + h(i+1)) / 2.
struct LayerGeometry {
  double origin_x = 0.0;           ///< O_X [m]
  std::optional<double> origin_z;  ///< O_Z [m]; filled by validate() when absent
  double length = 0.0;             ///< L [m]
};

struct Layer {
  LayerSection section;
  LayerGeometry geometry;
};

enum class DofComponent { axial = 0, deflection = 1, rotation = 2 };  // u, w, phi

/// Homogeneous support at one (layer, node) pair; at least one component
/// must be fixed.
struct SupportSpec {
  int layer = 0;  ///< 0-based layer index; 0 = top
  int node = 0;   ///< 0-based mesh node index
  bool fix_u = false;
  bool fix_w = false;
  bool fix_phi = false;
};

/// Concentrated transverse force; positive acts downward (+Z).
struct PointLoad {
  int layer = 0;
  double position = 0.0;   ///< X_p [m]; must coincide with a mesh node
  double magnitude = 0.0;  ///< F_Z [N]
};

/// Transverse loading. Distributed intensities are piecewise constant per
/// element: either empty, or one vector per layer (possibly empty) holding
/// one intensity [N/m] per element.
struct LoadCase {
  std::vector<PointLoad> point_loads;
  std::vector<std::vector<double>> distributed;
};

enum class AnalysisKind { nonlinear, linear, monolithic, two_layer };

inline const char* to_string(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::nonlinear: return "nonlinear";
    case AnalysisKind::linear: return "linear";
    case AnalysisKind::monolithic: return "monolithic";
    case AnalysisKind::two_layer: return "two_layer";
  }
  return "?";
}

inline AnalysisKind kind_from_string(const std::string& name) {
  if (name == "nonlinear") return AnalysisKind::nonlinear;
  if (name == "linear") return AnalysisKind::linear;
  if (name == "monolithic") return AnalysisKind::monolithic;
  if (name == "two_layer" || name == "two-layer") return AnalysisKind::two_layer;
  throw ValidationError("unknown analysis kind '" + name +
                        "' (use nonlinear, linear, monolithic or two_layer)");
}

struct AnalysisConfig {
  AnalysisKind kind = AnalysisKind::nonlinear;
  double tol_equilibrium = 1e-6;    ///< eps_1
  double tol_compatibility = 1e-6;  ///< eps_2
  int max_iterations = 50;
};

/// Snaps a position to the uniform mesh, or nullopt when it misses a node
/// by more than 1e-9 * length.
inline std::optional<int> try_node_at(double position, double length, int n_el) {
  const double le = length / n_el;
  const long long j = std::llround(position / le);
  if (j < 0 || j > n_el) return std::nullopt;
  if (std::abs(position - static_cast<double>(j) * le) > 1e-9 * length) return std::nullopt;
  return static_cast<int>(j);
}

/// Immutable problem definition: layer stack (index 0 = top), uniform mesh,
/// supports, loads and analysis options. Validated instances come from
/// validate(); they are safe to share read-only across threads.
struct BeamModel {
  std::vector<Layer> layers;
  int n_el = 0;  ///< elements per layer (identical across layers)
  std::vector<SupportSpec> supports;
  LoadCase loads;
  AnalysisConfig analysis;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int interface_count() const { return layer_count() - 1; }
  int node_count() const { return n_el + 1; }
  double length() const { return layers.front().geometry.length; }
  double element_length() const { return length() / n_el; }
  double node_x(int node) const { return element_length() * node; }
  int dof_count() const { return 3 * layer_count() * node_count(); }
  int constraint_count() const { return 2 * interface_count() * node_count(); }

  double min_thickness() const {
    double h = layers.front().section.thickness;
    for (const auto& layer : layers) h = std::min(h, layer.section.thickness);
    return h;
  }

  /// Mesh node under `position`, or ValidationError when it is off-node.
  int node_at(double position) const {
    const auto node = try_node_at(position, length(), n_el);
    if (!node) {
      throw ValidationError("position " + std::to_string(position) +
                            " m is not on a mesh node (n_el = " + std::to_string(n_el) + ")");
    }
    return *node;
  }
};

/// Verifies all model invariants, re-derives section properties, and fills
/// layer origins from thicknesses when absent. Returns the validated model.
inline BeamModel validate(BeamModel model) {
  if (model.layers.size() != 3) {
    throw ValidationError("model must have exactly three layers (got " +
                          std::to_string(model.layers.size()) + ")");
  }
  if (model.n_el < 2) {
    throw ValidationError("n_el must be at least 2 (got " + std::to_string(model.n_el) + ")");
  }

  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    auto& layer = model.layers[i];
    try {
      layer.section = build_section(layer.section.young_modulus, layer.section.shear_modulus,
                                    layer.section.width, layer.section.thickness);
    } catch (const ValidationError& e) {
      throw ValidationError("layer " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!(layer.geometry.length > 0.0)) {
      throw ValidationError("layer " + std::to_string(i + 1) + ": length must be positive");
    }
  }

  const double length = model.layers.front().geometry.length;
  for (std::size_t i = 1; i < model.layers.size(); ++i) {
    if (std::abs(model.layers[i].geometry.length - length) > 1e-12 * length) {
      throw ValidationError("all layers must share the same length");
    }
    if (std::abs(model.layers[i].geometry.origin_x - model.layers.front().geometry.origin_x) >
        1e-12 * std::max(1.0, std::abs(length))) {
      throw ValidationError("all layers must share the same origin_x");
    }
  }

  // Vertical origins: all given (checked contiguous) or none (auto-filled).
  std::size_t given = 0;
  for (const auto& layer : model.layers) given += layer.geometry.origin_z.has_value() ? 1 : 0;
  if (given == 0) {
    model.layers[0].geometry.origin_z = 0.0;
    for (std::size_t i = 1; i < model.layers.size(); ++i) {
      model.layers[i].geometry.origin_z =
          *model.layers[i - 1].geometry.origin_z +
          0.5 * (model.layers[i - 1].section.thickness + model.layers[i].section.thickness);
    }
  } else if (given == model.layers.size()) {
    for (std::size_t i = 1; i < model.layers.size(); ++i) {
      const double gap = *model.layers[i].geometry.origin_z - *model.layers[i - 1].geometry.origin_z;
      const double expected =
          0.5 * (model.layers[i - 1].section.thickness + model.layers[i].section.thickness);
      if (std::abs(gap - expected) > 1e-9 * std::max(expected, 1e-12)) {
        throw ValidationError("layer origins are not contiguous between layers " +
                              std::to_string(i) + " and " + std::to_string(i + 1));
      }
    }
  } else {
    throw ValidationError("layer origin_z must be given for all layers or for none");
  }

  for (std::size_t s = 0; s < model.supports.size(); ++s) {
    const auto& sup = model.supports[s];
    const std::string ctx = "supports[" + std::to_string(s) + "]";
    if (sup.layer < 0 || sup.layer >= model.layer_count()) {
      throw ValidationError(ctx + ": layer index out of range");
    }
    if (sup.node < 0 || sup.node > model.n_el) {
      throw ValidationError(ctx + ": node index out of range");
    }
    if (!sup.fix_u && !sup.fix_w && !sup.fix_phi) {
      throw ValidationError(ctx + ": at least one of u, w, phi must be fixed");
    }
  }

  for (std::size_t p = 0; p < model.loads.point_loads.size(); ++p) {
    const auto& load = model.loads.point_loads[p];
    const std::string ctx = "loads.point[" + std::to_string(p) + "]";
    if (load.layer < 0 || load.layer >= model.layer_count()) {
      throw ValidationError(ctx + ": layer index out of range");
    }
    if (!try_node_at(load.position, length, model.n_el)) {
      throw ValidationError(ctx + ": load at X = " + std::to_string(load.position) +
                            " m is not on a mesh node (n_el = " + std::to_string(model.n_el) + ")");
    }
    if (!std::isfinite(load.magnitude)) {
      throw ValidationError(ctx + ": magnitude must be finite");
    }
  }
  if (!model.loads.distributed.empty()) {
    if (model.loads.distributed.size() != model.layers.size()) {
      throw ValidationError("loads.distributed must hold one entry per layer");
    }
    for (std::size_t i = 0; i < model.loads.distributed.size(); ++i) {
      const auto& per_element = model.loads.distributed[i];
      if (!per_element.empty() && static_cast<int>(per_element.size()) != model.n_el) {
        throw ValidationError("loads.distributed[" + std::to_string(i) +
                              "] must hold one intensity per element");
      }
    }
  }

  if (!(model.analysis.tol_equilibrium > 0.0)) {
    throw ValidationError("analysis.tol_equilibrium must be positive");
  }
  if (!(model.analysis.tol_compatibility > 0.0)) {
    throw ValidationError("analysis.tol_compatibility must be positive");
  }
  if (model.analysis.max_iterations < 1) {
    throw ValidationError("analysis.max_iterations must be at least 1");
  }

  return model;
}

}  // namespace lamglass
