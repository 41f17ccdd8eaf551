#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "lamglass/model.hpp"

namespace lamglass {

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + "." + key + ": missing");
  return *it;
}

inline double require_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path + ": expected a number");
  return j.get<double>();
}

inline int require_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return j.get<int>();
}

inline std::string require_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path + ": expected a string");
  return j.get<std::string>();
}

/// Reads a modulus given as <name>_GPa or <name>_MPa (exactly one of the two)
/// and converts to Pa.
inline double read_modulus(const nlohmann::json& layer, const std::string& name,
                           const std::string& path) {
  const bool has_gpa = layer.contains(name + "_GPa");
  const bool has_mpa = layer.contains(name + "_MPa");
  if (has_gpa == has_mpa) {
    throw ValidationError(path + ": give exactly one of " + name + "_GPa or " + name + "_MPa");
  }
  if (has_gpa) return require_number(layer[name + "_GPa"], path + "." + name + "_GPa") * 1e9;
  return require_number(layer[name + "_MPa"], path + "." + name + "_MPa") * 1e6;
}

}  // namespace detail

/// Parses the declarative JSON model document (engineering units: GPa/MPa,
/// mm for thicknesses, m for positions; layers listed top to bottom and
/// referenced 1-based in supports/loads). Returns the validated model.
inline BeamModel parse_model_json(const nlohmann::json& doc,
                                  std::optional<int> n_el_override = std::nullopt) {
  using detail::require_int;
  using detail::require_key;
  using detail::require_number;
  using detail::require_string;

  BeamModel model;
  const double width = require_number(require_key(doc, "width_m", "model"), "model.width_m");
  const double length = require_number(require_key(doc, "length_m", "model"), "model.length_m");
  model.n_el = n_el_override.value_or(require_int(require_key(doc, "n_el", "model"), "model.n_el"));

  const auto& layers = require_key(doc, "layers", "model");
  if (!layers.is_array()) throw ValidationError("model.layers: expected an array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string path = "layers[" + std::to_string(i) + "]";
    const auto& entry = layers[i];
    Layer layer;
    const double e = detail::read_modulus(entry, "E", path);
    const double g = detail::read_modulus(entry, "G", path);
    // Divide by the exactly representable 1e3 so that serialize/parse stays
    // value-preserving.
    const double h = require_number(require_key(entry, "h_mm", path), path + ".h_mm") / 1e3;
    try {
      layer.section = build_section(e, g, width, h);
    } catch (const ValidationError& err) {
      throw ValidationError(path + ": " + err.what());
    }
    layer.geometry.length = length;
    model.layers.push_back(layer);
  }

  if (doc.contains("supports")) {
    const auto& supports = doc["supports"];
    if (!supports.is_array()) throw ValidationError("model.supports: expected an array");
    for (std::size_t i = 0; i < supports.size(); ++i) {
      const std::string path = "supports[" + std::to_string(i) + "]";
      const auto& entry = supports[i];
      SupportSpec support;
      support.layer = require_int(require_key(entry, "layer", path), path + ".layer") - 1;
      const double x = require_number(require_key(entry, "x_m", path), path + ".x_m");
      const auto node = try_node_at(x, length, model.n_el);
      if (!node) {
        throw ValidationError(path + ".x_m: " + std::to_string(x) +
                              " is not on a mesh node (n_el = " + std::to_string(model.n_el) + ")");
      }
      support.node = *node;
      const std::string fix = require_string(require_key(entry, "fix", path), path + ".fix");
      for (const char c : fix) {
        if (c == 'u') support.fix_u = true;
        else if (c == 'w') support.fix_w = true;
        else if (c == 'p') support.fix_phi = true;
        else throw ValidationError(path + ".fix: unknown component '" + std::string(1, c) +
                                   "' (use u, w, p)");
      }
      model.supports.push_back(support);
    }
  }

  if (doc.contains("loads")) {
    const auto& loads = doc["loads"];
    if (loads.contains("point")) {
      const auto& points = loads["point"];
      if (!points.is_array()) throw ValidationError("loads.point: expected an array");
      for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string path = "loads.point[" + std::to_string(i) + "]";
        const auto& entry = points[i];
        PointLoad load;
        load.layer = require_int(require_key(entry, "layer", path), path + ".layer") - 1;
        load.position = require_number(require_key(entry, "x_m", path), path + ".x_m");
        load.magnitude = require_number(require_key(entry, "F_N", path), path + ".F_N");
        model.loads.point_loads.push_back(load);
      }
    }
    if (loads.contains("distributed")) {
      const auto& distributed = loads["distributed"];
      if (!distributed.is_array()) throw ValidationError("loads.distributed: expected an array");
      model.loads.distributed.assign(model.layers.size(), {});
      for (std::size_t i = 0; i < distributed.size(); ++i) {
        const std::string path = "loads.distributed[" + std::to_string(i) + "]";
        const auto& entry = distributed[i];
        const int layer = require_int(require_key(entry, "layer", path), path + ".layer") - 1;
        if (layer < 0 || layer >= static_cast<int>(model.layers.size())) {
          throw ValidationError(path + ".layer: out of range");
        }
        if (entry.contains("fZ_N_per_m")) {
          const double q = require_number(entry["fZ_N_per_m"], path + ".fZ_N_per_m");
          model.loads.distributed[layer].assign(model.n_el, q);
        } else if (entry.contains("values_N_per_m")) {
          const auto& values = entry["values_N_per_m"];
          if (!values.is_array()) throw ValidationError(path + ".values_N_per_m: expected an array");
          std::vector<double> q;
          for (std::size_t k = 0; k < values.size(); ++k) {
            q.push_back(require_number(values[k], path + ".values_N_per_m[" + std::to_string(k) + "]"));
          }
          model.loads.distributed[layer] = std::move(q);
        } else {
          throw ValidationError(path + ": give fZ_N_per_m or values_N_per_m");
        }
      }
      bool any = false;
      for (const auto& q : model.loads.distributed) any = any || !q.empty();
      if (!any) model.loads.distributed.clear();
    }
  }

  if (doc.contains("analysis")) {
    const auto& analysis = doc["analysis"];
    if (analysis.contains("kind")) {
      model.analysis.kind = kind_from_string(require_string(analysis["kind"], "analysis.kind"));
    }
    if (analysis.contains("tol_equilibrium")) {
      model.analysis.tol_equilibrium =
          require_number(analysis["tol_equilibrium"], "analysis.tol_equilibrium");
    }
    if (analysis.contains("tol_compatibility")) {
      model.analysis.tol_compatibility =
          require_number(analysis["tol_compatibility"], "analysis.tol_compatibility");
    }
    if (analysis.contains("max_iterations")) {
      model.analysis.max_iterations =
          require_int(analysis["max_iterations"], "analysis.max_iterations");
    }
  }

  return validate(std::move(model));
}

inline BeamModel load_model_file(const std::filesystem::path& path,
                                 std::optional<int> n_el_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model file '" + path.string() + "': " + e.what());
  }
  try {
    return parse_model_json(doc, n_el_override);
  } catch (const ValidationError& e) {
    throw ValidationError("model file '" + path.string() + "': " + e.what());
  }
}

/// Serializes a validated model back to the JSON document form (GPa for
/// moduli of 1 GPa and above, MPa below).
inline nlohmann::json model_to_json(const BeamModel& model) {
  nlohmann::json doc;
  doc["width_m"] = model.layers.front().section.width;
  doc["length_m"] = model.length();
  doc["n_el"] = model.n_el;
  doc["layers"] = nlohmann::json::array();
  for (const auto& layer : model.layers) {
    nlohmann::json entry;
    if (layer.section.young_modulus >= 1e9) {
      entry["E_GPa"] = layer.section.young_modulus / 1e9;
    } else {
      entry["E_MPa"] = layer.section.young_modulus / 1e6;
    }
    if (layer.section.shear_modulus >= 1e9) {
      entry["G_GPa"] = layer.section.shear_modulus / 1e9;
    } else {
      entry["G_MPa"] = layer.section.shear_modulus / 1e6;
    }
    entry["h_mm"] = layer.section.thickness * 1e3;
    doc["layers"].push_back(entry);
  }
  doc["supports"] = nlohmann::json::array();
  for (const auto& support : model.supports) {
    nlohmann::json entry;
    entry["layer"] = support.layer + 1;
    entry["x_m"] = model.node_x(support.node);
    std::string fix;
    if (support.fix_u) fix += 'u';
    if (support.fix_w) fix += 'w';
    if (support.fix_phi) fix += 'p';
    entry["fix"] = fix;
    doc["supports"].push_back(entry);
  }
  doc["loads"]["point"] = nlohmann::json::array();
  for (const auto& load : model.loads.point_loads) {
    nlohmann::json entry;
    entry["layer"] = load.layer + 1;
    entry["x_m"] = load.position;
    entry["F_N"] = load.magnitude;
    doc["loads"]["point"].push_back(entry);
  }
  if (!model.loads.distributed.empty()) {
    doc["loads"]["distributed"] = nlohmann::json::array();
    for (std::size_t layer = 0; layer < model.loads.distributed.size(); ++layer) {
      if (model.loads.distributed[layer].empty()) continue;
      nlohmann::json entry;
      entry["layer"] = static_cast<int>(layer) + 1;
      entry["values_N_per_m"] = model.loads.distributed[layer];
      doc["loads"]["distributed"].push_back(entry);
    }
  }
  doc["analysis"]["kind"] = to_string(model.analysis.kind);
  doc["analysis"]["tol_equilibrium"] = model.analysis.tol_equilibrium;
  doc["analysis"]["tol_compatibility"] = model.analysis.tol_compatibility;
  doc["analysis"]["max_iterations"] = model.analysis.max_iterations;
  return doc;
}

}  // namespace lamglass
