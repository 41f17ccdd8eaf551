#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lamglass/postprocess.hpp"

namespace lamglass {

/// Output units: SI (m, Pa) or the paper-table units (mm, MPa). Residuals
/// are dimensionless either way.
enum class Units { si, paper };

inline Units units_from_string(const std::string& name) {
  if (name == "si") return Units::si;
  if (name == "paper") return Units::paper;
  throw ValidationError("unknown units '" + name + "' (use si or paper)");
}

namespace detail {

inline std::string format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

inline std::string format_residual(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10e", v);
  return buffer;
}

struct UnitScales {
  double length = 1.0;
  double stress = 1.0;
  const char* length_suffix = "m";
  const char* stress_suffix = "Pa";
};

inline UnitScales scales_for(Units units) {
  if (units == Units::paper) return {1e3, 1e-6, "mm", "MPa"};
  return {};
}

}  // namespace detail

/// X and per-layer deflections, one node per row.
inline void write_deflection_csv(std::ostream& out, const BeamModel& model,
                                 const std::vector<NodalField>& fields, Units units) {
  const auto scale = detail::scales_for(units);
  out << "X_" << scale.length_suffix;
  for (int layer = 0; layer < model.layer_count(); ++layer) {
    out << ",w_layer" << layer + 1 << "_" << scale.length_suffix;
  }
  out << "\n";
  for (int node = 0; node < model.node_count(); ++node) {
    out << detail::format_value(fields.front().x[node] * scale.length);
    for (const auto& field : fields) {
      out << "," << detail::format_value(field.w[node] * scale.length);
    }
    out << "\n";
  }
}

/// X and per-layer extrapolated nodal stresses (S_top, S_bot, T).
inline void write_stress_csv(std::ostream& out, const BeamModel& model,
                             const std::vector<NodalField>& fields, Units units) {
  const auto scale = detail::scales_for(units);
  out << "X_" << scale.length_suffix;
  for (int layer = 0; layer < model.layer_count(); ++layer) {
    out << ",S_top_layer" << layer + 1 << "_" << scale.stress_suffix
        << ",S_bot_layer" << layer + 1 << "_" << scale.stress_suffix
        << ",T_layer" << layer + 1 << "_" << scale.stress_suffix;
  }
  out << "\n";
  for (int node = 0; node < model.node_count(); ++node) {
    out << detail::format_value(fields.front().x[node] * scale.length);
    for (const auto& field : fields) {
      out << "," << detail::format_value(field.s_top[node] * scale.stress)
          << "," << detail::format_value(field.s_bot[node] * scale.stress)
          << "," << detail::format_value(field.t[node] * scale.stress);
    }
    out << "\n";
  }
}

/// Residual history, one row per Newton iteration.
inline void write_convergence_csv(std::ostream& out, const ConvergenceLog& log) {
  out << "k,eta1,eta2\n";
  for (const auto& record : log) {
    out << record.iteration << "," << detail::format_residual(record.eta1) << ","
        << detail::format_residual(record.eta2) << "\n";
  }
}

/// Lagrange multipliers as interface tractions, ordered interface-major,
/// then node, then (X, Z); interfaces are 1-based (1 = layers 1-2). Rows
/// eliminated together with their supports report zero.
inline void write_multipliers_csv(std::ostream& out, const BeamModel& model,
                                  const SystemState& state, Units units) {
  const auto scale = detail::scales_for(units);
  out << "interface,node,X_" << scale.length_suffix << ",lambda_X_N,lambda_Z_N\n";
  const int nn = model.node_count();
  for (int interface = 0; interface < model.interface_count(); ++interface) {
    for (int node = 0; node < nn; ++node) {
      out << interface + 1 << "," << node + 1 << ","
          << detail::format_value(model.node_x(node) * scale.length) << ","
          << detail::format_value(state.multipliers[multiplier_row(interface, node, 0, nn)]) << ","
          << detail::format_value(state.multipliers[multiplier_row(interface, node, 1, nn)]) << "\n";
    }
  }
}

}  // namespace lamglass
