#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamglass/model_io.hpp"
#include "lamglass/presets.hpp"
#include "lamglass/report.hpp"

namespace lamglass {

/// Batch run description: one input source, a load sweep, and the analysis
/// kinds to run for each load.
struct RunConfig {
  std::string preset;                    ///< preset name, or empty
  std::filesystem::path model_path;      ///< model file, or empty (exactly one source)
  std::vector<AnalysisKind> kinds;       ///< defaults: all four (preset) / file's kind
  std::vector<double> loads;             ///< point-load magnitudes [N]; required
  std::optional<int> n_el;
  std::optional<double> tolerance;       ///< sets both eps_1 and eps_2
  std::optional<int> max_iterations;
  std::filesystem::path out_dir = "out";
  Units units = Units::paper;
};

/// One solved (kind, load) combination with the post-processed fields.
struct AnalysisOutcome {
  AnalysisKind kind = AnalysisKind::nonlinear;
  double load_n = 0.0;
  BeamModel solved_model;  ///< base model, or the derived single-layer model
  SolveReport report;
  std::vector<NodalField> fields;
  double w_mid = 0.0;                ///< bottom-layer deflection at L/2 [m]
  double s_bot_bottom_mid = 0.0;     ///< bottom fiber, bottom layer, mid-span [Pa]
  double s_top_top_mid = 0.0;        ///< top fiber, top layer, mid-span [Pa]
  double t_interlayer_max = 0.0;     ///< max |T| in the interlayer [Pa]
};

/// Runs one analysis kind on a validated model. Equivalent kinds solve the
/// derived single-layer models through the same element/solver stack.
inline AnalysisOutcome run_analysis(const BeamModel& base, AnalysisKind kind) {
  AnalysisOutcome outcome;
  outcome.kind = kind;
  StrainMode mode = StrainMode::linearized;
  switch (kind) {
    case AnalysisKind::nonlinear: {
      outcome.solved_model = base;
      outcome.solved_model.analysis.kind = AnalysisKind::nonlinear;
      outcome.report = newton_solve(outcome.solved_model);
      mode = StrainMode::finite;
      break;
    }
    case AnalysisKind::linear: {
      outcome.solved_model = base;
      outcome.solved_model.analysis.kind = AnalysisKind::linear;
      outcome.report = linear_solve(outcome.solved_model);
      break;
    }
    case AnalysisKind::monolithic: {
      EquivalentResult eq = equivalent_monolithic(base);
      outcome.solved_model = std::move(eq.model);
      outcome.report = std::move(eq.report);
      break;
    }
    case AnalysisKind::two_layer: {
      EquivalentResult eq = equivalent_two_layer(base);
      outcome.solved_model = std::move(eq.model);
      outcome.report = std::move(eq.report);
      break;
    }
  }

  outcome.fields = nodal_fields(outcome.solved_model, outcome.report.state, mode);
  outcome.w_mid = mid_span_deflection(outcome.solved_model, outcome.report.state);
  const int mid = mid_span_node(outcome.solved_model);
  outcome.s_bot_bottom_mid = outcome.fields.back().s_bot[mid];
  outcome.s_top_top_mid = outcome.fields.front().s_top[mid];
  const int interlayer = outcome.solved_model.layer_count() == 3 ? 1 : 0;
  for (const double t : outcome.fields[interlayer].t) {
    outcome.t_interlayer_max = std::max(outcome.t_interlayer_max, std::abs(t));
  }
  return outcome;
}

namespace detail {

inline std::string format_load_label(double load_n) {
  char buffer[32];
  if (load_n == std::floor(load_n) && std::abs(load_n) < 1e9) {
    std::snprintf(buffer, sizeof buffer, "%lld", static_cast<long long>(load_n));
  } else {
    std::snprintf(buffer, sizeof buffer, "%.6g", load_n);
  }
  return buffer;
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write output file '" + path.string() + "'");
  out << body;
}

template <typename WriteFn>
inline void write_csv(const std::filesystem::path& path, const WriteFn& fn) {
  std::ostringstream body;
  fn(body);
  write_file(path, body.str());
}

}  // namespace detail

struct RunResult {
  nlohmann::json summary;
  std::filesystem::path out_dir;
};

/// Executes the configured sweep: for every load and kind, solves the model,
/// writes deflection/stress CSVs (plus convergence and multiplier CSVs for
/// the iterative kinds) and collects summary.json with comparisons against
/// the embedded references when a preset is run. Repeated runs of the same
/// config produce byte-identical CSV bodies.
inline RunResult run(const RunConfig& config) {
  const bool has_preset = !config.preset.empty();
  const bool has_file = !config.model_path.empty();
  if (has_preset == has_file) {
    throw ValidationError("give exactly one input: --preset <name> or --model <path>");
  }
  if (config.loads.empty()) {
    throw ValidationError("at least one load value is required (--load)");
  }

  std::optional<BeamModel> file_model;
  if (has_file) {
    file_model = load_model_file(config.model_path, config.n_el);
    if (file_model->loads.point_loads.empty()) {
      throw ValidationError("model file has no point loads; the --load sweep needs at least one");
    }
  }

  std::vector<AnalysisKind> kinds = config.kinds;
  if (kinds.empty()) {
    if (has_preset) {
      kinds = {AnalysisKind::nonlinear, AnalysisKind::linear, AnalysisKind::monolithic,
               AnalysisKind::two_layer};
    } else {
      kinds = {file_model->analysis.kind};
    }
  }

  const presets::PresetReference* reference =
      has_preset ? presets::find_reference(config.preset) : nullptr;

  std::filesystem::create_directories(config.out_dir);

  nlohmann::json summary;
  if (has_preset) {
    summary["source"]["preset"] = config.preset;
  } else {
    summary["source"]["model"] = config.model_path.string();
  }
  summary["units"]["deflection"] = config.units == Units::paper ? "mm" : "m";
  summary["units"]["stress"] = config.units == Units::paper ? "MPa" : "Pa";
  summary["runs"] = nlohmann::json::array();

  const double w_scale = config.units == Units::paper ? 1e3 : 1.0;
  const double s_scale = config.units == Units::paper ? 1e-6 : 1.0;

  for (const double load : config.loads) {
    BeamModel model;
    if (has_preset) {
      model = presets::preset_model(config.preset, load, config.n_el);
    } else {
      model = *file_model;
      for (auto& point : model.loads.point_loads) point.magnitude = load;
    }
    if (config.tolerance) {
      model.analysis.tol_equilibrium = *config.tolerance;
      model.analysis.tol_compatibility = *config.tolerance;
    }
    if (config.max_iterations) model.analysis.max_iterations = *config.max_iterations;
    summary["n_el"] = model.n_el;

    const std::string load_label = detail::format_load_label(load);
    for (const AnalysisKind kind : kinds) {
      const AnalysisOutcome outcome = run_analysis(model, kind);
      const std::string tag = std::string(to_string(kind)) + "_" + load_label;

      detail::write_csv(config.out_dir / ("deflection_" + tag + ".csv"), [&](std::ostream& out) {
        write_deflection_csv(out, outcome.solved_model, outcome.fields, config.units);
      });
      detail::write_csv(config.out_dir / ("stress_" + tag + ".csv"), [&](std::ostream& out) {
        write_stress_csv(out, outcome.solved_model, outcome.fields, config.units);
      });
      if (kind == AnalysisKind::nonlinear) {
        detail::write_csv(config.out_dir / ("convergence_" + load_label + ".csv"),
                          [&](std::ostream& out) { write_convergence_csv(out, outcome.report.log); });
      }
      if (outcome.solved_model.interface_count() > 0 &&
          (kind == AnalysisKind::nonlinear || kind == AnalysisKind::linear)) {
        detail::write_csv(config.out_dir / ("multipliers_" + tag + ".csv"), [&](std::ostream& out) {
          write_multipliers_csv(out, outcome.solved_model, outcome.report.state, config.units);
        });
      }

      nlohmann::json entry;
      entry["kind"] = to_string(kind);
      entry["load_N"] = load;
      entry["mid_span_deflection"] = outcome.w_mid * w_scale;
      entry["stress_mid"]["S_bot_bottom_layer"] = outcome.s_bot_bottom_mid * s_scale;
      entry["stress_mid"]["S_top_top_layer"] = outcome.s_top_top_mid * s_scale;
      entry["stress_mid"]["T_interlayer_max"] = outcome.t_interlayer_max * s_scale;
      entry["iterations"] = outcome.report.state.iterations;
      if (!outcome.report.log.empty()) {
        entry["final_residuals"]["eta1"] = outcome.report.log.back().eta1;
        entry["final_residuals"]["eta2"] = outcome.report.log.back().eta2;
      }

      if (reference) {
        nlohmann::json ref;
        const double w_mm = outcome.w_mid * 1e3;
        const double s_mpa = outcome.s_bot_bottom_mid * 1e-6;
        if (const auto* row = reference->row_for(load);
            row && (kind == AnalysisKind::nonlinear || kind == AnalysisKind::linear)) {
          const bool nl = kind == AnalysisKind::nonlinear;
          const double w_ref = nl ? row->w_nonlinear_mm : row->w_linear_mm;
          const double s_ref = nl ? row->s_nonlinear_mpa : row->s_linear_mpa;
          ref["w_mm"]["model"] = w_ref;
          ref["eta_percent"]["w_vs_model"] = 100.0 * relative_error(w_mm, w_ref);
          ref["S_MPa"]["model"] = s_ref;
          ref["eta_percent"]["S_vs_model"] = 100.0 * relative_error(s_mpa, s_ref);
          if (std::isfinite(row->w_ref_a_mm)) {
            ref["w_mm"][reference->ref_a_label] = row->w_ref_a_mm;
            ref["eta_percent"]["w_vs_" + reference->ref_a_label] =
                100.0 * relative_error(w_mm, row->w_ref_a_mm);
          }
          if (std::isfinite(row->w_ref_b_mm)) {
            ref["w_mm"][reference->ref_b_label] = row->w_ref_b_mm;
            ref["eta_percent"]["w_vs_" + reference->ref_b_label] =
                100.0 * relative_error(w_mm, row->w_ref_b_mm);
          }
          if (std::isfinite(row->s_ref_a_mpa)) {
            ref["S_MPa"][reference->ref_a_label] = row->s_ref_a_mpa;
            ref["eta_percent"]["S_vs_" + reference->ref_a_label] =
                100.0 * relative_error(s_mpa, row->s_ref_a_mpa);
          }
          if (std::isfinite(row->s_ref_b_mpa)) {
            ref["S_MPa"][reference->ref_b_label] = row->s_ref_b_mpa;
            ref["eta_percent"]["S_vs_" + reference->ref_b_label] =
                100.0 * relative_error(s_mpa, row->s_ref_b_mpa);
          }
        } else if (kind == AnalysisKind::monolithic &&
                   std::abs(load - reference->equivalent_load_n) <= 1e-9) {
          ref["w_mm"]["model"] = reference->w_monolithic_mm;
          ref["eta_percent"]["w_vs_model"] =
              100.0 * relative_error(w_mm, reference->w_monolithic_mm);
        } else if (kind == AnalysisKind::two_layer &&
                   std::abs(load - reference->equivalent_load_n) <= 1e-9) {
          ref["w_mm"]["model"] = reference->w_two_layer_mm;
          ref["eta_percent"]["w_vs_model"] = 100.0 * relative_error(w_mm, reference->w_two_layer_mm);
        }
        if (!ref.empty()) entry["reference"] = ref;
      }

      summary["runs"].push_back(entry);
    }
  }

  detail::write_file(config.out_dir / "summary.json", summary.dump(2) + "\n");
  return {std::move(summary), config.out_dir};
}

}  // namespace lamglass
