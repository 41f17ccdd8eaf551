#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamglass/runner.hpp"

namespace {

// Exit codes: 0 success, 2 validation/usage error, 3 solver failure.
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-element solver for the immediate elastic response of "
               "three-layer laminated glass beams"};

  std::string preset;
  std::string model_path;
  std::vector<std::string> kind_names;
  std::vector<double> loads;
  int n_el = 0;
  double tolerance = 0.0;
  int max_iterations = 0;
  std::string out_dir = "out";
  std::string units = "paper";

  auto* preset_opt =
      app.add_option("--preset", preset, "Benchmark preset (simply-supported, fixed-end)");
  auto* model_opt = app.add_option("--model", model_path, "Path to a JSON model file");
  preset_opt->excludes(model_opt);
  model_opt->excludes(preset_opt);
  app.add_option("--kind", kind_names,
                 "Analysis kinds to run: nonlinear, linear, monolithic, two_layer "
                 "(default: all four for presets, the file's kind otherwise)")
      ->delimiter(',');
  app.add_option("--load", loads, "Point-load magnitudes in N (comma-separated sweep)")
      ->delimiter(',');
  auto* n_el_opt = app.add_option("--n-el", n_el, "Override the element count per layer");
  auto* tol_opt = app.add_option("--tol", tolerance, "Tolerance for both residuals (default 1e-6)");
  auto* max_iter_opt = app.add_option("--max-iter", max_iterations, "Newton iteration limit");
  app.add_option("--out", out_dir, "Output directory (default: out)");
  app.add_option("--units", units, "Output units: si or paper (default: paper)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    lamglass::RunConfig config;
    config.preset = preset;
    config.model_path = model_path;
    for (const auto& name : kind_names) config.kinds.push_back(lamglass::kind_from_string(name));
    config.loads = loads;
    if (*n_el_opt) config.n_el = n_el;
    if (*tol_opt) config.tolerance = tolerance;
    if (*max_iter_opt) config.max_iterations = max_iterations;
    config.out_dir = out_dir;
    config.units = lamglass::units_from_string(units);

    const lamglass::RunResult result = lamglass::run(config);

    for (const auto& entry : result.summary["runs"]) {
      std::printf("%-10s F = %g N: w_mid = %.4f %s", entry["kind"].get<std::string>().c_str(),
                  entry["load_N"].get<double>(), entry["mid_span_deflection"].get<double>(),
                  result.summary["units"]["deflection"].get<std::string>().c_str());
      if (entry.contains("iterations") && entry["iterations"].get<int>() > 1) {
        std::printf("  (%d iterations)", entry["iterations"].get<int>());
      }
      std::printf("\n");
    }
    std::printf("wrote %s\n", (result.out_dir / "summary.json").string().c_str());
    return 0;
  } catch (const lamglass::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const lamglass::SolveError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
