#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unruh/json_io.hpp"

namespace unruh::cli {

enum class Mode { spectrum, evolve, steady, dicke_scaling, cascade, entropy_scan, fab_contour, lifetime };

Mode parse_mode(const std::string& text);
std::string to_string(Mode mode);

enum class Spacing { linear, log };

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 2;
  Spacing spacing = Spacing::log;
  /// Prepend t = 0 (log grids only).
  bool include_zero = false;

  std::vector<double> values() const;
};

/// Log-spaced grid of ranges in SI units.
struct ContourSpec {
  double omega0 = 0.0;
  double alpha_min = 0.0, alpha_max = 0.0;
  int alpha_points = 0;
  double L_min = 0.0, L_max = 0.0;
  int L_points = 0;
};

struct Scenario {
  std::string name;
  Mode mode = Mode::spectrum;
  std::optional<RateSpec> rates;
  std::vector<std::string> initial_states;
  std::vector<double> f_values;
  std::optional<TimeGrid> time_grid;
  std::vector<int> n_values;
  std::vector<std::string> models{"dense"};
  std::optional<ContourSpec> contour;
  std::string output_path;
};

/// Validates structure and mode-specific required fields. Throws
/// InvalidArgument with the offending field named.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Directory holding the bundled scenarios: $UNRUH_PRETH_SCENARIOS if set,
/// otherwise the compiled-in default.
std::filesystem::path scenario_dir();

/// A path to an existing file, or the name of a bundled scenario.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

std::vector<std::string> list_scenarios();

}  // namespace unruh::cli
