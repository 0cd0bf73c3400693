#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unruh/cli/scenario.hpp"

namespace unruh::cli {

struct RunOptions {
  std::filesystem::path out_dir;
  int threads = 1;
};

struct RunSummary {
  std::string scenario;
  std::string mode;
  std::filesystem::path directory;
  std::vector<std::string> files;
  long rows = 0;
  nlohmann::json metrics = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Output root: explicit value, else $UNRUH_PRETH_OUT, else ./out.
std::filesystem::path output_root(const std::string& explicit_dir);

/// Runs the scenario and writes its files under
/// out_dir / scenario.output_path. Sweep points run on `threads` workers;
/// files are written in input order.
RunSummary run_scenario(const Scenario& scenario, const RunOptions& options);

}  // namespace unruh::cli
