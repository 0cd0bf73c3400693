#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "unruh/cli/runner.hpp"
#include "unruh/cli/scenario.hpp"
#include "unruh/error.hpp"

namespace {

constexpr int kExitFailure = 1;  // invariant or numerical failure
constexpr int kExitInput = 2;    // bad scenario or arguments
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prethermalization of accelerated atoms: scenario runner"};
  app.require_subcommand(1);

  std::string target;
  std::string out_dir;
  int threads = 1;

  auto* run = app.add_subcommand("run", "Run a scenario file or bundled scenario");
  run->add_option("scenario", target, "scenario JSON path or bundled name")->required();
  run->add_option("--out", out_dir, "output root (default $UNRUH_PRETH_OUT or ./out)");
  run->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1, 256));

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");

  std::string validate_target;
  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("scenario", validate_target, "scenario JSON path or bundled name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : unruh::cli::list_scenarios()) std::cout << name << '\n';
      return 0;
    }
    if (*validate) {
      const auto path = unruh::cli::resolve_scenario(validate_target);
      const auto s = unruh::cli::load_scenario(path);
      std::cout << nlohmann::json{{"scenario", s.name}, {"mode", to_string(s.mode)}, {"valid", true}}.dump()
                << '\n';
      return 0;
    }
    const auto path = unruh::cli::resolve_scenario(target);
    const auto scenario = unruh::cli::load_scenario(path);
    std::cerr << "running " << scenario.name << " (" << to_string(scenario.mode) << ") from "
              << path.string() << '\n';
    const auto summary =
        unruh::cli::run_scenario(scenario, {unruh::cli::output_root(out_dir), threads});
    std::cout << summary.to_json().dump() << '\n';
    return 0;
  } catch (const unruh::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const unruh::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitFailure;
  } catch (const unruh::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
