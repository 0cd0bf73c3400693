#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unruh/cli/csv.hpp"
#include "unruh/cli/parallel.hpp"
#include "unruh/cli/runner.hpp"
#include "unruh/cli/scenario.hpp"
#include "unruh/error.hpp"

using namespace unruh;
using namespace unruh::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("unruh_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json small_evolve() {
  return json::parse(R"({
    "name": "tiny", "mode": "evolve",
    "rates": {"gamma_plus": 0.8, "gamma_minus": 0.2, "n_atoms": 2},
    "initial_state": ["up_up", "singlet", "ud"],
    "f_values": [0, 0.99],
    "time_grid": {"t_min": 0.01, "t_max": 100, "points": 30, "spacing": "log", "include_zero": true}
  })");
}

}  // namespace

TEST_CASE("bundled scenarios are valid") {
  const auto names = list_scenarios();
  CHECK(names.size() >= 8);
  for (const char* required : {"fig1_spectrum", "fig2_panel", "fig3_scaling", "fig4_entropy", "fig5_cascade",
                               "fig6_contour", "lifetime_scan", "fig2_purity_concurrence"})
    CHECK(std::find(names.begin(), names.end(), required) != names.end());
  for (const auto& name : names) {
    CAPTURE(name);
    CHECK_NOTHROW(load_scenario(resolve_scenario(name)));
  }
}

TEST_CASE("scenario validation errors") {
  json j = small_evolve();
  j["mode"] = "dance";
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  j = small_evolve();
  j.erase("time_grid");
  CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("time_grid"), InvalidArgument);
  j = small_evolve();
  j["time_grid"]["t_min"] = 0.0;
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  j = small_evolve();
  j["time_grid"]["points"] = 1;
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  j = small_evolve();
  j["unexpected"] = 1;
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  j = small_evolve();
  j["f_values"] = {1.5};
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  j = json::parse(R"({"name":"c","mode":"fab_contour","contour":{"omega0":1e15,"alpha_range":[1e23,1e26],
                     "alpha_points":1,"L_range":[1e-9,1e-4],"L_points":5}})");
  CHECK_THROWS_AS(scenario_from_json(j), InvalidArgument);
  CHECK_THROWS_AS(resolve_scenario("no_such_scenario"), InvalidArgument);
}

TEST_CASE("time grids") {
  TimeGrid g;
  g.t_min = 1e-2;
  g.t_max = 1e2;
  g.points = 5;
  g.include_zero = true;
  const auto v = g.values();
  REQUIRE(v.size() == 6);
  CHECK(v[0] == 0.0);
  CHECK(v[3] == doctest::Approx(1.0));
  g.spacing = Spacing::linear;
  g.t_min = 0.0;
  g.t_max = 4.0;
  CHECK(g.values() == std::vector<double>{0, 1, 2, 3, 4});
}

TEST_CASE("output root precedence") {
  ::setenv("UNRUH_PRETH_OUT", "/tmp/from_env", 1);
  CHECK(output_root("explicit") == fs::path("explicit"));
  CHECK(output_root("") == fs::path("/tmp/from_env"));
  ::unsetenv("UNRUH_PRETH_OUT");
  CHECK(output_root("") == fs::path("out"));
}

TEST_CASE("csv formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("parallel map keeps order and propagates errors") {
  const auto v = parallel_map(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw InvariantViolation("boom");
                                 return 0;
                               }),
                  InvariantViolation);
}

TEST_CASE("runs are deterministic across thread counts") {
  const Scenario s = scenario_from_json(small_evolve());
  const auto a = run_scenario(s, {scratch("det_a"), 1});
  const auto b = run_scenario(s, {scratch("det_b"), 3});
  REQUIRE(a.files == b.files);
  CHECK(a.files.size() == 6);
  CHECK(a.rows == 6 * 31);
  for (const auto& f : a.files) CHECK(slurp(a.directory / f) == slurp(b.directory / f));
  const std::string head = slurp(a.directory / "dense_up_up_f0.csv").substr(0, 40);
  CHECK(head.rfind("t,Mz,Mzz,Mc,purity,entropy,concurrence\n", 0) == 0);
}

TEST_CASE("reduced model output carries a model column") {
  json j = small_evolve();
  j["initial_state"] = {"triplet0"};
  j["models"] = {"dense", "bloch"};
  const auto r = run_scenario(scenario_from_json(j), {scratch("bloch"), 1});
  const std::string text = slurp(r.directory / "bloch_triplet0_f0.99.csv");
  CHECK(text.rfind("t,Mz,Mzz,Mc,purity,entropy,concurrence,model\n", 0) == 0);
  CHECK(text.find(",bloch\n") != std::string::npos);
  j["initial_state"] = {"ud"};
  CHECK_THROWS_AS(run_scenario(scenario_from_json(j), {scratch("bloch2"), 1}), InvalidArgument);
}

TEST_CASE("every mode runs on a small input") {
  const fs::path root = scratch("modes");
  const char* docs[] = {
      R"({"name":"s","mode":"spectrum","rates":{"gamma_plus":0.8,"gamma_minus":0.2,"n_atoms":2},"f_values":[0,1]})",
      R"({"name":"st","mode":"steady","rates":{"gamma_plus":0.8,"gamma_minus":0.2,"n_atoms":2},"f_values":[0.5,1]})",
      R"({"name":"d","mode":"dicke_scaling","rates":{"gamma_plus":0.2,"gamma_minus":0.8},"n_values":[10,20,30]})",
      R"({"name":"c","mode":"cascade","rates":{"gamma_plus":0.2,"gamma_minus":0.8,"n_atoms":3},"f_values":[0.99],
          "time_grid":{"t_min":0.001,"t_max":1000,"points":60}})",
      R"({"name":"e","mode":"entropy_scan","rates":{"gamma_plus":0.8,"gamma_minus":0.2},"n_values":[1,2,3]})",
      R"({"name":"fc","mode":"fab_contour","contour":{"omega0":1e15,"alpha_range":[1e23,1e26],"alpha_points":3,
          "L_range":[1e-9,1e-4],"L_points":4}})",
      R"({"name":"l","mode":"lifetime","rates":{"gamma_plus":0.8,"gamma_minus":0.2},"f_values":[0,0.9]})",
  };
  for (const char* doc : docs) {
    const Scenario s = scenario_from_json(json::parse(doc));
    CAPTURE(s.name);
    const auto summary = run_scenario(s, {root, 2});
    CHECK(!summary.files.empty());
    for (const auto& f : summary.files) CHECK(fs::exists(summary.directory / f));
    const json line = summary.to_json();
    CHECK(line["status"] == "ok");
    CHECK(line["mode"] == to_string(s.mode));
  }
  CHECK(slurp(root / "fc" / "contour.csv").rfind("alpha,L,f_ab,T_pre_frac\n", 0) == 0);
  CHECK(slurp(root / "d" / "scaling.csv").rfind("N,I_max,t_peak,T_R\n", 0) == 0);
  CHECK(slurp(root / "c" / "cascade_f0.99.csv").rfind("t,intensity\n", 0) == 0);
  const json fit = json::parse(slurp(root / "d" / "fit_I_max.json"));
  for (const char* key : {"slope", "intercept", "r_squared", "n_points"}) CHECK(fit.contains(key));
}
