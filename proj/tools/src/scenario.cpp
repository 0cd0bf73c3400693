#include "unruh/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "unruh/error.hpp"

#ifndef UNRUH_DEFAULT_SCENARIO_DIR
#define UNRUH_DEFAULT_SCENARIO_DIR "scenarios"
#endif

namespace unruh::cli {

namespace {

using nlohmann::json;

const std::pair<Mode, const char*> kModes[] = {
    {Mode::spectrum, "spectrum"},         {Mode::evolve, "evolve"},
    {Mode::steady, "steady"},             {Mode::dicke_scaling, "dicke_scaling"},
    {Mode::cascade, "cascade"},           {Mode::entropy_scan, "entropy_scan"},
    {Mode::fab_contour, "fab_contour"},   {Mode::lifetime, "lifetime"},
};

[[noreturn]] void fail(const std::string& what) { throw InvalidArgument("scenario: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::pair<double, double> range(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(std::string("field '") + key + "' must be [min, max]");
  return {v[0].get<double>(), v[1].get<double>()};
}

TimeGrid parse_grid(const json& j) {
  TimeGrid g;
  g.t_min = number(j, "t_min");
  g.t_max = number(j, "t_max");
  g.points = integer(j, "points");
  if (j.contains("spacing")) {
    const auto s = j.at("spacing").get<std::string>();
    if (s == "linear") g.spacing = Spacing::linear;
    else if (s == "log") g.spacing = Spacing::log;
    else fail("time_grid.spacing must be 'linear' or 'log'");
  }
  if (j.contains("include_zero")) g.include_zero = j.at("include_zero").get<bool>();
  if (g.points < 2) fail("time_grid.points must be >= 2");
  if (!(g.t_max > g.t_min)) fail("time_grid requires t_max > t_min");
  if (g.spacing == Spacing::log && !(g.t_min > 0.0)) fail("log time_grid requires t_min > 0");
  if (g.spacing == Spacing::linear && g.t_min < 0.0) fail("time_grid requires t_min >= 0");
  return g;
}

ContourSpec parse_contour(const json& j) {
  ContourSpec c;
  c.omega0 = number(j, "omega0");
  std::tie(c.alpha_min, c.alpha_max) = range(j, "alpha_range");
  c.alpha_points = integer(j, "alpha_points");
  std::tie(c.L_min, c.L_max) = range(j, "L_range");
  c.L_points = integer(j, "L_points");
  if (!(c.omega0 > 0.0)) fail("contour.omega0 must be positive");
  if (!(c.alpha_min > 0.0 && c.alpha_max >= c.alpha_min)) fail("contour.alpha_range must be positive and ordered");
  if (!(c.L_min > 0.0 && c.L_max >= c.L_min)) fail("contour.L_range must be positive and ordered");
  if (c.alpha_points < 2 || c.L_points < 2) fail("contour point counts must be >= 2");
  return c;
}

}  // namespace

Mode parse_mode(const std::string& text) {
  for (const auto& [mode, name] : kModes)
    if (text == name) return mode;
  fail("unknown mode '" + text + "'");
}

std::string to_string(Mode mode) {
  for (const auto& [m, name] : kModes)
    if (m == mode) return name;
  return "?";
}

std::vector<double> TimeGrid::values() const {
  std::vector<double> t;
  if (include_zero && spacing == Spacing::log) t.push_back(0.0);
  for (int k = 0; k < points; ++k) {
    const double u = static_cast<double>(k) / (points - 1);
    t.push_back(spacing == Spacing::log ? t_min * std::pow(t_max / t_min, u)
                                        : t_min + u * (t_max - t_min));
  }
  return t;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) fail("expected a JSON object");
  static const std::set<std::string> known{"name", "mode", "rates", "initial_state", "f_values",
                                           "time_grid", "n_values", "models", "contour",
                                           "output_path", "description"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail("unknown field '" + key + "'");

  Scenario s;
  s.name = field(j, "name").get<std::string>();
  if (s.name.empty()) fail("name must not be empty");
  s.mode = parse_mode(field(j, "mode").get<std::string>());
  s.output_path = j.contains("output_path") ? j.at("output_path").get<std::string>() : s.name;

  if (j.contains("rates")) s.rates = rate_spec_from_json(j.at("rates"));
  if (j.contains("initial_state")) {
    const auto& v = j.at("initial_state");
    if (v.is_string()) s.initial_states = {v.get<std::string>()};
    else s.initial_states = v.get<std::vector<std::string>>();
  }
  if (j.contains("f_values")) s.f_values = j.at("f_values").get<std::vector<double>>();
  if (j.contains("time_grid")) s.time_grid = parse_grid(j.at("time_grid"));
  if (j.contains("n_values")) s.n_values = j.at("n_values").get<std::vector<int>>();
  if (j.contains("models")) s.models = j.at("models").get<std::vector<std::string>>();
  if (j.contains("contour")) s.contour = parse_contour(j.at("contour"));

  for (double f : s.f_values)
    if (!(f >= -1.0 && f <= 1.0)) fail("f_values must lie in [-1, 1]");
  for (int n : s.n_values)
    if (n < 1 || n > 100) fail("n_values must lie in 1..100");
  for (const auto& m : s.models)
    if (m != "dense" && m != "bloch") fail("models must be 'dense' or 'bloch'");

  auto need = [&](bool ok, const char* what) {
    if (!ok) fail(to_string(s.mode) + " mode requires " + what);
  };
  switch (s.mode) {
    case Mode::spectrum:
    case Mode::steady:
      need(s.rates.has_value(), "'rates'");
      need(!s.f_values.empty(), "'f_values'");
      break;
    case Mode::evolve:
      need(s.rates.has_value(), "'rates'");
      need(!s.f_values.empty(), "'f_values'");
      need(!s.initial_states.empty(), "'initial_state'");
      need(s.time_grid.has_value(), "'time_grid'");
      need(s.rates->n_atoms == 2, "rates.n_atoms = 2");
      break;
    case Mode::cascade:
      need(s.rates.has_value(), "'rates'");
      need(!s.f_values.empty(), "'f_values'");
      need(s.time_grid.has_value() && s.time_grid->spacing == Spacing::log && !s.time_grid->include_zero,
           "a log 'time_grid' without t = 0");
      break;
    case Mode::dicke_scaling:
    case Mode::entropy_scan:
      need(s.rates.has_value(), "'rates'");
      need(!s.n_values.empty(), "'n_values'");
      break;
    case Mode::fab_contour:
      need(s.contour.has_value(), "'contour'");
      break;
    case Mode::lifetime:
      need(s.rates.has_value(), "'rates'");
      need(!s.f_values.empty(), "'f_values'");
      break;
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("scenario " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

std::filesystem::path scenario_dir() {
  if (const char* env = std::getenv("UNRUH_PRETH_SCENARIOS"); env && *env) return env;
  return UNRUH_DEFAULT_SCENARIO_DIR;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
  const std::filesystem::path p(name_or_path);
  if (std::filesystem::is_regular_file(p)) return p;
  const auto bundled = scenario_dir() / (name_or_path + ".json");
  if (std::filesystem::is_regular_file(bundled)) return bundled;
  throw InvalidArgument("no scenario file or bundled scenario named '" + name_or_path + "'");
}

std::vector<std::string> list_scenarios() {
  std::vector<std::string> names;
  const auto dir = scenario_dir();
  if (!std::filesystem::is_directory(dir)) return names;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace unruh::cli
