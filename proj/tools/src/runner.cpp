#include "unruh/cli/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "unruh/bloch.hpp"
#include "unruh/cli/csv.hpp"
#include "unruh/cli/parallel.hpp"
#include "unruh/dicke.hpp"
#include "unruh/error.hpp"
#include "unruh/fit.hpp"
#include "unruh/liouvillian.hpp"
#include "unruh/qcore.hpp"

namespace unruh::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string f_tag(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "f%.10g", f);
  return buf;
}

bool is_dipolar(const std::string& label) {
  return label == "up_up" || label == "down_down" || label == "triplet0" || label == "singlet";
}

DensityMatrix initial_state(const std::string& label, int n_atoms) {
  if (label == "all_up") return all_up_state(n_atoms);
  if (is_dipolar(label)) {
    if (n_atoms != 2) throw InvalidArgument("initial state '" + label + "' needs two atoms");
    return dipolar_basis_state(parse_dipolar_label(label));
  }
  if (label.size() != static_cast<std::size_t>(n_atoms))
    throw InvalidArgument("initial state '" + label + "' does not match n_atoms");
  return product_state(label);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

struct Output {
  RunSummary& summary;
  fs::path dir;

  fs::path file(const std::string& name) {
    summary.files.push_back(name);
    return dir / name;
  }
};

void run_spectrum(const Scenario& s, const RunOptions& opt, Output& out) {
  const int n = s.rates->n_atoms;
  const auto reports = parallel_map(s.f_values.size(), opt.threads, [&](std::size_t i) {
    return spectrum(build_lindbladian(s.rates->resolve(s.f_values[i]), n));
  });
  CsvWriter csv(out.file("spectrum.csv"), {"f_ab", "index", "re", "im"});
  json zero_counts = json::object(), adrs = json::object();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    json j = to_json(r);
    j["f_ab"] = s.f_values[i];
    j["gap_to_slow_cluster"] = r.gap_to_slow_cluster;
    write_json(out.file("spectrum_" + f_tag(s.f_values[i]) + ".json"), j);
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
      csv.row({s.f_values[i], static_cast<double>(k), r.eigenvalues[k].real(), r.eigenvalues[k].imag()});
    zero_counts[f_tag(s.f_values[i])] = r.zero_count;
    adrs[f_tag(s.f_values[i])] = r.adr;
  }
  out.summary.rows += csv.rows();
  out.summary.metrics["zero_count"] = zero_counts;
  out.summary.metrics["adr"] = adrs;
}

std::vector<double> trajectory_row(double t, const DensityMatrix& rho) {
  const ObservableSet o = observables(rho);
  return {t, o.mz, o.mzz, o.mc, purity(rho), von_neumann_entropy(rho), concurrence_wootters(rho)};
}

const std::vector<std::string> kTrajectoryHeader{"t", "Mz", "Mzz", "Mc", "purity", "entropy", "concurrence"};

void run_evolve(const Scenario& s, const RunOptions& opt, Output& out) {
  const bool want_bloch = std::find(s.models.begin(), s.models.end(), "bloch") != s.models.end();
  const bool want_dense = std::find(s.models.begin(), s.models.end(), "dense") != s.models.end();
  if (want_bloch)
    for (const auto& label : s.initial_states)
      if (!is_dipolar(label))
        throw InvalidArgument("the bloch model needs a dipolar-basis initial state, got '" + label + "'");

  const auto times = s.time_grid->values();
  struct Task {
    std::string label;
    double f;
  };
  std::vector<Task> tasks;
  for (const auto& label : s.initial_states)
    for (double f : s.f_values) tasks.push_back({label, f});

  using Rows = std::vector<std::vector<double>>;
  struct Result {
    Rows dense, bloch;
  };
  const auto results = parallel_map(tasks.size(), opt.threads, [&](std::size_t i) {
    const auto& task = tasks[i];
    const RateSet rates = s.rates->resolve(task.f);
    const DensityMatrix rho0 = initial_state(task.label, 2);
    Result r;
    if (want_dense) {
      const auto states = evolve_dense(build_lindbladian(rates, 2), rho0, times);
      for (std::size_t k = 0; k < times.size(); ++k) r.dense.push_back(trajectory_row(times[k], states[k]));
    }
    if (want_bloch) {
      const auto traj = evolve_bloch(rates, BlochState::from_observables(observables(rho0)), times);
      for (const auto& b : traj) r.bloch.push_back(trajectory_row(b.tau, reconstruct_state(b)));
    }
    return r;
  });

  json spans = json::object();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string stem = tasks[i].label + "_" + f_tag(tasks[i].f);
    if (want_dense) {
      CsvWriter csv(out.file("dense_" + stem + ".csv"), kTrajectoryHeader);
      std::vector<double> c;
      for (const auto& row : results[i].dense) {
        csv.row(row);
        c.push_back(row[6]);
      }
      out.summary.rows += csv.rows();
      spans[stem] = {{"max_concurrence", *std::max_element(c.begin(), c.end())},
                     {"concurrence_half_max_span", span_above_fraction(times, c, 0.5)}};
    }
    if (want_bloch) {
      auto header = kTrajectoryHeader;
      header.push_back("model");
      CsvWriter csv(out.file("bloch_" + stem + ".csv"), header);
      for (const auto& row : results[i].bloch) csv.row(row, "bloch");
      out.summary.rows += csv.rows();
    }
  }
  out.summary.metrics["trajectories"] = spans;
}

json bloch_json(const BlochState& b) { return {{"Mz", b.mz}, {"Mzz", b.mzz}, {"Mc", b.mc}}; }

void run_steady(const Scenario& s, const RunOptions& opt, Output& out) {
  const int n = s.rates->n_atoms;
  const auto docs = parallel_map(s.f_values.size(), opt.threads, [&](std::size_t i) {
    const double f = s.f_values[i];
    const RateSet rates = s.rates->resolve(f);
    const Superoperator sop = build_lindbladian(rates, n);
    const auto states = steady_states(sop);
    json j{{"f_ab", f}, {"n_atoms", n}, {"zero_count", static_cast<int>(states.size())}};
    json list = json::array();
    for (const auto& rho : states) {
      json entry{{"rho", to_json(rho)}};
      if (n == 2) entry["observables"] = bloch_json(BlochState::from_observables(observables(rho)));
      list.push_back(entry);
    }
    j["states"] = list;
    if (n == 2 && f < 1.0) j["gibbs"] = bloch_json(gibbs_steady(rates).observables);
    if (n == 2 && f == 1.0) {
      json gge = json::object();
      for (const char* label : {"up_up", "down_down", "triplet0", "singlet"}) {
        const auto init = BlochState::from_observables(observables(dipolar_basis_state(parse_dipolar_label(label))));
        const auto params = gge_parameters(init, rates.M0);
        json g = bloch_json(gge_steady(params).observables);
        const double l1 = params.l1();
        g["l1"] = std::isfinite(l1) ? json(l1) : json(l1 > 0 ? "inf" : "-inf");
        gge[label] = g;
      }
      j["gge"] = gge;
    }
    return j;
  });
  json zero_counts = json::object();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    write_json(out.file("steady_" + f_tag(s.f_values[i]) + ".json"), docs[i]);
    zero_counts[f_tag(s.f_values[i])] = docs[i]["zero_count"];
  }
  out.summary.metrics["zero_count"] = zero_counts;
}

void run_dicke_scaling(const Scenario& s, const RunOptions& opt, Output& out) {
  const LadderRates ladder = LadderRates::from(s.rates->resolve());
  struct Point {
    BurstMetrics m;
    double t_independent = 0.0;
  };
  const auto points = parallel_map(s.n_values.size(), opt.threads, [&](std::size_t i) {
    const int n = s.n_values[i];
    return Point{burst_metrics(DickeBlock::fully_excited(n, ladder)), independent_decay_time(n, ladder)};
  });

  CsvWriter csv(out.file("scaling.csv"), {"N", "I_max", "t_peak", "T_R"});
  CsvWriter detail(out.file("burst_detail.csv"), {"N", "I0", "e_fold_time", "burst"});
  CsvWriter base(out.file("baseline_f0.csv"), {"N", "T_R"});
  std::vector<double> ns, imax, tr;
  bool all_burst = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& m = points[i].m;
    const double n = s.n_values[i];
    csv.row({n, m.I_max, m.t_peak, m.T_R});
    detail.row({n, m.I0, m.e_fold_time, m.burst ? 1.0 : 0.0});
    base.row({n, points[i].t_independent});
    ns.push_back(n);
    imax.push_back(m.I_max);
    tr.push_back(m.T_R);
    all_burst = all_burst && m.burst;
  }
  out.summary.rows += csv.rows() + detail.rows() + base.rows();
  out.summary.metrics["all_burst"] = all_burst;
  if (ns.size() >= 2) {
    const PowerLawFit fi = fit_power_law(ns, imax);
    const PowerLawFit ft = fit_power_law(ns, tr);
    write_json(out.file("fit_I_max.json"), to_json(fi));
    write_json(out.file("fit_T_R.json"), to_json(ft));
    out.summary.metrics["I_max_slope"] = fi.slope;
    out.summary.metrics["T_R_slope"] = ft.slope;
  }
}

void run_cascade(const Scenario& s, const RunOptions& opt, Output& out) {
  const int n = s.rates->n_atoms;
  const std::string label = s.initial_states.empty() ? "all_up" : s.initial_states.front();
  const auto times = s.time_grid->values();
  const auto results = parallel_map(s.f_values.size(), opt.threads, [&](std::size_t i) {
    return cascade_trajectory(n, s.rates->resolve(s.f_values[i]), initial_state(label, n), times);
  });
  json metrics = json::object();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const std::string tag = f_tag(s.f_values[i]);
    CsvWriter csv(out.file("cascade_" + tag + ".csv"), {"t", "intensity"});
    for (std::size_t k = 0; k < r.times.size(); ++k) csv.row({r.times[k], r.intensity[k]});
    out.summary.rows += csv.rows();
    json j{{"f_ab", s.f_values[i]},           {"n_atoms", n},
           {"I0", r.I0},                      {"I_max", r.I_max},
           {"t_peak", r.t_peak},              {"plateau_detected", r.plateau_detected},
           {"block_gge_prediction", r.block_gge_prediction},
           {"gibbs_intensity", r.gibbs_intensity}, {"final_intensity", r.intensity.back()}};
    j["burst_e_fold"] = std::isfinite(r.burst_e_fold) ? json(r.burst_e_fold) : json(nullptr);
    if (r.plateau_detected) {
      j["plateau_begin"] = r.plateau_begin;
      j["plateau_end"] = r.plateau_end;
      j["plateau_value"] = r.plateau_value;
    }
    write_json(out.file("cascade_" + tag + ".json"), j);
    metrics[tag] = j;
  }
  out.summary.metrics["cascade"] = metrics;
}

void run_entropy(const Scenario& s, const RunOptions&, Output& out) {
  const LadderRates ladder = LadderRates::from(s.rates->resolve());
  const auto ind = entropy_vs_n(ladder, s.n_values, EntropyRegime::independent);
  const auto blk = entropy_vs_n(ladder, s.n_values, EntropyRegime::principal_block);
  CsvWriter csv(out.file("entropy.csv"), {"N", "S_independent", "S_principal"});
  for (std::size_t i = 0; i < ind.size(); ++i)
    csv.row({static_cast<double>(ind[i].first), ind[i].second, blk[i].second});
  out.summary.rows += csv.rows();
}

void run_contour(const Scenario& s, const RunOptions& opt, Output& out) {
  const ContourSpec& c = *s.contour;
  auto logspace = [](double lo, double hi, int n, int k) {
    return lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
  };
  const auto rows = parallel_map(static_cast<std::size_t>(c.alpha_points), opt.threads, [&](std::size_t a) {
    std::vector<std::vector<double>> block;
    const double alpha = logspace(c.alpha_min, c.alpha_max, c.alpha_points, static_cast<int>(a));
    for (int l = 0; l < c.L_points; ++l) {
      const double L = logspace(c.L_min, c.L_max, c.L_points, l);
      const double f = compute_f_ab(PhysicalConfig(c.omega0, alpha, L, 1.0, 2, UnitMode::si));
      const double frac = f < 1.0 ? fractional_prethermal_lifetime(f)
                                  : std::numeric_limits<double>::quiet_NaN();
      block.push_back({alpha, L, f, frac});
    }
    return block;
  });
  CsvWriter csv(out.file("contour.csv"), {"alpha", "L", "f_ab", "T_pre_frac"});
  double f_max = -1.0, f_min = 1.0;
  for (const auto& block : rows)
    for (const auto& r : block) {
      csv.row(r);
      f_max = std::max(f_max, r[2]);
      f_min = std::min(f_min, r[2]);
    }
  out.summary.rows += csv.rows();
  out.summary.metrics["f_ab_max"] = f_max;
  out.summary.metrics["f_ab_min"] = f_min;
}

void run_lifetime(const Scenario& s, const RunOptions& opt, Output& out) {
  const auto up_up = BlochState::from_observables(observables(dipolar_basis_state(DipolarState::up_up)));
  const auto rows = parallel_map(s.f_values.size(), opt.threads, [&](std::size_t i) {
    const double f = s.f_values[i];
    const RateSet rates = s.rates->resolve(f);
    const double total = rates.relaxation_rate();
    const double frac = fractional_prethermal_lifetime(f, total);
    const double t_pre = 1.0 / total;
    const double t_th = 1.0 / (total * (1.0 - f));
    return std::vector<double>{f, t_pre, t_th, frac, mz_plateau_departure(rates, up_up)};
  });
  CsvWriter csv(out.file("lifetime.csv"), {"f_ab", "T_pre", "T_th", "T_pre_frac", "mz_departure"});
  for (const auto& r : rows) csv.row(r);
  out.summary.rows += csv.rows();
}

}  // namespace

json RunSummary::to_json() const {
  return {{"scenario", scenario}, {"mode", mode},   {"directory", directory.string()},
          {"files", files},       {"rows", rows},   {"metrics", metrics},
          {"status", "ok"}};
}

fs::path output_root(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("UNRUH_PRETH_OUT"); env && *env) return env;
  return "out";
}

RunSummary run_scenario(const Scenario& s, const RunOptions& opt) {
  RunSummary summary;
  summary.scenario = s.name;
  summary.mode = to_string(s.mode);
  summary.directory = opt.out_dir / s.output_path;
  fs::create_directories(summary.directory);
  Output out{summary, summary.directory};
  switch (s.mode) {
    case Mode::spectrum: run_spectrum(s, opt, out); break;
    case Mode::evolve: run_evolve(s, opt, out); break;
    case Mode::steady: run_steady(s, opt, out); break;
    case Mode::dicke_scaling: run_dicke_scaling(s, opt, out); break;
    case Mode::cascade: run_cascade(s, opt, out); break;
    case Mode::entropy_scan: run_entropy(s, opt, out); break;
    case Mode::fab_contour: run_contour(s, opt, out); break;
    case Mode::lifetime: run_lifetime(s, opt, out); break;
  }
  return summary;
}

}  // namespace unruh::cli
