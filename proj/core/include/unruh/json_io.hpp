#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "unruh/fit.hpp"
#include "unruh/liouvillian.hpp"
#include "unruh/qcore.hpp"
#include "unruh/rates.hpp"

namespace unruh {

/// Either a physical configuration or transition rates given directly.
///
/// JSON: {"omega0", "alpha", "L", "lambda", "n_atoms", "unit_mode"} or
/// {"gamma_plus", "gamma_minus", "f_ab" (optional, default 0), "n_atoms"}.
struct RateSpec {
  std::optional<PhysicalConfig> physical;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double f_ab = 0.0;
  int n_atoms = 2;

  RateSet resolve() const;
  /// Same rates with the cross factor replaced.
  RateSet resolve(double f_ab_override) const;
};

RateSpec rate_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RateSpec& spec);

/// {"dim": d, "entries": [[re, im], ...]} in row-major order.
nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);

/// {"eigenvalues": [[re, im], ...], "zero_count": n, "adr": x}.
nlohmann::json to_json(const SpectrumReport& report);

/// {"slope", "intercept", "r_squared", "n_points"}.
nlohmann::json to_json(const PowerLawFit& fit);

}  // namespace unruh
