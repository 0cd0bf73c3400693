#include "unruh/rates.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"

namespace unruh {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct ThermalFactors {
  double tanh_value;
  double coth_value;
};

ThermalFactors thermal_factors(double argument) {
  if (argument > kThermalArgumentClamp) return {1.0, 1.0};
  const double t = std::tanh(argument);
  return {t, 1.0 / t};
}

}  // namespace

UnitMode parse_unit_mode(std::string_view text) {
  if (text == "natural") return UnitMode::natural;
  if (text == "SI" || text == "si") return UnitMode::si;
  throw InvalidArgument("unknown unit_mode '" + std::string(text) +
                        "' (expected natural or SI)");
}

std::string_view to_string(UnitMode mode) {
  return mode == UnitMode::natural ? "natural" : "SI";
}

PhysicalConfig::PhysicalConfig(double omega0, double alpha, double separation,
                               double coupling, int n_atoms,
                               UnitMode unit_mode)
    : omega0_(omega0),
      alpha_(alpha),
      separation_(separation),
      coupling_(coupling),
      n_atoms_(n_atoms),
      unit_mode_(unit_mode) {
  std::ostringstream why;
  if (!(std::isfinite(omega0) && omega0 > 0.0)) why << " omega0 must be > 0;";
  if (!(std::isfinite(alpha) && alpha > 0.0)) why << " alpha must be > 0;";
  if (!(std::isfinite(separation) && separation >= 0.0))
    why << " L must be >= 0;";
  if (!std::isfinite(coupling)) why << " lambda must be finite;";
  if (n_atoms < 1) why << " n_atoms must be >= 1;";
  if (!why.str().empty()) throw InvalidArgument("PhysicalConfig:" + why.str());
}

double PhysicalConfig::thermal_argument() const {
  const double c = unit_mode_ == UnitMode::si ? si::kSpeedOfLight : 1.0;
  return kPi * omega0_ * c / alpha_;
}

void RateSet::check_invariants(double tol) const {
  std::ostringstream why;
  if (gamma_plus < 0.0 || gamma_minus < 0.0) why << " negative rate;";
  if (!close_rel(gamma_plus + gamma_minus, B_local, tol))
    why << " gamma_+ + gamma_- != B_local;";
  if (!(B_local > 0.0)) why << " B_local must be > 0;";
  if (std::abs(A_local) < B_local * (1.0 - tol)) why << " |A_local| < B_local;";
  if (std::abs(f_ab) > 1.0 + tol) why << " |f_ab| > 1;";
  if (!close_rel(A_cross, f_ab * A_local, tol)) why << " A_cross != f A_local;";
  if (!close_rel(B_cross, f_ab * B_local, tol)) why << " B_cross != f B_local;";
  const double m0 = (gamma_plus - gamma_minus) / (gamma_plus + gamma_minus);
  if (!close_rel(M0, m0, tol)) why << " M0 inconsistent with gamma_+-;";
  if (!why.str().empty()) throw InvariantViolation("RateSet:" + why.str());
}

RateSet RateSet::with_f(double f) const {
  RateSet out = *this;
  out.f_ab = f;
  out.A_cross = f * A_local;
  out.B_cross = f * B_local;
  return out;
}

double f_ab_from_groups(double x, double y) {
  if (x == 0.0) return 1.0;
  const double denom = 2.0 * x * y * std::sqrt(1.0 + x * x);
  if (denom == 0.0) return 1.0;
  return std::sin(2.0 * y * std::asinh(x)) / denom;
}

double compute_f_ab(const PhysicalConfig& config) {
  const double L = config.separation();
  if (L == 0.0) return 1.0;
  const double w = config.omega0();
  const double a = config.alpha();
  if (config.unit_mode() == UnitMode::natural) {
    const double num = std::sin(2.0 * (w / a) * std::asinh(a * L / 2.0));
    return num / (L * w * std::sqrt(1.0 + L * L * a * a / 4.0));
  }
  const double c = si::kSpeedOfLight;
  const double x = a * L / (2.0 * c * c);
  const double y = w * c / a;
  const double num = std::sin(2.0 * y * std::asinh(x));
  return num / ((L * w / c) * std::sqrt(1.0 + x * x));
}

RateSet compute_rates(const PhysicalConfig& config) {
  const double lambda = config.coupling();
  const double b = lambda * lambda * config.omega0() / (8.0 * kPi);
  if (!(b > 0.0)) throw InvalidArgument("compute_rates: coupling must be nonzero");
  const auto [th, cth] = thermal_factors(config.thermal_argument());
  const double f = compute_f_ab(config);

  RateSet r;
  r.B_local = b;
  r.A_local = b * cth;
  r.gamma_plus = b * (1.0 + th) / 2.0;
  r.gamma_minus = b * (1.0 - th) / 2.0;
  r.f_ab = f;
  r.A_cross = f * r.A_local;
  r.B_cross = f * r.B_local;
  r.M0 = th;
  r.check_invariants(1e-10);
  return r;
}

RateSet rates_from_gammas(double gamma_plus, double gamma_minus, double f_ab) {
  if (!(std::isfinite(gamma_plus) && std::isfinite(gamma_minus)) ||
      gamma_plus < 0.0 || gamma_minus < 0.0)
    throw InvalidArgument("rates_from_gammas: rates must be finite and >= 0");
  if (gamma_plus == gamma_minus)
    throw InvalidArgument(
        "rates_from_gammas: gamma_plus == gamma_minus (infinite temperature, "
        "A_local diverges)");
  if (!(f_ab >= 0.0 && f_ab <= 1.0))
    throw InvalidArgument("rates_from_gammas: f_ab must lie in [0, 1]");

  RateSet r;
  r.gamma_plus = gamma_plus;
  r.gamma_minus = gamma_minus;
  r.B_local = gamma_plus + gamma_minus;
  r.M0 = (gamma_plus - gamma_minus) / r.B_local;
  r.A_local = r.B_local / r.M0;
  r.f_ab = f_ab;
  r.A_cross = f_ab * r.A_local;
  r.B_cross = f_ab * r.B_local;
  r.check_invariants();
  return r;
}

double unruh_temperature(double alpha_si) {
  if (!(alpha_si >= 0.0) || !std::isfinite(alpha_si))
    throw InvalidArgument("unruh_temperature: alpha must be finite and >= 0");
  return si::kReducedPlanck * alpha_si /
         (2.0 * kPi * si::kSpeedOfLight * si::kBoltzmann);
}

double fractional_prethermal_lifetime(double f_ab, double total_rate) {
  if (!(f_ab >= -1.0 && f_ab < 1.0))
    throw InvalidArgument(
        "fractional_prethermal_lifetime: f_ab must lie in [-1, 1) "
        "(T_th diverges at f_ab = 1)");
  if (!(total_rate > 0.0))
    throw InvalidArgument("fractional_prethermal_lifetime: rate must be > 0");
  const double t_th = 1.0 / (total_rate * (1.0 - f_ab));
  const double t_pre = 1.0 / total_rate;
  const double frac = (t_th - t_pre) / t_th;
  if (std::abs(frac - f_ab) > 1e-12)
    throw InvariantViolation("fractional_prethermal_lifetime: identity with f_ab broken");
  return frac;
}

}  // namespace unruh
