#pragma once

#include <string_view>

namespace unruh {

enum class UnitMode { natural, si };

UnitMode parse_unit_mode(std::string_view text);
std::string_view to_string(UnitMode mode);

/// Physical parameters of N identical atoms on parallel hyperbolic
/// trajectories. In natural mode c = hbar = 1; in SI mode omega0 is in
/// rad/s, alpha in m/s^2 and the separation in m.
class PhysicalConfig {
 public:
  /// Throws InvalidArgument unless omega0 > 0, alpha > 0, separation >= 0,
  /// n_atoms >= 1 and all values are finite.
  PhysicalConfig(double omega0, double alpha, double separation,
                 double coupling, int n_atoms,
                 UnitMode unit_mode = UnitMode::natural);

  double omega0() const { return omega0_; }
  double alpha() const { return alpha_; }
  double separation() const { return separation_; }
  double coupling() const { return coupling_; }
  int n_atoms() const { return n_atoms_; }
  UnitMode unit_mode() const { return unit_mode_; }

  /// pi * omega0 / alpha, with c restored in SI mode. tanh of this is the
  /// equilibrium magnetization.
  double thermal_argument() const;

 private:
  double omega0_;
  double alpha_;
  double separation_;
  double coupling_;
  int n_atoms_;
  UnitMode unit_mode_;
};

/// Dissipator coefficients for the accelerated-atom master equation.
///
/// gamma_plus multiplies the sigma_+ rho sigma_- channel and gamma_minus
/// the sigma_- rho sigma_+ channel. A_local/B_local are the Kossakowski
/// coefficients of one atom, A_cross/B_cross those of a distinct pair.
struct RateSet {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double A_local = 0.0;
  double B_local = 0.0;
  double A_cross = 0.0;
  double B_cross = 0.0;
  double f_ab = 0.0;
  double M0 = 0.0;

  /// gamma_+ + gamma_-: population relaxation rate of a single atom.
  double relaxation_rate() const { return gamma_plus + gamma_minus; }
  /// gamma_+ - gamma_-: inhomogeneous drive of the magnetization.
  double drive_rate() const { return gamma_plus - gamma_minus; }
  /// Cross-dissipation factor for atoms a and b (1 on the diagonal).
  double pair_factor(int a, int b) const { return a == b ? 1.0 : f_ab; }

  /// Throws InvariantViolation when the stored coefficients are not
  /// mutually consistent to `tol` (relative).
  void check_invariants(double tol = 1e-12) const;

  /// Copy with a different cross factor; cross coefficients are rescaled.
  RateSet with_f(double f) const;
};

/// Cross-atom factor f_ab of the vacuum response along the trajectories.
/// Exactly 1 for L = 0. The value oscillates in L and may be negative;
/// |f_ab| <= 1 always.
double compute_f_ab(const PhysicalConfig& config);

/// f_ab in terms of the dimensionless groups x = alpha L / 2 (c = 1) and
/// y = omega0 / alpha. Exactly 1 for x = 0.
double f_ab_from_groups(double x, double y);

RateSet compute_rates(const PhysicalConfig& config);

/// Builds a RateSet from transition rates directly. Requires
/// gamma_plus, gamma_minus >= 0, gamma_plus != gamma_minus and
/// 0 <= f_ab <= 1. M0 is negative when gamma_minus dominates.
RateSet rates_from_gammas(double gamma_plus, double gamma_minus, double f_ab);

/// Unruh temperature in kelvin for a proper acceleration in m/s^2.
double unruh_temperature(double alpha_si);

/// (T_th - T_pre) / T_th with T_th = 1/((g+ + g-)(1 - f)) and
/// T_pre = 1/(g+ + g-). The result equals f_ab; the identity is checked to
/// 1e-12. Throws InvalidArgument for f_ab outside [-1, 1).
double fractional_prethermal_lifetime(double f_ab, double total_rate = 1.0);

}  // namespace unruh
