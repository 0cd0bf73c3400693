#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unruh/qcore.hpp"
#include "unruh/rates.hpp"

namespace unruh {

/// Reduced two-atom model on (M_z, M_zz, M_c), exact for states diagonal in
/// the dipolar basis {uu, dd, T0, S}.
struct BlochState {
  double mz = 0.0;
  double mzz = 0.0;
  double mc = 0.0;
  double tau = 0.0;

  Eigen::Vector3d vector() const { return {mz, mzz, mc}; }
  static BlochState from_vector(const Eigen::Vector3d& v, double tau = 0.0) {
    return {v(0), v(1), v(2), tau};
  }
  static BlochState from_observables(const ObservableSet& obs, double tau = 0.0) {
    return {obs.mz, obs.mzz, obs.mc, tau};
  }
};

/// Coefficients of the reduced system. The local pair is
/// A11 = g+ + g-, B11 = g+ - g-; the cross pair is scaled by f_ab.
struct BlochCoefficients {
  double a11, b11, a12, b12;
};
BlochCoefficients bloch_coefficients(const RateSet& rates);

/// d/dt (M_z, M_zz, M_c) = K M + b.
Eigen::Matrix3d bloch_matrix(const RateSet& rates);
Eigen::Vector3d bloch_drive(const RateSet& rates);
Eigen::Vector3d bloch_rhs(const BlochState& state, const RateSet& rates);

/// Density matrix I/4 + (M_z/4)(sz1 + sz2) + M_zz sz1 sz2
/// + (M_c/2)(sx1 sx2 + sy1 sy2). Throws InvariantViolation if the
/// observables do not describe a valid state.
DensityMatrix reconstruct_state(const BlochState& state);

struct SteadyState {
  BlochState observables;
  DensityMatrix rho;
};

/// Thermal fixed point (M0, M0^2/4, 0). Rejects f_ab = 1, where the fixed
/// point depends on the initial state.
SteadyState gibbs_steady(const RateSet& rates);

/// m2 = M_c(0), m3 = M_zz(0); only their sum enters.
struct GGEParameters {
  double m2 = 0.0;
  double m3 = 0.0;
  double m0 = 0.0;

  double sum() const { return m2 + m3; }
  /// Lagrange multiplier of the conserved spin correlation:
  /// ln((1 - 4s)/(3 + 4s) (1 + 2 cosh(2 atanh M0))). Signed infinity at the
  /// boundaries s = -3/4 and s = 1/4.
  double l1() const;
};

GGEParameters gge_parameters(const BlochState& initial, double m0);

/// Generalized Gibbs fixed point of the f = 1 dynamics. Throws
/// InvalidArgument unless -3/4 <= m2 + m3 <= 1/4 and |m0| < 1.
SteadyState gge_steady(const GGEParameters& params);

/// exp(x (sz1 + sz2) - (l1/4) s1.s2) / Z_g with x = atanh(M0). Only for
/// interior parameters (finite l1); throws InvalidArgument otherwise.
Eigen::Matrix4cd gge_exponential_form(const GGEParameters& params);

/// Exact trajectory at each time (ascending, >= 0). Uses the
/// eigendecomposition of the augmented 4x4 generator; falls back to
/// adaptive integration when its eigenbasis is ill-conditioned.
std::vector<BlochState> evolve_bloch(const RateSet& rates, const BlochState& initial,
                                     std::span<const double> times);

/// First time after the trajectory has come within `rel` of the f = 1
/// plateau value of M_z at which it leaves that band again. Located by a
/// log-grid scan up to t_max and refined by bisection. Returns NaN if the
/// trajectory never enters or never leaves the band.
double mz_plateau_departure(const RateSet& rates, const BlochState& initial,
                            double rel = 0.1, double t_max = 1e9);

}  // namespace unruh
