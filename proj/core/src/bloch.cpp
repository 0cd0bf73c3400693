#include "unruh/bloch.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ode.hpp"
#include "unruh/error.hpp"
#include "unruh/spin_ops.hpp"

namespace unruh {

namespace {

using cd = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix4cd two_atom(Axis axis) {
  return pauli(axis, 0, 2) * pauli(axis, 1, 2);
}

Eigen::Matrix4cd from_observables(double mz, double mzz, double mc) {
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  return 0.25 * id + (mz / 4.0) * (pauli(Axis::z, 0, 2) + pauli(Axis::z, 1, 2)) +
         mzz * two_atom(Axis::z) + (mc / 2.0) * (two_atom(Axis::x) + two_atom(Axis::y));
}

}  // namespace

BlochCoefficients bloch_coefficients(const RateSet& rates) {
  const double a11 = rates.relaxation_rate();
  const double b11 = rates.drive_rate();
  return {a11, b11, rates.f_ab * a11, rates.f_ab * b11};
}

Eigen::Matrix3d bloch_matrix(const RateSet& rates) {
  const auto c = bloch_coefficients(rates);
  Eigen::Matrix3d k;
  k << -c.a11, 0.0, 2.0 * c.b12,
       c.b11 / 2.0, -2.0 * c.a11, c.a12,
       -c.b12 / 2.0, 2.0 * c.a12, -c.a11;
  return k;
}

Eigen::Vector3d bloch_drive(const RateSet& rates) {
  return {rates.drive_rate(), 0.0, 0.0};
}

Eigen::Vector3d bloch_rhs(const BlochState& state, const RateSet& rates) {
  return bloch_matrix(rates) * state.vector() + bloch_drive(rates);
}

DensityMatrix reconstruct_state(const BlochState& s) {
  return DensityMatrix(from_observables(s.mz, s.mzz, s.mc));
}

SteadyState gibbs_steady(const RateSet& rates) {
  if (rates.f_ab >= 1.0)
    throw InvalidArgument("gibbs_steady: f_ab = 1 has no unique fixed point");
  const double m0 = rates.M0;
  const BlochState obs{m0, m0 * m0 / 4.0, 0.0, 0.0};
  return {obs, reconstruct_state(obs)};
}

double GGEParameters::l1() const {
  const double s = sum();
  if (s <= -0.75) return kInf;
  if (s >= 0.25) return -kInf;
  const double x = std::atanh(m0);
  return std::log((1.0 - 4.0 * s) / (3.0 + 4.0 * s) * (1.0 + 2.0 * std::cosh(2.0 * x)));
}

GGEParameters gge_parameters(const BlochState& initial, double m0) {
  return {initial.mc, initial.mzz, m0};
}

SteadyState gge_steady(const GGEParameters& p) {
  const double s = p.sum();
  constexpr double slack = 1e-12;
  if (!(s >= -0.75 - slack && s <= 0.25 + slack))
    throw InvalidArgument("gge_steady: M2 + M3 must lie in [-3/4, 1/4]");
  if (!(std::abs(p.m0) < 1.0))
    throw InvalidArgument("gge_steady: |M0| must be < 1");
  const double m02 = p.m0 * p.m0;
  BlochState obs;
  obs.mz = p.m0 * (3.0 + 4.0 * s) / (3.0 + m02);
  obs.mc = -(m02 - 4.0 * s) / (2.0 * (3.0 + m02));
  obs.mzz = s - obs.mc;
  return {obs, reconstruct_state(obs)};
}

Eigen::Matrix4cd gge_exponential_form(const GGEParameters& p) {
  const double l1 = p.l1();
  if (!std::isfinite(l1))
    throw InvalidArgument("gge_exponential_form: boundary parameters have no exponential form");
  const double x = std::atanh(p.m0);
  const Eigen::Matrix4cd sdots = two_atom(Axis::x) + two_atom(Axis::y) + two_atom(Axis::z);
  const Eigen::Matrix4cd h = x * (pauli(Axis::z, 0, 2) + pauli(Axis::z, 1, 2)) - (l1 / 4.0) * sdots;
  // h is Hermitian; exponentiate through its eigenbasis.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  const Eigen::Vector4d w = es.eigenvalues().array().exp();
  Eigen::Matrix4cd rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return rho / rho.trace().real();
}

std::vector<BlochState> evolve_bloch(const RateSet& rates, const BlochState& initial,
                                     std::span<const double> times) {
  detail::require_sorted_times(times, "evolve_bloch");
  Eigen::Matrix4d aug = Eigen::Matrix4d::Zero();
  aug.topLeftCorner<3, 3>() = bloch_matrix(rates);
  aug.topRightCorner<3, 1>() = bloch_drive(rates);
  Eigen::Vector4d x0;
  x0 << initial.vector(), 1.0;

  std::vector<BlochState> out;
  out.reserve(times.size());
  Eigen::EigenSolver<Eigen::Matrix4d> es(aug);
  const double cond = es.info() == Eigen::Success
                          ? detail::condition_number(es.eigenvectors())
                          : kInf;
  if (cond <= 1e10) {
    const Eigen::Matrix4cd v = es.eigenvectors();
    const Eigen::Vector4cd c = v.partialPivLu().solve(x0.cast<cd>());
    for (double t : times) {
      const Eigen::Vector4cd e = (es.eigenvalues() * t).array().exp();
      const Eigen::Vector4d x = (v * e.cwiseProduct(c)).real();
      out.push_back({x(0), x(1), x(2), t});
    }
    return out;
  }
  const auto xs = detail::integrate_linear(bloch_matrix(rates), bloch_drive(rates),
                                           initial.vector(), times);
  for (std::size_t k = 0; k < times.size(); ++k)
    out.push_back(BlochState::from_vector(xs[k], times[k]));
  return out;
}

double mz_plateau_departure(const RateSet& rates, const BlochState& initial,
                            double rel, double t_max) {
  if (!(rel > 0.0) || !(t_max > 0.0))
    throw InvalidArgument("mz_plateau_departure: rel and t_max must be positive");
  const double plateau = gge_steady(gge_parameters(initial, rates.M0)).observables.mz;
  const double band = rel * std::abs(plateau);
  auto outside = [&](double t) {
    const double ts[] = {t};
    return std::abs(evolve_bloch(rates, initial, ts).front().mz - plateau) > band;
  };

  constexpr int per_decade = 50;
  const double t_min = 1e-4;
  const int n = static_cast<int>(std::ceil(std::log10(t_max / t_min) * per_decade)) + 1;
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = t_min * std::pow(10.0, static_cast<double>(k) / per_decade);
  const auto traj = evolve_bloch(rates, initial, grid);

  bool entered = false;
  for (int k = 0; k < n; ++k) {
    const bool out_k = std::abs(traj[k].mz - plateau) > band;
    if (!entered) {
      entered = !out_k;
      continue;
    }
    if (out_k) {
      double lo = grid[k - 1], hi = grid[k];
      for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (outside(mid) ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace unruh
