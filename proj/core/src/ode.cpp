#include "ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include "unruh/error.hpp"

namespace unruh::detail {

namespace odeint = boost::numeric::odeint;

std::vector<Eigen::VectorXd> integrate_linear(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              const Eigen::VectorXd& x0,
                                              std::span<const double> times,
                                              double rel_tol, double abs_tol) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(times.size());
  if (times.empty()) return out;

  using State = Eigen::VectorXd;
  using Stepper = odeint::runge_kutta_dopri5<State, double, State, double,
                                             odeint::vector_space_algebra>;
  auto rhs = [&](const State& x, State& dxdt, double /*t*/) {
    dxdt.noalias() = a * x;
    dxdt += b;
  };

  State x = x0;
  double t = 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
  for (double target : times) {
    if (target > t) {
      const double dt0 = std::min(target - t, 1e-3 / scale);
      odeint::integrate_adaptive(
          odeint::make_controlled(abs_tol, rel_tol, Stepper()), rhs, x, t, target, dt0);
      t = target;
    }
    if (!x.allFinite()) throw NumericalFailure("integrate_linear: state diverged");
    out.push_back(x);
  }
  return out;
}

double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

void require_sorted_times(std::span<const double> times, const char* who) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || times[k] < 0.0)
      throw InvalidArgument(std::string(who) + ": times must be finite and >= 0");
    if (k > 0 && times[k] < times[k - 1])
      throw InvalidArgument(std::string(who) + ": times must be ascending");
  }
}

}  // namespace unruh::detail
