#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace unruh::detail {

/// Integrates dx/dt = A x + b with an embedded Dormand-Prince 5(4) pair and
/// dense output, returning x at every requested time (ascending, >= 0).
std::vector<Eigen::VectorXd> integrate_linear(const Eigen::MatrixXd& a,
                                              const Eigen::VectorXd& b,
                                              const Eigen::VectorXd& x0,
                                              std::span<const double> times,
                                              double rel_tol = 1e-9,
                                              double abs_tol = 1e-12);

/// Largest / smallest singular value.
double condition_number(const Eigen::MatrixXcd& m);

void require_sorted_times(std::span<const double> times, const char* who);

}  // namespace unruh::detail
