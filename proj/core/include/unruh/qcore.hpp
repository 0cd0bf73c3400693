#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace unruh {

/// Acceptance thresholds for DensityMatrix invariants.
struct StateTolerance {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
};

/// Hermitian, unit-trace, positive semidefinite state of N two-level atoms
/// in the tensor-product Zeeman basis (see spin_ops.hpp for ordering).
class DensityMatrix {
 public:
  /// Validates the invariants; throws InvariantViolation on failure.
  explicit DensityMatrix(Eigen::MatrixXcd matrix, StateTolerance tol = {});

  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(int n_atoms);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_atoms() const;
  const Eigen::MatrixXcd& matrix() const { return m_; }

  /// rho (x) other, this state's atoms first.
  DensityMatrix tensor(const DensityMatrix& other) const;

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Reports how far `m` is from being a valid state.
struct StateDefects {
  double hermiticity;     // max |m - m^dagger|
  double trace;           // |Tr m - 1|
  double min_eigenvalue;  // of the Hermitian part
};
StateDefects state_defects(const Eigen::MatrixXcd& m);

/// Two-atom observables. mz, my, mx are half the summed single-site Pauli
/// expectations; mii = <s_i s_i>/4; mij = <s_i s_j + s_j s_i>/4;
/// mc = mxx + myy.
struct ObservableSet {
  double mx = 0, my = 0, mz = 0;
  double mxx = 0, myy = 0, mzz = 0;
  double mxy = 0, mxz = 0, myz = 0;
  double mc = 0;
};

ObservableSet observables(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

/// -Tr rho ln rho in nats; eigenvalues below 1e-12 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of a probability vector, same clipping rule.
double shannon_entropy(const Eigen::VectorXd& probabilities);

/// max{0, l1 - l2 - l3 - l4}, l_i the decreasing square roots of the
/// eigenvalues of rho (sy x sy) rho* (sy x sy). Two atoms only.
double concurrence_wootters(const DensityMatrix& rho);

struct ObservableConcurrence {
  double value = 0.0;
  /// True when (1 + 4 mzz)^2 - 4 mz^2 < 0: the state is outside the sector
  /// where the observable form is valid, and the root was taken as 0.
  bool radicand_negative = false;
};

ObservableConcurrence concurrence_observable(const ObservableSet& obs);

enum class DipolarState { up_up, down_down, triplet0, singlet };

DipolarState parse_dipolar_label(std::string_view label);
std::string_view to_string(DipolarState state);

/// Two-atom dipolar-basis state as a pure density matrix.
DensityMatrix dipolar_basis_state(DipolarState label);

/// Product state from a pattern of 'u'/'d' characters, one per atom
/// (e.g. "ud" is |up down>).
DensityMatrix product_state(std::string_view pattern);

/// |up ... up>.
DensityMatrix all_up_state(int n_atoms);

}  // namespace unruh
