#include "unruh/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "unruh/error.hpp"
#include "unruh/spin_ops.hpp"

namespace unruh {

namespace {

constexpr double kClip = 1e-12;

double expectation(const Eigen::MatrixXcd& op, const Eigen::MatrixXcd& rho) {
  return (op * rho).trace().real();
}

void require_two_atoms(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4)
    throw InvalidArgument(std::string(what) + ": requires a two-atom state (dim 4), got dim " +
                          std::to_string(rho.dim()));
}

}  // namespace

StateDefects state_defects(const Eigen::MatrixXcd& m) {
  StateDefects d{};
  d.hermiticity = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix, StateTolerance tol)
    : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2 ||
      !std::has_single_bit(static_cast<unsigned>(m_.rows())))
    throw InvalidArgument("DensityMatrix: dimension must be a power of two >= 2");
  if (!m_.allFinite()) throw InvariantViolation("DensityMatrix: non-finite entries");
  const StateDefects d = state_defects(m_);
  if (d.hermiticity > tol.hermiticity || d.trace > tol.trace ||
      d.min_eigenvalue < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "DensityMatrix: invariant violated (hermiticity " << d.hermiticity
       << ", trace error " << d.trace << ", min eigenvalue " << d.min_eigenvalue
       << ")";
    throw InvariantViolation(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidArgument("DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_atoms) {
  const int d = hilbert_dim(n_atoms);
  return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

int DensityMatrix::n_atoms() const {
  return std::countr_zero(static_cast<unsigned>(m_.rows()));
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  return DensityMatrix(kron(m_, other.m_));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ObservableSet observables(const DensityMatrix& rho) {
  require_two_atoms(rho, "observables");
  const Eigen::MatrixXcd& r = rho.matrix();
  const Eigen::MatrixXcd s[3] = {pauli(Axis::x, 0, 2), pauli(Axis::y, 0, 2),
                                 pauli(Axis::z, 0, 2)};
  const Eigen::MatrixXcd t[3] = {pauli(Axis::x, 1, 2), pauli(Axis::y, 1, 2),
                                 pauli(Axis::z, 1, 2)};
  auto single = [&](int i) { return 0.5 * expectation(s[i] + t[i], r); };
  auto same = [&](int i) { return 0.25 * expectation(s[i] * t[i], r); };
  auto mixed = [&](int i, int j) {
    return 0.25 * expectation(s[i] * t[j] + s[j] * t[i], r);
  };
  ObservableSet o;
  o.mx = single(0);
  o.my = single(1);
  o.mz = single(2);
  o.mxx = same(0);
  o.myy = same(1);
  o.mzz = same(2);
  o.mxy = mixed(0, 1);
  o.mxz = mixed(0, 2);
  o.myz = mixed(1, 2);
  o.mc = o.mxx + o.myy;
  return o;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double shannon_entropy(const Eigen::VectorXd& probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > kClip) s -= p * std::log(p);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return shannon_entropy(rho.eigenvalues());
}

double concurrence_wootters(const DensityMatrix& rho) {
  require_two_atoms(rho, "concurrence_wootters");
  // With rho = F F^dagger, the eigenvalues of rho (sy sy) rho* (sy sy) are the
  // squared singular values of F^T (sy sy) F. Working with F keeps rounding
  // noise in rank-deficient states at O(eps) instead of O(sqrt(eps)).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  if (es.info() != Eigen::Success)
    throw NumericalFailure("concurrence_wootters: eigensolver failed");
  const Eigen::VectorXd p = es.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXcd factor = es.eigenvectors() * p.cwiseSqrt().asDiagonal();
  const Eigen::MatrixXcd yy = pauli(Axis::y, 0, 2) * pauli(Axis::y, 1, 2);
  const Eigen::MatrixXcd tau = factor.transpose() * yy * factor;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
  std::vector<double> lambdas(svd.singularValues().begin(), svd.singularValues().end());
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

ObservableConcurrence concurrence_observable(const ObservableSet& obs) {
  const double a = 1.0 + 4.0 * obs.mzz;
  const double radicand = a * a - 4.0 * obs.mz * obs.mz;
  ObservableConcurrence out;
  out.radicand_negative = radicand < 0.0;
  const double root = out.radicand_negative ? 0.0 : std::sqrt(radicand);
  out.value = std::max(0.0, 2.0 * std::abs(obs.mc) - 0.5 * root);
  return out;
}

DipolarState parse_dipolar_label(std::string_view label) {
  if (label == "up_up") return DipolarState::up_up;
  if (label == "down_down") return DipolarState::down_down;
  if (label == "triplet0") return DipolarState::triplet0;
  if (label == "singlet") return DipolarState::singlet;
  throw InvalidArgument("unknown dipolar label '" + std::string(label) + "'");
}

std::string_view to_string(DipolarState state) {
  switch (state) {
    case DipolarState::up_up:
      return "up_up";
    case DipolarState::down_down:
      return "down_down";
    case DipolarState::triplet0:
      return "triplet0";
    case DipolarState::singlet:
      return "singlet";
  }
  return "?";
}

DensityMatrix dipolar_basis_state(DipolarState label) {
  // Index order: |uu>, |ud>, |du>, |dd>.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case DipolarState::up_up:
      psi(0) = 1.0;
      break;
    case DipolarState::down_down:
      psi(3) = 1.0;
      break;
    case DipolarState::triplet0:
      psi(1) = h;
      psi(2) = h;
      break;
    case DipolarState::singlet:
      psi(1) = h;
      psi(2) = -h;
      break;
  }
  return DensityMatrix::pure(psi);
}

DensityMatrix product_state(std::string_view pattern) {
  if (pattern.empty() || pattern.size() > 16)
    throw InvalidArgument("product_state: pattern must have 1..16 characters");
  const int n = static_cast<int>(pattern.size());
  int index = 0;
  for (char ch : pattern) {
    if (ch != 'u' && ch != 'd')
      throw InvalidArgument("product_state: pattern characters must be 'u' or 'd'");
    index = (index << 1) | (ch == 'd' ? 1 : 0);
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(hilbert_dim(n));
  psi(index) = 1.0;
  return DensityMatrix::pure(psi);
}

DensityMatrix all_up_state(int n_atoms) {
  if (n_atoms < 1 || n_atoms > 16)
    throw InvalidArgument("all_up_state: n_atoms out of range");
  return product_state(std::string(static_cast<std::size_t>(n_atoms), 'u'));
}

}  // namespace unruh
