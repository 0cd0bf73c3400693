#include "unruh/spin_ops.hpp"

#include <bit>
#include <complex>

#include "unruh/error.hpp"

namespace unruh {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd single_pauli(Axis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case Axis::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Axis::y:
      m << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
      break;
    case Axis::z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

Eigen::MatrixXcd embed(const Eigen::Matrix2cd& local, int atom, int n_atoms) {
  if (atom < 0 || atom >= n_atoms)
    throw InvalidArgument("spin operator: atom index out of range");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int a = 0; a < n_atoms; ++a) {
    if (a == atom)
      out = kron(out, local);
    else
      out = kron(out, Eigen::Matrix2cd::Identity());
  }
  return out;
}

}  // namespace

int count_up(int index, int n_atoms) {
  return n_atoms - std::popcount(static_cast<unsigned>(index));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd pauli(Axis axis, int atom, int n_atoms) {
  return embed(single_pauli(axis), atom, n_atoms);
}

Eigen::MatrixXcd sigma_plus(int atom, int n_atoms) {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 0.0, 0.0;
  return embed(m, atom, n_atoms);
}

Eigen::MatrixXcd sigma_minus(int atom, int n_atoms) {
  Eigen::Matrix2cd m;
  m << 0.0, 0.0, 1.0, 0.0;
  return embed(m, atom, n_atoms);
}

Eigen::MatrixXcd collective_lowering(int n_atoms) {
  const int d = hilbert_dim(n_atoms);
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < n_atoms; ++a) j += sigma_minus(a, n_atoms);
  return j;
}

Eigen::MatrixXcd intensity_operator(int n_atoms) {
  const Eigen::MatrixXcd jm = collective_lowering(n_atoms);
  return jm.adjoint() * jm;
}

Eigen::MatrixXcd total_spin_squared(int n_atoms) {
  const int d = hilbert_dim(n_atoms);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d, d);
    for (int a = 0; a < n_atoms; ++a) j += 0.5 * pauli(axis, a, n_atoms);
    total += j * j;
  }
  return total;
}

}  // namespace unruh
