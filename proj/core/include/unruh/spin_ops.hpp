#pragma once

#include <Eigen/Dense>

namespace unruh {

// Basis convention for N atoms: |s_1 s_2 ... s_N>, lexicographic with up
// before down, atom 0 most significant. Bit (N-1-a) of a basis index is 1
// when atom a is down, so index 0 is |up...up>.

inline int hilbert_dim(int n_atoms) { return 1 << n_atoms; }

inline bool atom_is_up(int index, int atom, int n_atoms) {
  return ((index >> (n_atoms - 1 - atom)) & 1) == 0;
}

/// Number of up spins in basis state `index`.
int count_up(int index, int n_atoms);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

enum class Axis { x, y, z };

/// sigma_axis acting on `atom` of an n-atom register.
Eigen::MatrixXcd pauli(Axis axis, int atom, int n_atoms);
/// |up><down| on `atom`.
Eigen::MatrixXcd sigma_plus(int atom, int n_atoms);
/// |down><up| on `atom`.
Eigen::MatrixXcd sigma_minus(int atom, int n_atoms);

/// J_- = sum_a sigma_-^a (spin-1/2 convention, J = sum sigma / 2).
Eigen::MatrixXcd collective_lowering(int n_atoms);
/// J_+ J_-, the radiated-intensity operator.
Eigen::MatrixXcd intensity_operator(int n_atoms);
/// J^2 = Jx^2 + Jy^2 + Jz^2 with J = sum sigma / 2.
Eigen::MatrixXcd total_spin_squared(int n_atoms);

}  // namespace unruh
