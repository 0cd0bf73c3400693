#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unruh/qcore.hpp"
#include "unruh/rates.hpp"

namespace unruh {

/// Largest register handled by the dense generator (4^6 x 4^6 entries).
inline constexpr int kMaxDenseAtoms = 6;

// Vectorization is column stacking: vec(rho)[i + d*j] = rho(i, j), so that
// vec(A rho B) = (B^T kron A) vec(rho).
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim);
/// Superoperator of rho -> left * rho * right.
Eigen::MatrixXcd sandwich_superoperator(const Eigen::MatrixXcd& left,
                                        const Eigen::MatrixXcd& right);

/// Vectorized generator of the N-atom dissipator
///
///   sum_{a,b} g+^{ab} (s+^a rho s-^b - 1/2 {s-^b s+^a, rho})
///           + g-^{ab} (s-^a rho s+^b - 1/2 {s+^b s-^a, rho}),
///
/// with g^{aa} = gamma and g^{ab} = f_ab gamma for a != b. There is no
/// Hamiltonian part, so the matrix is real in the Zeeman basis.
///
/// The generator conserves q = n_up(i) - n_up(j) of each |i><j|; sectors()
/// lists the vec indices of each q-sector (q = -N..N in order).
class Superoperator {
 public:
  int n_atoms() const { return n_atoms_; }
  int hilbert_dim() const { return 1 << n_atoms_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const RateSet& rates() const { return rates_; }
  const std::vector<std::vector<int>>& sectors() const { return sectors_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& vec_rho) const {
    return matrix_.cast<std::complex<double>>() * vec_rho;
  }

  /// max_col |sum_i L(ii, col)|: zero iff vec(I)^dagger is a left null vector.
  double trace_preservation_defect() const;

 private:
  friend Superoperator build_lindbladian(const RateSet& rates, int n_atoms);
  Superoperator(Eigen::MatrixXd m, RateSet rates, int n_atoms);

  Eigen::MatrixXd matrix_;
  RateSet rates_;
  int n_atoms_;
  std::vector<std::vector<int>> sectors_;
};

/// Throws InvalidArgument for n_atoms outside 1..kMaxDenseAtoms or when the
/// Kossakowski matrix (1-f) I + f 11^T is not positive (f < -1/(N-1)).
Superoperator build_lindbladian(const RateSet& rates, int n_atoms);

struct SpectrumReport {
  /// Sorted by descending real part, then descending imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  int zero_count = 0;
  /// Smallest |Re lambda| over eigenvalues not counted as zero.
  double adr = 0.0;
  /// Largest ratio between consecutive distinct nonzero decay rates.
  double gap_to_slow_cluster = 1.0;
  double spectral_radius = 0.0;
  double max_abs_imag = 0.0;
};

/// Full spectrum. `zero_tol` is relative to the spectral radius. For two
/// atoms the spectrum must be real to 1e-9 (InvariantViolation otherwise).
SpectrumReport spectrum(const Superoperator& sop, double zero_tol = 1e-10);

/// Fixed points. With a unique zero mode this is the steady state; with a
/// degenerate null space, a set of density matrices spanning it (images of
/// probe states under the projector onto the null space).
std::vector<DensityMatrix> steady_states(const Superoperator& sop,
                                         double zero_tol = 1e-10);

/// Exact propagator built from per-sector eigendecompositions. Sectors whose
/// eigenbasis has condition number above kMaxCondition are integrated
/// adaptively instead. Immutable after construction.
class DensePropagator {
 public:
  static constexpr double kMaxCondition = 1e10;

  explicit DensePropagator(const Superoperator& sop);

  /// rho(t) for each time; times ascending and >= 0. Every returned state is
  /// checked (trace, Hermiticity, positivity to 1e-8) and Hermitized.
  std::vector<DensityMatrix> evolve(const DensityMatrix& rho0,
                                    std::span<const double> times) const;

  /// Number of sectors that fell back to adaptive stepping.
  int stepping_sectors() const;
  double worst_condition() const;

 private:
  struct Sector {
    std::vector<int> indices;
    Eigen::MatrixXd block;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    double condition = 1.0;
    bool stepping = false;
  };

  int n_atoms_;
  std::vector<Sector> sectors_;
};

std::vector<DensityMatrix> evolve_dense(const Superoperator& sop,
                                        const DensityMatrix& rho0,
                                        std::span<const double> times);

}  // namespace unruh
