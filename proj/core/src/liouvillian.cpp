#include "unruh/liouvillian.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>
#include <string>

#include "ode.hpp"
#include "unruh/error.hpp"
#include "unruh/spin_ops.hpp"

namespace unruh {

namespace {

using cd = std::complex<double>;

int flip(int index, int atom, int n_atoms) {
  return index ^ (1 << (n_atoms - 1 - atom));
}

Eigen::MatrixXd sector_block(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  return m(idx, idx);
}

struct SectorNullSpace {
  Eigen::MatrixXd right;  // columns span the right null space
  Eigen::MatrixXd left;   // columns span the left null space
};

SectorNullSpace null_space(const Eigen::MatrixXd& block, double threshold) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int k = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < threshold) ++k;
  return {svd.matrixV().rightCols(k), svd.matrixU().rightCols(k)};
}

}  // namespace

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw InvalidArgument("unvectorize: size mismatch");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::MatrixXcd sandwich_superoperator(const Eigen::MatrixXcd& left,
                                        const Eigen::MatrixXcd& right) {
  return kron(right.transpose(), left);
}

Superoperator::Superoperator(Eigen::MatrixXd m, RateSet rates, int n_atoms)
    : matrix_(std::move(m)), rates_(rates), n_atoms_(n_atoms) {
  const int d = hilbert_dim();
  sectors_.assign(2 * n_atoms_ + 1, {});
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const int q = count_up(i, n_atoms_) - count_up(j, n_atoms_);
      sectors_[q + n_atoms_].push_back(i + d * j);
    }
}

double Superoperator::trace_preservation_defect() const {
  const int d = hilbert_dim();
  Eigen::RowVectorXd sums = Eigen::RowVectorXd::Zero(matrix_.cols());
  for (int i = 0; i < d; ++i) sums += matrix_.row(i + d * i);
  return sums.cwiseAbs().maxCoeff();
}

Superoperator build_lindbladian(const RateSet& rates, int n_atoms) {
  if (n_atoms < 1 || n_atoms > kMaxDenseAtoms)
    throw InvalidArgument("build_lindbladian: n_atoms must lie in 1.." +
                          std::to_string(kMaxDenseAtoms));
  if (std::abs(rates.f_ab) > 1.0 ||
      (n_atoms > 1 && rates.f_ab < -1.0 / (n_atoms - 1)))
    throw InvalidArgument(
        "build_lindbladian: f_ab outside the range where the Kossakowski "
        "matrix is positive");
  if (rates.gamma_plus < 0.0 || rates.gamma_minus < 0.0)
    throw InvalidArgument("build_lindbladian: negative transition rate");

  const int n = n_atoms;
  const int d = 1 << n;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d) * d,
                                            static_cast<Eigen::Index>(d) * d);
  auto up = [n](int idx, int a) { return atom_is_up(idx, a, n); };

  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const int col = i + d * j;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const double g = rates.pair_factor(a, b);
          const double gp = rates.gamma_plus * g;
          const double gm = rates.gamma_minus * g;

          // s+^a |i><j| s-^b
          if (!up(i, a) && !up(j, b)) L(flip(i, a, n) + d * flip(j, b, n), col) += gp;
          // -1/2 s-^b s+^a |i><j|
          if (!up(i, a)) {
            const int k = flip(i, a, n);
            if (up(k, b)) L(flip(k, b, n) + d * j, col) -= 0.5 * gp;
          }
          // -1/2 |i><j| s-^b s+^a ; bra is (s-^a s+^b |j>)^dagger
          if (!up(j, b)) {
            const int k = flip(j, b, n);
            if (up(k, a)) L(i + d * flip(k, a, n), col) -= 0.5 * gp;
          }

          // s-^a |i><j| s+^b
          if (up(i, a) && up(j, b)) L(flip(i, a, n) + d * flip(j, b, n), col) += gm;
          // -1/2 s+^b s-^a |i><j|
          if (up(i, a)) {
            const int k = flip(i, a, n);
            if (!up(k, b)) L(flip(k, b, n) + d * j, col) -= 0.5 * gm;
          }
          // -1/2 |i><j| s+^b s-^a ; bra is (s+^a s-^b |j>)^dagger
          if (up(j, b)) {
            const int k = flip(j, b, n);
            if (!up(k, a)) L(i + d * flip(k, a, n), col) -= 0.5 * gm;
          }
        }
      }
    }
  }
  return Superoperator(std::move(L), rates, n_atoms);
}

SpectrumReport spectrum(const Superoperator& sop, double zero_tol) {
  SpectrumReport report;
  for (const auto& idx : sop.sectors()) {
    const Eigen::MatrixXd block = sector_block(sop.matrix(), idx);
    Eigen::EigenSolver<Eigen::MatrixXd> es(block, false);
    if (es.info() != Eigen::Success) {
      std::ostringstream os;
      os << "spectrum: eigensolver did not converge on a sector of size "
         << block.rows() << " (condition estimate "
         << detail::condition_number(block.cast<cd>()) << ")";
      throw NumericalFailure(os.str());
    }
    for (const auto& ev : es.eigenvalues()) report.eigenvalues.push_back(ev);
  }
  auto& evs = report.eigenvalues;
  std::sort(evs.begin(), evs.end(), [](const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });

  for (const auto& ev : evs) {
    report.spectral_radius = std::max(report.spectral_radius, std::abs(ev));
    report.max_abs_imag = std::max(report.max_abs_imag, std::abs(ev.imag()));
  }
  const double threshold = zero_tol * std::max(report.spectral_radius, 1e-300);

  std::vector<double> rates;
  for (const auto& ev : evs) {
    if (std::abs(ev) < threshold)
      ++report.zero_count;
    else
      rates.push_back(std::abs(ev.real()));
  }
  if (report.zero_count < 1)
    throw InvariantViolation("spectrum: no zero eigenvalue (generator not trace preserving?)");
  if (sop.n_atoms() == 2 && report.max_abs_imag > 1e-9) {
    std::ostringstream os;
    os << "spectrum: two-atom eigenvalues must be real, max |Im| = " << report.max_abs_imag;
    throw InvariantViolation(os.str());
  }

  std::sort(rates.begin(), rates.end());
  report.adr = rates.empty() ? 0.0 : rates.front();
  // Consecutive distinct rates; "distinct" is relative to the radius.
  const double same = 1e-9 * std::max(report.spectral_radius, 1e-300);
  for (std::size_t k = 1; k < rates.size(); ++k) {
    if (rates[k] - rates[k - 1] <= same || rates[k - 1] <= 0.0) continue;
    report.gap_to_slow_cluster = std::max(report.gap_to_slow_cluster, rates[k] / rates[k - 1]);
  }
  return report;
}

std::vector<DensityMatrix> steady_states(const Superoperator& sop, double zero_tol) {
  const SpectrumReport spec = spectrum(sop, zero_tol);
  const double threshold = zero_tol * std::max(spec.spectral_radius, 1e-300);
  const int d = sop.hilbert_dim();
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;

  struct Projector {
    const std::vector<int>* indices;
    Eigen::MatrixXd right;
    Eigen::MatrixXd coupling;  // (L^T R)^{-1} L^T
  };
  std::vector<Projector> projectors;
  int null_dim = 0;
  for (const auto& idx : sop.sectors()) {
    const SectorNullSpace ns = null_space(sector_block(sop.matrix(), idx), threshold);
    if (ns.right.cols() == 0) continue;
    if (ns.right.cols() != ns.left.cols())
      throw NumericalFailure("steady_states: left/right null space size mismatch");
    null_dim += static_cast<int>(ns.right.cols());
    const Eigen::MatrixXd overlap = ns.left.transpose() * ns.right;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(overlap);
    if (!lu.isInvertible())
      throw NumericalFailure("steady_states: zero eigenvalue is not semisimple");
    projectors.push_back({&idx, ns.right, lu.solve(ns.left.transpose())});
  }
  if (null_dim != spec.zero_count) {
    std::ostringstream os;
    os << "steady_states: null-space dimension " << null_dim << " != zero_count "
       << spec.zero_count << "; zero_tol is misconfigured";
    throw InvariantViolation(os.str());
  }

  auto project = [&](const Eigen::VectorXcd& x) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dd);
    for (const auto& p : projectors) {
      const Eigen::VectorXcd xs = x(*p.indices);
      out(*p.indices) = p.right.cast<cd>() * (p.coupling.cast<cd>() * xs);
    }
    return out;
  };

  const StateTolerance tol{1e-9, 1e-9, -1e-9};
  auto to_state = [&](const Eigen::VectorXcd& v) {
    Eigen::MatrixXcd m = unvectorize(v, d);
    m = 0.5 * (m + m.adjoint());
    const cd tr = m.trace();
    if (std::abs(tr) < 1e-12)
      throw NumericalFailure("steady_states: fixed point with vanishing trace");
    return DensityMatrix(m / tr.real(), tol);
  };

  std::vector<DensityMatrix> out;
  if (null_dim == 1) {
    const auto& p = projectors.front();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dd);
    v(*p.indices) = p.right.col(0).cast<cd>();
    out.push_back(to_state(v));
    return out;
  }

  // Degenerate case: images of probe states. Probes cover a basis of all
  // Hermitian matrices, so their images span the whole fixed-point space.
  std::vector<Eigen::VectorXcd> basis;
  auto consider = [&](const Eigen::VectorXcd& psi) {
    const Eigen::VectorXcd image = project(vectorize(psi * psi.adjoint()));
    Eigen::VectorXcd r = image;
    for (const auto& b : basis) r -= b.dot(r) * b;
    if (r.norm() <= 1e-6 * std::max(image.norm(), 1e-300)) return;
    basis.push_back(r.normalized());
    out.push_back(to_state(image));
  };
  for (int i = 0; i < d && static_cast<int>(out.size()) < null_dim; ++i) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi(i) = 1.0;
    consider(psi);
  }
  for (int i = 0; i < d && static_cast<int>(out.size()) < null_dim; ++i) {
    for (int j = i + 1; j < d && static_cast<int>(out.size()) < null_dim; ++j) {
      for (cd phase : {cd(1.0, 0.0), cd(0.0, 1.0)}) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
        psi(i) = 1.0 / std::sqrt(2.0);
        psi(j) = phase / std::sqrt(2.0);
        consider(psi);
      }
    }
  }
  if (static_cast<int>(out.size()) != null_dim)
    throw NumericalFailure("steady_states: probe images do not span the null space");
  return out;
}

DensePropagator::DensePropagator(const Superoperator& sop) : n_atoms_(sop.n_atoms()) {
  for (const auto& idx : sop.sectors()) {
    Sector s;
    s.indices = idx;
    s.block = sector_block(sop.matrix(), idx);
    Eigen::EigenSolver<Eigen::MatrixXd> es(s.block, true);
    if (es.info() == Eigen::Success) {
      s.eigenvalues = es.eigenvalues();
      s.eigenvectors = es.eigenvectors();
      s.condition = detail::condition_number(s.eigenvectors);
    } else {
      s.condition = std::numeric_limits<double>::infinity();
    }
    s.stepping = !(s.condition <= kMaxCondition);
    if (!s.stepping) s.lu.compute(s.eigenvectors);
    sectors_.push_back(std::move(s));
  }
}

int DensePropagator::stepping_sectors() const {
  return static_cast<int>(std::count_if(sectors_.begin(), sectors_.end(),
                                        [](const Sector& s) { return s.stepping; }));
}

double DensePropagator::worst_condition() const {
  double worst = 1.0;
  for (const auto& s : sectors_) worst = std::max(worst, s.condition);
  return worst;
}

std::vector<DensityMatrix> DensePropagator::evolve(const DensityMatrix& rho0,
                                                   std::span<const double> times) const {
  detail::require_sorted_times(times, "evolve_dense");
  const int d = 1 << n_atoms_;
  if (rho0.dim() != d) throw InvalidArgument("evolve_dense: state dimension mismatch");

  const Eigen::VectorXcd x0 = vectorize(rho0.matrix());
  std::vector<Eigen::VectorXcd> xs(times.size(),
                                   Eigen::VectorXcd::Zero(x0.size()));
  for (const auto& s : sectors_) {
    const Eigen::VectorXcd x0s = x0(s.indices);
    if (x0s.cwiseAbs().maxCoeff() == 0.0) continue;
    if (!s.stepping) {
      const Eigen::VectorXcd c = s.lu.solve(x0s);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const Eigen::VectorXcd decay =
            (s.eigenvalues * times[k]).array().exp().matrix().cwiseProduct(c);
        xs[k](s.indices) = s.eigenvectors * decay;
      }
    } else {
      const Eigen::VectorXd zero = Eigen::VectorXd::Zero(s.block.rows());
      const auto re = detail::integrate_linear(s.block, zero, x0s.real(), times);
      const auto im = detail::integrate_linear(s.block, zero, x0s.imag(), times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        Eigen::VectorXcd v(re[k].size());
        v.real() = re[k];
        v.imag() = im[k];
        xs[k](s.indices) = v;
      }
    }
  }

  constexpr double kAbort = 1e-8;
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    Eigen::MatrixXcd m = unvectorize(xs[k], d);
    const StateDefects def = state_defects(m);
    if (def.hermiticity > kAbort || def.trace > kAbort || def.min_eigenvalue < -kAbort) {
      std::ostringstream os;
      os << "evolve_dense: invariant violated at t = " << times[k]
         << " (hermiticity " << def.hermiticity << ", trace error " << def.trace
         << ", min eigenvalue " << def.min_eigenvalue << ", eigenbasis condition "
         << worst_condition() << ")";
      throw InvariantViolation(os.str());
    }
    m = 0.5 * (m + m.adjoint());
    out.emplace_back(std::move(m), StateTolerance{kAbort, kAbort, -kAbort});
  }
  return out;
}

std::vector<DensityMatrix> evolve_dense(const Superoperator& sop,
                                        const DensityMatrix& rho0,
                                        std::span<const double> times) {
  return DensePropagator(sop).evolve(rho0, times);
}

}  // namespace unruh
