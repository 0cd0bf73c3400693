#include "unruh/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "unruh/error.hpp"
#include "unruh/liouvillian.hpp"
#include "unruh/spin_ops.hpp"

namespace unruh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_rates(LadderRates r, const char* who) {
  if (!(r.up >= 0.0) || !(r.down >= 0.0) || !std::isfinite(r.up) || !std::isfinite(r.down))
    throw InvalidArgument(std::string(who) + ": ladder rates must be finite and >= 0");
}

void require_two_j(int two_j, const char* who) {
  if (two_j < 1) throw InvalidArgument(std::string(who) + ": J must be >= 1/2");
}

double up_rate(int two_j, int k, LadderRates r) {
  return r.up * static_cast<double>(two_j - k) * (k + 1);
}
double down_rate(int two_j, int k, LadderRates r) {
  return r.down * static_cast<double>(k) * (two_j - k + 1);
}

// Smallest nonzero decay rate of a birth-death generator given its upward
// rates up[k] (k -> k+1) and downward rates down[k] (k -> k-1). The chain is
// reversible, so it is similar to a symmetric tridiagonal matrix.
double birth_death_adr(const Eigen::VectorXd& up, const Eigen::VectorXd& down) {
  const Eigen::Index n = up.size();
  if (n < 2) throw InvalidArgument("birth_death_adr: need at least two levels");
  Eigen::VectorXd diag = -(up + down);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) sub(k) = std::sqrt(up(k) * down(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("birth_death_adr: tridiagonal eigensolver failed");
  // Ascending order; the last eigenvalue is the stationary zero mode.
  const double rate = -es.eigenvalues()(n - 2);
  if (!(rate > 0.0)) throw NumericalFailure("birth_death_adr: no positive decay rate");
  return rate;
}

// p(t + h) by the Poisson-weighted series of (I + Q/lambda)^k.
void uniformized_step(const Eigen::MatrixXd& q, double lambda, double h, Eigen::VectorXd& p) {
  const double x = lambda * h;
  if (x == 0.0) return;
  const Eigen::MatrixXd step = Eigen::MatrixXd::Identity(q.rows(), q.cols()) + q / lambda;
  Eigen::VectorXd term = p;
  double w = std::exp(-x);
  Eigen::VectorXd acc = w * term;
  for (int k = 1;; ++k) {
    term = step * term;
    w *= x / k;
    acc += w * term;
    if (k > x && w < 1e-20) break;
    if (k > 100000) throw NumericalFailure("uniformized_step: series did not converge");
  }
  p = acc;
}

double expectation(const Eigen::MatrixXcd& op, const DensityMatrix& rho) {
  return op.cwiseProduct(rho.matrix().transpose()).sum().real();
}

double binomial_log(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

DickeBlock::DickeBlock(int two_j, Eigen::VectorXd populations, LadderRates rates)
    : two_j_(two_j), p_(std::move(populations)), rates_(rates) {
  require_two_j(two_j, "DickeBlock");
  require_rates(rates, "DickeBlock");
  if (p_.size() != two_j + 1)
    throw InvalidArgument("DickeBlock: populations must have 2J + 1 entries");
  if (p_.minCoeff() < -1e-12) throw InvalidArgument("DickeBlock: negative population");
  if (std::abs(p_.sum() - 1.0) > 1e-10)
    throw InvalidArgument("DickeBlock: populations must sum to 1");
  p_ = p_.cwiseMax(0.0);
}

DickeBlock DickeBlock::fully_excited(int n_atoms, LadderRates rates) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n_atoms + 1);
  p(n_atoms) = 1.0;
  return DickeBlock(n_atoms, std::move(p), rates);
}

Eigen::MatrixXd block_rate_matrix(int two_j, LadderRates r) {
  require_two_j(two_j, "block_rate_matrix");
  require_rates(r, "block_rate_matrix");
  const int n = two_j + 1;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double d = down_rate(two_j, k, r);
    const double u = up_rate(two_j, k, r);
    if (k > 0) q(k - 1, k) += d;
    if (k + 1 < n) q(k + 1, k) += u;
    q(k, k) = -(d + u);
  }
  return q;
}

Eigen::VectorXd intensity_weights(int two_j) {
  require_two_j(two_j, "intensity_weights");
  Eigen::VectorXd w(two_j + 1);
  for (int k = 0; k <= two_j; ++k) w(k) = static_cast<double>(k) * (two_j - k + 1);
  return w;
}

BlockTrajectory evolve_block(const DickeBlock& block, std::span<const double> times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || (k > 0 && times[k] < times[k - 1]))
      throw InvalidArgument("evolve_block: times must be ascending and >= 0");
  }
  const Eigen::MatrixXd q = block_rate_matrix(block.two_j(), block.rates());
  const double lambda = (-q.diagonal()).maxCoeff();
  const Eigen::VectorXd w = intensity_weights(block.two_j());
  constexpr double kMaxStep = 50.0;

  BlockTrajectory out;
  Eigen::VectorXd p = block.populations();
  double t = 0.0;
  for (double target : times) {
    if (lambda > 0.0 && target > t) {
      const double span = target - t;
      const int steps = std::max(1, static_cast<int>(std::ceil(lambda * span / kMaxStep)));
      const double h = span / steps;
      for (int s = 0; s < steps; ++s) uniformized_step(q, lambda, h, p);
    }
    t = target;
    if (std::abs(p.sum() - 1.0) > 1e-10) {
      std::ostringstream os;
      os << "evolve_block: population not conserved at t = " << t << " (sum " << p.sum() << ")";
      throw InvariantViolation(os.str());
    }
    p = p.cwiseMax(0.0);
    out.times.push_back(t);
    out.intensity.push_back(w.dot(p));
    out.populations.push_back(p);
  }
  return out;
}

double block_adr(int two_j, LadderRates r) {
  require_two_j(two_j, "block_adr");
  require_rates(r, "block_adr");
  Eigen::VectorXd up(two_j + 1), down(two_j + 1);
  for (int k = 0; k <= two_j; ++k) {
    up(k) = up_rate(two_j, k, r);
    down(k) = down_rate(two_j, k, r);
  }
  return birth_death_adr(up, down);
}

BlockSteadyState block_steady_state(int two_j, LadderRates r) {
  require_two_j(two_j, "block_steady_state");
  require_rates(r, "block_steady_state");
  if (r.up == 0.0 && r.down == 0.0)
    throw InvalidArgument("block_steady_state: both rates vanish");
  const int n = two_j + 1;
  BlockSteadyState out;
  Eigen::VectorXd logw(n);
  if (r.up == r.down) {
    out.uniform_limit = true;
    logw.setZero();
  } else if (r.up == 0.0 || r.down == 0.0) {
    out.populations = Eigen::VectorXd::Zero(n);
    out.populations(r.up == 0.0 ? 0 : n - 1) = 1.0;
    // (up/down)^m diverges at the extreme level.
    out.log_z = std::numeric_limits<double>::infinity();
    out.z = std::numeric_limits<double>::infinity();
    return out;
  } else {
    const double lr = std::log(r.up / r.down);
    for (int k = 0; k < n; ++k) logw(k) = (k - 0.5 * two_j) * lr;
  }
  const double top = logw.maxCoeff();
  const double s = (logw.array() - top).exp().sum();
  out.log_z = top + std::log(s);
  out.z = std::exp(out.log_z);
  out.populations = (logw.array() - out.log_z).exp().matrix();
  return out;
}

double detailed_balance_residual(const Eigen::VectorXd& p, int two_j, LadderRates r) {
  if (p.size() != two_j + 1) throw InvalidArgument("detailed_balance_residual: size mismatch");
  double worst = 0.0;
  for (int k = 0; k < two_j; ++k)
    worst = std::max(worst, std::abs(p(k) * up_rate(two_j, k, r) -
                                     p(k + 1) * down_rate(two_j, k + 1, r)));
  return worst;
}

double independent_decay_time(int n_atoms, LadderRates r) {
  if (n_atoms < 1) throw InvalidArgument("independent_decay_time: n_atoms must be >= 1");
  require_rates(r, "independent_decay_time");
  Eigen::VectorXd up(n_atoms + 1), down(n_atoms + 1);
  for (int k = 0; k <= n_atoms; ++k) {
    up(k) = r.up * (n_atoms - k);
    down(k) = r.down * k;
  }
  return 1.0 / birth_death_adr(up, down);
}

BurstMetrics burst_metrics(const DickeBlock& block) {
  BurstMetrics m;
  m.T_R = 1.0 / block_adr(block.two_j(), block.rates());
  const BlockSteadyState ss = block_steady_state(block.two_j(), block.rates());
  const double i_ss = intensity_weights(block.two_j()).dot(ss.populations);

  constexpr int kPoints = 400;
  std::vector<double> grid{0.0};
  const double t_lo = 1e-4 * m.T_R, t_hi = 20.0 * m.T_R;
  for (int k = 0; k < kPoints; ++k)
    grid.push_back(t_lo * std::pow(t_hi / t_lo, static_cast<double>(k) / (kPoints - 1)));
  const BlockTrajectory traj = evolve_block(block, grid);
  const auto& I = traj.intensity;
  m.I0 = I.front();
  const auto peak = static_cast<std::size_t>(std::max_element(I.begin(), I.end()) - I.begin());

  if (peak == 0 || !(I[peak] > m.I0)) {
    m.burst = false;
    m.I_max = m.I0;
    m.t_peak = 0.0;
  } else {
    m.burst = true;
    auto intensity_at = [&](double t) {
      const double ts[] = {t};
      return evolve_block(block, ts).intensity.front();
    };
    double a = grid[peak - 1];
    double b = grid[std::min(peak + 1, grid.size() - 1)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = intensity_at(c), fd = intensity_at(d);
    while (b - a > 1e-6 * b) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = intensity_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = intensity_at(d);
      }
    }
    m.t_peak = 0.5 * (a + b);
    m.I_max = std::max({intensity_at(m.t_peak), I[peak]});
  }

  // e-folding of the excess over the steady intensity after the peak.
  const double target = i_ss + (m.I_max - i_ss) / std::exp(1.0);
  m.e_fold_time = kNaN;
  for (std::size_t k = peak + 1; k < I.size(); ++k) {
    if (I[k] <= target) {
      const double t = grid[k - 1] + (target - I[k - 1]) * (grid[k] - grid[k - 1]) / (I[k] - I[k - 1]);
      m.e_fold_time = t - m.t_peak;
      break;
    }
  }
  return m;
}

std::vector<std::pair<int, double>> entropy_vs_n(LadderRates r, std::span<const int> ns,
                                                 EntropyRegime regime) {
  require_rates(r, "entropy_vs_n");
  if (r.up + r.down <= 0.0) throw InvalidArgument("entropy_vs_n: both rates vanish");
  std::vector<std::pair<int, double>> out;
  const double p = r.up / (r.up + r.down);
  const double q = r.down / (r.up + r.down);
  for (int n : ns) {
    if (n < 1 || n > 100) throw InvalidArgument("entropy_vs_n: n must lie in 1..100");
    double s = 0.0;
    if (regime == EntropyRegime::independent) {
      if (p > 0.0 && q > 0.0) {
        const double lp = std::log(p), lq = std::log(q);
        for (int k = 0; k <= n; ++k) {
          const double log_eig = k * lp + (n - k) * lq;
          s -= std::exp(binomial_log(n, k) + log_eig) * log_eig;
        }
      }
    } else {
      s = shannon_entropy(block_steady_state(n, r).populations);
    }
    out.emplace_back(n, s);
  }
  return out;
}

DensityMatrix dicke_state(int n_atoms, int excitations_removed) {
  if (n_atoms < 1 || n_atoms > kMaxDenseAtoms)
    throw InvalidArgument("dicke_state: n_atoms out of dense range");
  if (excitations_removed < 0 || excitations_removed > n_atoms)
    throw InvalidArgument("dicke_state: excitation count out of range");
  const int d = hilbert_dim(n_atoms);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  for (int i = 0; i < d; ++i)
    if (n_atoms - count_up(i, n_atoms) == excitations_removed) psi(i) = 1.0;
  return DensityMatrix::pure(psi.normalized());
}

std::vector<std::pair<int, double>> spin_sector_weights(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(total_spin_squared(rho.n_atoms()));
  std::map<int, double> weights;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = std::max(0.0, es.eigenvalues()(k));
    const int two_j = static_cast<int>(std::lround(std::sqrt(1.0 + 4.0 * lam) - 1.0));
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    weights[two_j] += (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return {weights.begin(), weights.end()};
}

PlateauRun detect_plateau(std::span<const double> t, std::span<const double> I,
                          double threshold) {
  PlateauRun run;
  const std::size_t n = t.size();
  if (n != I.size()) throw InvalidArgument("detect_plateau: size mismatch");
  if (n < 3) return run;
  for (double x : t)
    if (!(x > 0.0)) throw InvalidArgument("detect_plateau: times must be positive");

  std::vector<bool> flat(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k == 0 ? 0 : k - 1;
    const std::size_t b = k + 1 == n ? n - 1 : k + 1;
    const double deriv = (I[b] - I[a]) / (std::log(t[b]) - std::log(t[a]));
    flat[k] = std::abs(deriv) < threshold * std::abs(I[k]);
  }
  const auto peak = static_cast<std::size_t>(std::max_element(I.begin(), I.end()) - I.begin());
  std::size_t k = peak;
  while (k < n && flat[k]) ++k;
  double best = -1.0;
  while (k < n) {
    while (k < n && !flat[k]) ++k;
    if (k >= n) break;
    const std::size_t begin = k;
    while (k < n && flat[k]) ++k;
    const std::size_t end = k - 1;
    if (end == n - 1 || end - begin < 2) continue;
    const double span = std::log(t[end]) - std::log(t[begin]);
    if (span > best) {
      best = span;
      run = {true, begin, end};
    }
  }
  return run;
}

CascadeResult cascade_trajectory(int n_atoms, const RateSet& rates, const DensityMatrix& rho0,
                                 std::span<const double> times) {
  if (rho0.n_atoms() != n_atoms) throw InvalidArgument("cascade_trajectory: state size mismatch");
  const Superoperator sop = build_lindbladian(rates, n_atoms);
  const auto states = DensePropagator(sop).evolve(rho0, times);
  const Eigen::MatrixXcd op = intensity_operator(n_atoms);

  CascadeResult r;
  r.times.assign(times.begin(), times.end());
  for (const auto& s : states) r.intensity.push_back(expectation(op, s));
  r.I0 = expectation(op, rho0);
  const auto peak = static_cast<std::size_t>(
      std::max_element(r.intensity.begin(), r.intensity.end()) - r.intensity.begin());
  r.I_max = std::max(r.I0, r.intensity[peak]);
  r.t_peak = r.intensity[peak] > r.I0 ? r.times[peak] : 0.0;

  const LadderRates ladder = LadderRates::from(rates);
  for (const auto& [two_j, w] : spin_sector_weights(rho0)) {
    if (two_j == 0 || w < 1e-14) continue;
    r.block_gge_prediction +=
        w * intensity_weights(two_j).dot(block_steady_state(two_j, ladder).populations);
  }
  r.gibbs_intensity = n_atoms * (1.0 + rates.M0) / 2.0;

  const PlateauRun run = detect_plateau(r.times, r.intensity);
  double settle = r.intensity.back();
  if (run.found) {
    r.plateau_detected = true;
    r.plateau_begin = r.times[run.begin];
    r.plateau_end = r.times[run.end];
    double acc = 0.0;
    for (std::size_t k = run.begin; k <= run.end; ++k) acc += r.intensity[k];
    r.plateau_value = acc / static_cast<double>(run.end - run.begin + 1);
    settle = r.plateau_value;
  }

  const double target = settle + (r.I_max - settle) / std::exp(1.0);
  r.burst_e_fold = kNaN;
  for (std::size_t k = peak + 1; k < r.times.size(); ++k) {
    if (r.intensity[k] <= target) {
      const double t = r.times[k - 1] + (target - r.intensity[k - 1]) *
                                            (r.times[k] - r.times[k - 1]) /
                                            (r.intensity[k] - r.intensity[k - 1]);
      r.burst_e_fold = t - r.t_peak;
      break;
    }
  }
  return r;
}

}  // namespace unruh
