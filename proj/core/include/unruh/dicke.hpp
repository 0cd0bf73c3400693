#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "unruh/qcore.hpp"
#include "unruh/rates.hpp"

namespace unruh {

/// Collective ladder rates: `up` drives m -> m+1 (the gamma_+ channel),
/// `down` drives m -> m-1 (the gamma_- channel, which radiates).
struct LadderRates {
  double up = 0.0;
  double down = 0.0;

  static LadderRates from(const RateSet& r) { return {r.gamma_plus, r.gamma_minus}; }
};

/// Populations of one collective-spin block J (J = two_j / 2), indexed by
/// k = m + J = 0..2J. Uses the spin-1/2 convention J = sum sigma / 2.
class DickeBlock {
 public:
  /// Throws InvalidArgument for two_j < 1, negative rates, a population
  /// vector of the wrong size, entries below -1e-12 or a sum away from 1.
  DickeBlock(int two_j, Eigen::VectorXd populations, LadderRates rates);

  /// Principal block of n atoms with all population in m = J.
  static DickeBlock fully_excited(int n_atoms, LadderRates rates);

  int two_j() const { return two_j_; }
  double j() const { return 0.5 * two_j_; }
  int levels() const { return two_j_ + 1; }
  double m(int k) const { return k - j(); }
  const Eigen::VectorXd& populations() const { return p_; }
  const LadderRates& rates() const { return rates_; }

 private:
  int two_j_;
  Eigen::VectorXd p_;
  LadderRates rates_;
};

/// Generator of dp/dt = Q p on the m-levels (columns sum to zero).
Eigen::MatrixXd block_rate_matrix(int two_j, LadderRates rates);

/// Eigenvalues (J+m)(J-m+1) of J_+ J_- on the block, indexed by k.
Eigen::VectorXd intensity_weights(int two_j);

struct BlockTrajectory {
  std::vector<double> times;
  std::vector<double> intensity;
  std::vector<Eigen::VectorXd> populations;
};

/// Populations and <J_+ J_-> at each time (ascending, >= 0). Propagation by
/// uniformization, so populations stay nonnegative; population is conserved
/// to 1e-10 (InvariantViolation otherwise).
BlockTrajectory evolve_block(const DickeBlock& block, std::span<const double> times);

/// Smallest nonzero decay rate of the block rate matrix.
double block_adr(int two_j, LadderRates rates);

struct BurstMetrics {
  double I0 = 0.0;
  double I_max = 0.0;
  double t_peak = 0.0;
  /// 1 / ADR of the block rate matrix.
  double T_R = 0.0;
  /// Time after the peak for I - I_ss to fall by a factor e.
  double e_fold_time = 0.0;
  /// False when I(t) never rises above I(0); then I_max = I0, t_peak = 0.
  bool burst = false;
};

/// Peak located on a log grid over (0, 20 T_R] and refined by
/// golden-section search to a relative width of 1e-6.
BurstMetrics burst_metrics(const DickeBlock& block);

struct BlockSteadyState {
  Eigen::VectorXd populations;
  /// sum over m of (up/down)^m; may overflow to inf, log_z stays finite.
  double z = 0.0;
  double log_z = 0.0;
  /// up == down: uniform populations, z = 2J + 1.
  bool uniform_limit = false;
};

BlockSteadyState block_steady_state(int two_j, LadderRates rates);

/// max_m |p_m up(m) - p_{m+1} down(m+1)|.
double detailed_balance_residual(const Eigen::VectorXd& p, int two_j, LadderRates rates);

/// Decay time 1/ADR of n independent atoms: the birth-death chain on the
/// number of excited atoms with rates up*(n-k) and down*k.
double independent_decay_time(int n_atoms, LadderRates rates);

enum class EntropyRegime { independent, principal_block };

/// Steady-state von Neumann entropy in nats for each n. Independent atoms:
/// entropy of the binomial product spectrum. Principal block: Shannon
/// entropy of the block steady state with J = n/2.
std::vector<std::pair<int, double>> entropy_vs_n(LadderRates rates, std::span<const int> ns,
                                                 EntropyRegime regime);

/// Symmetric Dicke state |J = n/2, m> as a density matrix, m = J - excitations_removed.
DensityMatrix dicke_state(int n_atoms, int excitations_removed);

/// Population of each total-spin sector; index j2 = 2J.
std::vector<std::pair<int, double>> spin_sector_weights(const DensityMatrix& rho);

struct CascadeResult {
  std::vector<double> times;
  std::vector<double> intensity;
  double I0 = 0.0;
  double I_max = 0.0;
  double t_peak = 0.0;
  bool plateau_detected = false;
  double plateau_begin = 0.0;
  double plateau_end = 0.0;
  double plateau_value = 0.0;
  /// f = 1 fixed-point intensity: block steady states weighted by the
  /// initial total-spin sector populations.
  double block_gge_prediction = 0.0;
  /// Independent-atom thermal value n (1 + M0) / 2.
  double gibbs_intensity = 0.0;
  /// Time after the peak for I - I_plateau to fall by a factor e.
  double burst_e_fold = 0.0;
};

/// Plateau rule: |dI/d ln t| < 0.02 I on the grid. The plateau is the
/// longest such run that starts after the first non-flat point following
/// the peak, does not reach the last grid point, and has at least three
/// points. Times must be positive, ascending and log-spaced for the rule to
/// be meaningful.
CascadeResult cascade_trajectory(int n_atoms, const RateSet& rates, const DensityMatrix& rho0,
                                 std::span<const double> times);

/// Plateau detection on an arbitrary intensity series (see cascade_trajectory).
struct PlateauRun {
  bool found = false;
  std::size_t begin = 0;
  std::size_t end = 0;  // inclusive
};
PlateauRun detect_plateau(std::span<const double> times, std::span<const double> intensity,
                          double threshold = 0.02);

}  // namespace unruh
