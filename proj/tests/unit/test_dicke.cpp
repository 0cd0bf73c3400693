#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles/oracles.hpp"
#include "unruh/dicke.hpp"
#include "unruh/error.hpp"
#include "unruh/liouvillian.hpp"
#include "unruh/spin_ops.hpp"

using namespace unruh;

namespace {

const LadderRates kEmit{0.2, 0.8};    // up, down
const LadderRates kAbsorb{0.8, 0.2};

double dense_intensity(const DensityMatrix& rho) {
  const Eigen::MatrixXcd op = intensity_operator(rho.n_atoms());
  return (op * rho.matrix()).trace().real();
}

}  // namespace

TEST_CASE("block rate matrix") {
  SUBCASE("spin one half") {
    const Eigen::MatrixXd q = block_rate_matrix(1, kEmit);
    // k = 0 is m = -1/2, k = 1 is m = +1/2
    CHECK(q(0, 1) == doctest::Approx(0.8));
    CHECK(q(1, 0) == doctest::Approx(0.2));
  }
  SUBCASE("J = 1 from the top") {
    const Eigen::MatrixXd q = block_rate_matrix(2, kEmit);
    CHECK(q(1, 2) == doctest::Approx(2.0 * 0.8));
  }
  SUBCASE("columns sum to zero") {
    for (int two_j = 1; two_j <= 60; ++two_j) {
      const Eigen::MatrixXd q = block_rate_matrix(two_j, kAbsorb);
      CHECK(q.colwise().sum().cwiseAbs().maxCoeff() < 1e-12 * q.cwiseAbs().maxCoeff());
    }
  }
  CHECK_THROWS_AS(block_rate_matrix(0, kEmit), InvalidArgument);
  CHECK_THROWS_AS(block_rate_matrix(2, {-1.0, 1.0}), InvalidArgument);
  CHECK(intensity_weights(10)(10) == doctest::Approx(10.0));
}

TEST_CASE("block construction") {
  CHECK_THROWS_AS(DickeBlock(2, Eigen::VectorXd::Constant(2, 0.5), kEmit), InvalidArgument);
  CHECK_THROWS_AS(DickeBlock(1, Eigen::Vector2d(0.7, 0.7), kEmit), InvalidArgument);
  CHECK_THROWS_AS(DickeBlock(1, Eigen::Vector2d(-0.1, 1.1), kEmit), InvalidArgument);
  const auto b = DickeBlock::fully_excited(10, kEmit);
  CHECK(b.j() == 5.0);
  CHECK(b.m(10) == 5.0);
  CHECK(b.levels() == 11);
}

TEST_CASE("block evolution") {
  const std::vector<double> times{0.0, 1e-3, 0.05, 0.3, 1.0, 5.0};
  SUBCASE("initial intensity") {
    const std::vector<double> t0{0.0};
    CHECK(evolve_block(DickeBlock::fully_excited(10, kEmit), t0).intensity[0] == doctest::Approx(10.0));
  }
  SUBCASE("matches the matrix exponential") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int two_j : {1, 2, 5, 12, 30}) {
      Eigen::VectorXd p(two_j + 1);
      for (auto& x : p) x = u(rng);
      p /= p.sum();
      const DickeBlock block(two_j, p, {u(rng), u(rng)});
      const auto traj = evolve_block(block, times);
      const Eigen::MatrixXd q = block_rate_matrix(two_j, block.rates());
      for (std::size_t k = 0; k < times.size(); ++k) {
        const Eigen::VectorXd ref = oracle::expm_apply(q, p, times[k]);
        CHECK((traj.populations[k] - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(traj.populations[k].sum() - 1.0) < 1e-10);
        CHECK(traj.populations[k].minCoeff() >= 0.0);
      }
    }
  }
  SUBCASE("long-time limit is the block steady state") {
    const std::vector<double> t{200.0};
    const auto traj = evolve_block(DickeBlock::fully_excited(10, kEmit), t);
    const auto ss = block_steady_state(10, kEmit);
    CHECK((traj.populations[0] - ss.populations).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("burst then relaxation for emission-dominated rates") {
    std::vector<double> t;
    for (int k = 0; k <= 200; ++k) t.push_back(0.002 * k);
    const auto traj = evolve_block(DickeBlock::fully_excited(10, kEmit), t);
    const double peak = *std::max_element(traj.intensity.begin(), traj.intensity.end());
    CHECK(peak > traj.intensity.front());
    CHECK(traj.intensity.back() < peak);
  }
}

TEST_CASE("block steady state") {
  SUBCASE("detailed balance at N = 100") {
    const auto ss = block_steady_state(100, kAbsorb);
    CHECK(detailed_balance_residual(ss.populations, 100, kAbsorb) < 1e-12);
    CHECK(std::abs(ss.populations.sum() - 1.0) < 1e-12);
  }
  SUBCASE("partition function") {
    for (int n : {1, 2, 7, 40}) {
      for (LadderRates r : {kAbsorb, kEmit}) {
        const double m0 = (r.up - r.down) / (r.up + r.down);
        const double x = std::atanh(m0);
        const double closed = std::sinh((n + 1) * x) / std::sinh(x);
        const auto ss = block_steady_state(n, r);
        CHECK(ss.z == doctest::Approx(closed).epsilon(1e-12));
      }
    }
    const double x = std::atanh(0.6);
    CHECK(block_steady_state(1, kAbsorb).z == doctest::Approx(2.0 * std::cosh(x)).epsilon(1e-14));
  }
  SUBCASE("uniform limit") {
    const auto ss = block_steady_state(6, {0.5, 0.5});
    CHECK(ss.uniform_limit);
    CHECK(ss.z == doctest::Approx(7.0));
    CHECK(ss.populations(3) == doctest::Approx(1.0 / 7.0));
  }
  SUBCASE("extreme N stays finite in log form") {
    const auto ss = block_steady_state(100, {0.999, 0.001});
    CHECK(std::isfinite(ss.log_z));
    CHECK(ss.populations(100) == doctest::Approx(1.0 - 0.001 / 0.999).epsilon(1e-6));
  }
}

TEST_CASE("decay rates") {
  SUBCASE("independent atoms relax at the single-atom rate") {
    for (int n : {1, 5, 20, 100})
      CHECK(independent_decay_time(n, kEmit) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("block ADR against a dense eigen solve") {
    for (int two_j : {1, 4, 11}) {
      const Eigen::MatrixXd q = block_rate_matrix(two_j, kEmit);
      Eigen::EigenSolver<Eigen::MatrixXd> es(q);
      std::vector<double> rates;
      for (const auto& z : es.eigenvalues())
        if (std::abs(z) > 1e-9) rates.push_back(-z.real());
      CHECK(block_adr(two_j, kEmit) == doctest::Approx(*std::min_element(rates.begin(), rates.end())).epsilon(1e-10));
    }
  }
}

TEST_CASE("burst metrics") {
  SUBCASE("emission-dominated block bursts") {
    const auto m = burst_metrics(DickeBlock::fully_excited(20, kEmit));
    CHECK(m.burst);
    CHECK(m.I_max > m.I0);
    CHECK(m.I0 == doctest::Approx(20.0));
    CHECK(m.T_R > 0.0);
    CHECK(m.t_peak > 0.0);
    CHECK(std::isfinite(m.e_fold_time));
    // the refined peak is a local maximum
    const std::vector<double> t{m.t_peak * 0.99, m.t_peak, m.t_peak * 1.01};
    const auto traj = evolve_block(DickeBlock::fully_excited(20, kEmit), t);
    CHECK(traj.intensity[1] >= traj.intensity[0]);
    CHECK(traj.intensity[1] >= traj.intensity[2]);
  }
  SUBCASE("a single atom only decays") {
    const auto m = burst_metrics(DickeBlock::fully_excited(1, kEmit));
    CHECK(!m.burst);
    CHECK(m.I_max == m.I0);
    CHECK(m.t_peak == 0.0);
  }
  SUBCASE("zero temperature superradiance") {
    const LadderRates cold{0.0, 1.0};
    const int n = 100;
    const auto m = burst_metrics(DickeBlock::fully_excited(n, cold));
    // peak located by brute force on a fine grid of exact exponentials
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int k = 1; k <= n; ++k) {
      const double rate = k * (n - k + 1.0);
      q(k - 1, k) += rate;
      q(k, k) -= rate;
    }
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(n + 1);
    p0(n) = 1.0;
    double best = 0.0, t_best = 0.0;
    for (int i = 1; i <= 2000; ++i) {
      const double t = 1e-4 * i;
      const Eigen::VectorXd p = oracle::expm_apply(q, p0, t);
      double intensity = 0.0;
      for (int k = 1; k <= n; ++k) intensity += k * (n - k + 1.0) * p(k);
      if (intensity > best) {
        best = intensity;
        t_best = t;
      }
    }
    CHECK(m.I_max == doctest::Approx(best).epsilon(1e-6));
    CHECK(std::abs(m.t_peak - t_best) < 2e-4);
    // fluctuations keep the exact peak below the mean-field value n^2/4
    CHECK(m.I_max < n * n / 4.0);
    CHECK(m.I_max > 0.7 * n * n / 4.0);
    const double t_classic = std::log(static_cast<double>(n)) / n;
    CHECK(m.t_peak / t_classic > 1.0 / 1.5);
    CHECK(m.t_peak / t_classic < 1.5);
  }
}

TEST_CASE("entropy versus N") {
  const std::vector<int> ns{1, 2, 5, 10, 50, 100};
  const double s1 = -0.8 * std::log(0.8) - 0.2 * std::log(0.2);
  SUBCASE("independent atoms are extensive") {
    for (const auto& [n, s] : entropy_vs_n(kAbsorb, ns, EntropyRegime::independent))
      CHECK(std::abs(s - n * s1) < 1e-12 * std::max(1, n));
  }
  SUBCASE("independent-atom spectrum against a dense product state") {
    Eigen::Matrix2cd one = Eigen::Matrix2cd::Zero();
    one(0, 0) = 0.8;
    one(1, 1) = 0.2;
    DensityMatrix rho(one);
    for (int n = 2; n <= 5; ++n) {
      rho = rho.tensor(DensityMatrix(one));
      const std::vector<int> nn{n};
      CHECK(entropy_vs_n(kAbsorb, nn, EntropyRegime::independent)[0].second ==
            doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-12));
    }
  }
  SUBCASE("principal block saturates") {
    const auto s = entropy_vs_n(kAbsorb, ns, EntropyRegime::principal_block);
    CHECK(s[0].second == doctest::Approx(s1).epsilon(1e-12));
    CHECK(std::abs(s[5].second - s[4].second) < 0.01 * s[4].second);
  }
  const std::vector<int> bad{0};
  CHECK_THROWS_AS(entropy_vs_n(kAbsorb, bad, EntropyRegime::independent), InvalidArgument);
}

TEST_CASE("block engine agrees with the dense generator at f = 1") {
  for (int n = 2; n <= 4; ++n) {
    const RateSet r = rates_from_gammas(kEmit.up, kEmit.down, 1.0);
    const DensePropagator prop(build_lindbladian(r, n));
    std::vector<double> times;
    for (int k = 0; k <= 40; ++k) times.push_back(0.05 * k * k);
    for (int removed = 0; removed <= n; ++removed) {
      const auto dense = prop.evolve(dicke_state(n, removed), times);
      Eigen::VectorXd p = Eigen::VectorXd::Zero(n + 1);
      p(n - removed) = 1.0;
      const auto block = evolve_block(DickeBlock(n, p, kEmit), times);
      for (std::size_t k = 0; k < times.size(); ++k)
        CHECK(std::abs(dense_intensity(dense[k]) - block.intensity[k]) < 1e-8);
    }
  }
}

TEST_CASE("spin sector weights") {
  const auto w = spin_sector_weights(all_up_state(4));
  double total = 0.0;
  for (const auto& [two_j, x] : w) {
    total += x;
    if (two_j == 4) CHECK(x == doctest::Approx(1.0));
    else CHECK(std::abs(x) < 1e-12);
  }
  CHECK(total == doctest::Approx(1.0));
  const auto s = spin_sector_weights(dipolar_basis_state(DipolarState::singlet));
  CHECK(s.front().first == 0);
  CHECK(s.front().second == doctest::Approx(1.0));
}

TEST_CASE("plateau detection") {
  std::vector<double> t, flat, bump;
  for (int k = 0; k < 100; ++k) t.push_back(std::pow(10.0, -2.0 + 6.0 * k / 99.0));
  for (double x : t) {
    flat.push_back(1.0 + 4.0 * std::exp(-x));
    // burst near t = 0.1, plateau at 2 until ~1e2, decay to 1
    bump.push_back(1.0 + 1.0 * std::exp(-x / 1e3) + 3.0 * std::exp(-std::pow(std::log10(x) + 1.0, 2) * 4.0));
  }
  CHECK(!detect_plateau(t, flat).found);
  const auto run = detect_plateau(t, bump);
  REQUIRE(run.found);
  CHECK(t[run.begin] > 0.1);
  CHECK(t[run.end] < 1e3);
}

TEST_CASE("cascade trajectory") {
  std::vector<double> times;
  for (int k = 0; k < 320; ++k) times.push_back(std::pow(10.0, -3.0 + 8.0 * k / 319.0));
  SUBCASE("decoupled atoms decay mono-exponentially without a plateau") {
    const auto r = cascade_trajectory(5, rates_from_gammas(0.2, 0.8, 0.0), all_up_state(5), times);
    CHECK(!r.plateau_detected);
    for (std::size_t k = 0; k < times.size(); ++k)
      CHECK(std::abs(r.intensity[k] - (1.0 + 4.0 * std::exp(-times[k]))) < 1e-9);
    CHECK(r.gibbs_intensity == doctest::Approx(1.0));
  }
  SUBCASE("nearly collective atoms show burst and plateau") {
    const auto r = cascade_trajectory(5, rates_from_gammas(0.2, 0.8, 0.999), all_up_state(5), times);
    CHECK(r.I_max > r.I0);
    REQUIRE(r.plateau_detected);
    CHECK(std::abs(r.plateau_value - r.block_gge_prediction) < 0.02 * r.block_gge_prediction);
    CHECK(r.plateau_end - r.plateau_begin >= 10.0 * r.burst_e_fold);
    CHECK(std::abs(r.intensity.back() - r.gibbs_intensity) < 1e-6);
  }
  CHECK_THROWS_AS(cascade_trajectory(4, rates_from_gammas(0.2, 0.8, 0.5), all_up_state(5), times),
                  InvalidArgument);
}

TEST_CASE("Dicke states") {
  const auto d = dicke_state(4, 2);
  CHECK(purity(d) == doctest::Approx(1.0));
  CHECK(dense_intensity(d) == doctest::Approx(2.0 * 3.0));  // (J+m)(J-m+1), J=2, m=0
  CHECK_THROWS_AS(dicke_state(4, 5), InvalidArgument);
}
