#include <doctest.h>

#include <cmath>
#include <random>

#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/rates.hpp"

using namespace unruh;

namespace {

// Natural-unit config with B_local = 1 and tanh(pi omega0 / alpha) = m0.
PhysicalConfig unit_rate_config(double m0, double L = 0.0, int n = 2) {
  const double omega0 = 8.0 * kPi;
  const double alpha = kPi * omega0 / std::atanh(m0);
  return PhysicalConfig(omega0, alpha, L, 1.0, n);
}

}  // namespace

TEST_CASE("physical config validation") {
  CHECK_THROWS_AS(PhysicalConfig(0.0, 1.0, 0.0, 1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(PhysicalConfig(1.0, -1.0, 0.0, 1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(PhysicalConfig(1.0, 1.0, -1.0, 1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(PhysicalConfig(1.0, 1.0, 0.0, 1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(PhysicalConfig(NAN, 1.0, 0.0, 1.0, 1), InvalidArgument);
  CHECK_NOTHROW(PhysicalConfig(1.0, 1.0, 0.0, 1.0, 1));
  CHECK(parse_unit_mode("SI") == UnitMode::si);
  CHECK(parse_unit_mode("natural") == UnitMode::natural);
  CHECK_THROWS_AS(parse_unit_mode("cgs"), InvalidArgument);
}

TEST_CASE("cross factor values") {
  SUBCASE("zero separation is exactly one") {
    for (double alpha : {1e-3, 1.0, 1e5}) {
      CHECK(compute_f_ab(PhysicalConfig(2.0, alpha, 0.0, 1.0, 2)) == 1.0);
      CHECK(compute_f_ab(PhysicalConfig(1e15, alpha * 1e20, 0.0, 1.0, 2, UnitMode::si)) == 1.0);
    }
    CHECK(f_ab_from_groups(0.0, 3.0) == 1.0);
  }
  SUBCASE("large separation in natural units is small and may be negative") {
    const double f = compute_f_ab(PhysicalConfig(1.0, 1.0, 10.0, 1.0, 2));
    CHECK(std::abs(f) < 0.12);
    // sin(2 asinh 5) / (10 sqrt 26)
    CHECK(f == doctest::Approx(std::sin(2.0 * std::asinh(5.0)) / (10.0 * std::sqrt(26.0))).epsilon(1e-14));
    CHECK(f < 0.0);
  }
  SUBCASE("SI nanometre separation is close to one") {
    CHECK(compute_f_ab(PhysicalConfig(1e15, 1e25, 1e-9, 1.0, 2, UnitMode::si)) > 0.99);
  }
  SUBCASE("SI far separation is near zero") {
    CHECK(std::abs(compute_f_ab(PhysicalConfig(1e15, 1e23, 1e-4, 1.0, 2, UnitMode::si))) < 0.1);
  }
}

TEST_CASE("SI and natural forms agree after nondimensionalization") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double c = si::kSpeedOfLight;
  for (int k = 0; k < 200; ++k) {
    const double w = std::pow(10.0, u(rng));
    const double a = std::pow(10.0, u(rng));
    const double L = std::pow(10.0, u(rng));
    const double fn = compute_f_ab(PhysicalConfig(w, a, L, 1.0, 2));
    const double fs = compute_f_ab(PhysicalConfig(w * c, a * c * c, L, 1.0, 2, UnitMode::si));
    CHECK(std::abs(fn - fs) <= 1e-12);
    CHECK(std::abs(fn) <= 1.0);
  }
}

TEST_CASE("cross factor decreases with L in the first lobe") {
  for (double y : {0.3, 1.0, 4.0}) {
    // first zero where 2 y asinh(x) = pi
    const double x_zero = std::sinh(kPi / (2.0 * y));
    double prev = 1.0;
    for (int k = 1; k <= 200; ++k) {
      const double x = x_zero * k / 201.0;
      const double f = f_ab_from_groups(x, y);
      CHECK(f < prev);
      prev = f;
    }
  }
}

TEST_CASE("rates from a physical configuration") {
  SUBCASE("tanh = 0.6 with unit B") {
    const RateSet r = compute_rates(unit_rate_config(0.6));
    CHECK(r.gamma_plus == doctest::Approx(0.8).epsilon(1e-13));
    CHECK(r.gamma_minus == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(r.M0 == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(r.A_local == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
    CHECK(r.B_local == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.f_ab == 1.0);
    CHECK(r.A_cross == doctest::Approx(r.A_local).epsilon(1e-15));
  }
  SUBCASE("high temperature limit splits the rate evenly") {
    const RateSet r = compute_rates(PhysicalConfig(8.0 * kPi, 1e18, 0.0, 1.0, 2));
    CHECK(r.gamma_plus == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.gamma_minus == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("argument above the clamp") {
    const RateSet r = compute_rates(PhysicalConfig(8.0 * kPi, 1e-3, 0.0, 1.0, 2));
    CHECK(r.gamma_plus == 1.0);
    CHECK(r.gamma_minus == 0.0);
    CHECK(r.A_local == r.B_local);
    CHECK(std::isfinite(r.A_local));
  }
  SUBCASE("zero coupling rejected") {
    CHECK_THROWS_AS(compute_rates(PhysicalConfig(1.0, 1.0, 0.0, 0.0, 2)), InvalidArgument);
  }
}

TEST_CASE("rate invariants hold over random configurations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 300; ++k) {
    const PhysicalConfig cfg(std::pow(10.0, u(rng)), std::pow(10.0, u(rng)),
                             std::pow(10.0, u(rng)), std::pow(10.0, u(rng)), 2);
    const RateSet r = compute_rates(cfg);
    CHECK_NOTHROW(r.check_invariants(1e-12));
    CHECK(r.gamma_plus + r.gamma_minus == doctest::Approx(r.B_local).epsilon(1e-13));
    CHECK(r.gamma_plus * r.gamma_minus >= 0.0);
    CHECK(r.A_local * r.A_local - r.B_local * r.B_local >= -1e-12 * r.B_local * r.B_local);
    CHECK(r.M0 == doctest::Approx(std::tanh(cfg.thermal_argument())).epsilon(1e-12));
  }
}

TEST_CASE("rates from transition rates") {
  const RateSet r1 = rates_from_gammas(0.8, 0.2, 1.0);
  CHECK(r1.M0 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(r1.A_local == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(r1.A_cross == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  const RateSet r0 = rates_from_gammas(0.8, 0.2, 0.0);
  CHECK(r0.A_cross == 0.0);
  CHECK(r0.B_cross == 0.0);
  CHECK(rates_from_gammas(0.8, 0.2, 0.99).B_cross == doctest::Approx(0.99).epsilon(1e-15));

  CHECK_THROWS_AS(rates_from_gammas(0.5, 0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(rates_from_gammas(-0.1, 0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(rates_from_gammas(0.8, 0.2, 1.5), InvalidArgument);
  CHECK_THROWS_AS(rates_from_gammas(0.8, 0.2, -0.1), InvalidArgument);

  SUBCASE("emission dominated rates give a negative M0") {
    const RateSet r = rates_from_gammas(0.2, 0.8, 0.5);
    CHECK(r.M0 == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK_NOTHROW(r.check_invariants());
  }
}

TEST_CASE("rates_from_gammas round trip") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> g(0.0, 3.0), f(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double gp = g(rng), gm = g(rng);
    if (gp == gm) continue;
    const RateSet a = rates_from_gammas(gp, gm, f(rng));
    const RateSet b = rates_from_gammas(a.gamma_plus, a.gamma_minus, a.f_ab);
    for (auto [x, y] : {std::pair{a.A_local, b.A_local}, {a.B_local, b.B_local},
                        {a.A_cross, b.A_cross}, {a.B_cross, b.B_cross}, {a.M0, b.M0}})
      CHECK(std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("with_f rescales the cross coefficients") {
  const RateSet r = rates_from_gammas(0.8, 0.2, 0.3).with_f(0.9);
  CHECK(r.f_ab == 0.9);
  CHECK(r.A_cross == doctest::Approx(0.9 * r.A_local));
  CHECK_NOTHROW(r.check_invariants());
}

TEST_CASE("Unruh temperature") {
  CHECK(unruh_temperature(2.4e20) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(unruh_temperature(2.9e23) == doctest::Approx(1.2e3).epsilon(0.05));
  CHECK(unruh_temperature(0.0) == 0.0);
  CHECK(unruh_temperature(2e20) / unruh_temperature(1e20) == doctest::Approx(2.0));
  CHECK_THROWS_AS(unruh_temperature(-1.0), InvalidArgument);
}

TEST_CASE("fractional prethermal lifetime") {
  CHECK(fractional_prethermal_lifetime(0.0) == 0.0);
  CHECK(std::abs(fractional_prethermal_lifetime(0.99) - 0.99) < 1e-12);
  CHECK(std::abs(fractional_prethermal_lifetime(0.5) - 0.5) < 1e-12);
  CHECK(std::abs(fractional_prethermal_lifetime(0.3, 7.0) - 0.3) < 1e-12);
  CHECK_THROWS_AS(fractional_prethermal_lifetime(1.0), InvalidArgument);
  CHECK_THROWS_AS(fractional_prethermal_lifetime(0.5, 0.0), InvalidArgument);
}
