#include "unruh/fit.hpp"

#include <algorithm>
#include <cmath>

#include "unruh/error.hpp"

namespace unruh {

namespace {
constexpr double kNegligible = 1e-12;
}  // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_power_law: size mismatch");
  if (x.size() < 2) throw InvalidArgument("fit_power_law: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw InvalidArgument("fit_power_law: data must be positive");
    sx += std::log10(x[i]);
    sy += std::log10(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log10(x[i]) - mx;
    const double dy = std::log10(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InvalidArgument("fit_power_law: x values are all equal");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.n_points = static_cast<int>(x.size());
  return fit;
}

double span_above_fraction(std::span<const double> t, std::span<const double> v,
                           double fraction) {
  if (t.size() != v.size() || t.empty())
    throw InvalidArgument("span_above_fraction: size mismatch or empty series");
  const auto peak = static_cast<std::size_t>(
      std::max_element(v.begin(), v.end()) - v.begin());
  if (!(v[peak] > kNegligible)) return 0.0;
  const double level = fraction * v[peak];
  auto crossing = [&](std::size_t a, std::size_t b) {
    if (v[b] == v[a]) return t[a];
    return t[a] + (level - v[a]) * (t[b] - t[a]) / (v[b] - v[a]);
  };
  std::size_t lo = peak;
  while (lo > 0 && v[lo - 1] >= level) --lo;
  std::size_t hi = peak;
  while (hi + 1 < v.size() && v[hi + 1] >= level) ++hi;
  const double start = lo == 0 ? t[0] : crossing(lo - 1, lo);
  const double end = hi + 1 == v.size() ? t[hi] : crossing(hi, hi + 1);
  return end - start;
}

}  // namespace unruh
