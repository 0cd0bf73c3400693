#pragma once

#include <span>

namespace unruh {

/// log10 y = intercept + slope log10 x, least squares.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

/// Requires at least two points with distinct x, all x and y positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Length of the time span over which `values` stays at or above
/// `fraction` of its maximum, with linear interpolation of the crossings.
/// Uses the contiguous excursion containing the maximum. Zero if the
/// maximum does not exceed 1e-12 (rounding noise of a vanishing series).
double span_above_fraction(std::span<const double> times, std::span<const double> values,
                           double fraction);

}  // namespace unruh
