#pragma once

#include <numbers>

namespace unruh::si {

// CODATA 2018 exact / recommended values.
inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s
inline constexpr double kSpeedOfLight = 299792458.0;       // m / s
inline constexpr double kBoltzmann = 1.380649e-23;         // J / K

}  // namespace unruh::si

namespace unruh {

inline constexpr double kPi = std::numbers::pi;

// tanh(x) == 1 and coth(x) == 1 in double precision well before this.
inline constexpr double kThermalArgumentClamp = 700.0;

}  // namespace unruh
