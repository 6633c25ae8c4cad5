#pragma once

#include <complex>
#include <numbers>

namespace fopa {

using Complex = std::complex<double>;

namespace constants {

// CODATA 2018 exact values.
inline constexpr double speed_of_light = 299792458.0;       // m/s
inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double boltzmann = 1.380649e-23;           // J/K

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace constants

inline constexpr Complex I{0.0, 1.0};

}  // namespace fopa
