// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace sawline::constants {

// CODATA 2018 exact values
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;             // J/K
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

inline constexpr double pi = 3.14159265358979323846;

}  // namespace sawline::constants

namespace sawline {

// Amplitude convention used throughout: |S21|_dB = 20*log10(amplitude).
inline double to_db(double amplitude) { return 20.0 * std::log10(amplitude); }
inline double from_db(double db) { return std::pow(10.0, db / 20.0); }

}  // namespace sawline
