#pragma once

// Conversion boundary between SI and the natural units (hbar = k_B = 1) used
// everywhere else. Energies are angular frequencies in rad/s, so inverse
// temperatures come out in seconds.

#include <numbers>

namespace photmol::units {

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double giga = 1e9;

enum class FrequencyConvention { angular, ordinary };

/// beta [s] for a temperature in Kelvin.
constexpr double beta_from_kelvin(double kelvin) { return hbar / (k_boltzmann * kelvin); }

constexpr double kelvin_from_beta(double beta) { return hbar / (k_boltzmann * beta); }

/// A quoted frequency in GHz as an angular frequency in rad/s. With the
/// angular convention the number is taken to already be rad/s.
constexpr double rad_per_s_from_ghz(double ghz, FrequencyConvention convention) {
    const double value = ghz * giga;
    return convention == FrequencyConvention::angular ? value : 2.0 * std::numbers::pi * value;
}

}  // namespace photmol::units
