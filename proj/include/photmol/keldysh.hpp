#pragma once

// Real-time Keldysh components of equilibrium two-point correlators on a
// uniform frequency grid: spectral functions, retarded/advanced functions
// from a Hilbert transform, lesser/greater functions from the
// fluctuation-dissipation theorem, and a time-domain causality check.

#include <complex>
#include <cstddef>
#include <vector>

#include "photmol/core_physics.hpp"

namespace photmol {

struct GridSpec {
    double omega_min = -1.0;  ///< rad/s
    double omega_max = 1.0;   ///< rad/s
    std::size_t n_points = 2;

    double spacing() const { return (omega_max - omega_min) / static_cast<double>(n_points - 1); }
    double omega(std::size_t i) const { return omega_min + static_cast<double>(i) * spacing(); }
    double span() const { return omega_max - omega_min; }
    void validate() const;
};

/// Values sampled on a GridSpec. `singular` is the equal-time part C^delta of
/// the correlator; it is carried alongside and only enters retarded and
/// advanced components.
struct SpectralGrid {
    GridSpec grid;
    std::vector<std::complex<double>> values;
    std::complex<double> singular{0.0, 0.0};

    std::size_t size() const { return values.size(); }
    double omega(std::size_t i) const { return grid.omega(i); }
};

/// Broadened free spectral function 2 eta / ((omega - epsilon)^2 + eta^2).
/// Throws CoverageError when the grid misses more than 1% of the mass.
SpectralGrid lorentzian_spectral(double epsilon, double eta, const GridSpec& grid);

/// Trapezoidal integral of Re(values) d omega / 2 pi.
double spectral_weight(const SpectralGrid& spectral);

/// C^R(omega) = int d omega'/2pi A(omega') / (omega - omega' + i eta) + C^delta.
/// eta == 0 gives the principal value plus -i A/2. The singular kernel is
/// handled by subtracting A(omega) and adding the analytic logarithm.
SpectralGrid retarded_from_spectral(const SpectralGrid& spectral, double eta = 0.0);
SpectralGrid advanced_from_spectral(const SpectralGrid& spectral, double eta = 0.0);

enum class PoleMask { reject, zero };

struct FdtComponents {
    SpectralGrid lesser;
    SpectralGrid greater;
    std::vector<std::size_t> masked;  ///< bins sitting exactly on the Bose pole
};

/// lesser = -i f(omega - m mu) A, greater = -i (1 + f) A, with m = mu_multiplier
/// (1 for single particles, 2 for pair quantities such as the T-matrix).
FdtComponents fdt_components(const SpectralGrid& spectral, const ThermalState& thermal, int mu_multiplier = 1,
                             PoleMask mask = PoleMask::reject);

struct TimeSeries {
    std::vector<double> t;
    std::vector<std::complex<double>> values;
    double peak = 0.0;                 ///< max |C(t)|
    double causality_violation = 0.0;  ///< max_{t<0} |C(t)| / peak
};

/// C^R(t) = int d omega / 2pi e^{-i omega t} C^R(omega). The 1/omega and
/// 1/omega^2 tails are fitted on the outer 5% of the grid and removed with
/// two lower-half-plane poles whose transform is known in closed form; the
/// remainder is tapered and transformed with an FFT. Throws EdgeTruncation
/// when the remainder at the edges exceeds 1e-6 of the peak.
TimeSeries time_domain_retarded(const SpectralGrid& retarded);

}  // namespace photmol
