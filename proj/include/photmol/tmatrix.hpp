#pragma once

// Retarded T-matrix of contact-interacting photons in one dimension, the
// thermal pair propagator, the bound-state pole condition and the critical
// temperature at which it is first met.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "photmol/core_physics.hpp"
#include "photmol/quadrature.hpp"

namespace photmol {

/// Evaluation point of the 1D retarded T-matrix.
struct TMatrixQuery {
    std::complex<double> zeta{0.0, 0.0};  ///< omega + i eta, rad/s
    WaveguideParams params;
    ThermalState thermal;
    /// Infrared cutoff in x = beta epsilon / 2. coth(x)/x is not integrable
    /// at the origin, so the band |epsilon - mu| < 2 x_min / beta is masked.
    double x_min = 1.0;
    QuadratureTolerance tolerance{1e-12, 1e-11};

    /// Lambda = beta Delta / 2.
    double lambda() const { return 0.5 * thermal.beta * params.Delta; }
    void validate() const;
};

/// Thermal pair propagator coth(beta (epsilon - mu) / 2) / (zeta - 2 epsilon).
std::complex<double> pair_propagator_upsilon(double epsilon, std::complex<double> zeta, const ThermalState& thermal);
std::complex<double> pair_propagator_upsilon(double epsilon, const TMatrixQuery& query);

struct G2Options {
    /// Half-width of the window the Lorentzians are truncated to (and
    /// renormalized on). Zero selects |epsilon - mu| / 2 so the Bose pole
    /// never lies inside it.
    double window_half_width = 0.0;
    QuadratureTolerance tolerance{0.0, 1e-9};  // the result scales as 1 / frequency: relative only
};

struct G2Result {
    std::complex<double> value;
    double error_estimate = 0.0;
    double window_half_width = 0.0;
};

/// Two-particle retarded bubble from the double spectral integral
///   int int d w' d w'' / (2 pi)^2 [G>(w') G>(w'') - G<(w') G<(w'')] (-1) / (zeta - w' - w'')
/// with both single-particle spectral functions Lorentzians of half-width
/// `broadening` centred at epsilon. Tends to pair_propagator_upsilon as the
/// broadening goes to zero.
G2Result g2_retarded_numeric(double epsilon, std::complex<double> zeta, const ThermalState& thermal,
                             double broadening, const G2Options& options = {});

/// I(x_min, Lambda) = int_{x_min}^{Lambda} coth(x) / x dx. Zero when
/// Lambda == x_min.
double coth_integral(double x_min, double lambda, const QuadratureTolerance& tol = {1e-13, 1e-12});

struct TMatrixValue {
    std::complex<double> value;
    std::complex<double> denominator;
    bool near_pole = false;  ///< |denominator| < 1e-12
};

/// T^R(zeta) = s / (1 - s/(2 pi v_e) PV int d eps coth(beta eps / 2) / (zeta - 2 mu - 2 eps))
/// over the band |eps| < Delta with the infrared mask, s the signed coupling.
/// For the attractive case at zeta - 2 mu -> i0 this is -v / (1 - g I(x_min, Lambda)).
TMatrixValue tmatrix_retarded_1d(const TMatrixQuery& query);

struct TemperatureRange {
    double t_min_kelvin = 1e-3;
    double t_max_kelvin = 10.0;
    std::size_t points = 100;
    bool log_spacing = true;

    std::vector<double> temperatures() const;
};

struct ScanRow {
    double t_kelvin = 0.0;
    double lambda = 0.0;
    double integral = 0.0;
    double denominator = 0.0;  ///< D = 1 - g I(x_min, Lambda)
    std::complex<double> tmatrix;
    bool near_pole = false;
    bool sign_change = false;  ///< D changed sign since the previous row
};

/// Pole condition D(T) over a temperature range; the T-matrix column is
/// evaluated at zeta = 2 mu + i eta_fraction * Delta.
std::vector<ScanRow> denominator_scan(const TemperatureRange& range, const WaveguideParams& params, double x_min,
                                      double eta_fraction = 1e-8);

enum class TcMethod { asymptotic, numeric };

std::string to_string(TcMethod method);

struct CriticalPoint {
    double t_c_kelvin = 0.0;
    double lambda_c = 0.0;
    double g = 0.0;
    TcMethod method = TcMethod::asymptotic;
    double x_min = 1.0;
    double residual = 0.0;  ///< D at lambda_c (numeric), or 1 - g ln lambda_c (asymptotic)
};

/// asymptotic: k_B T_c = (Delta / 2) e^{-1/g}. numeric: root of
/// 1 - g I(x_min, Lambda) = 0, bracketed in ln Lambda.
CriticalPoint critical_temperature(const WaveguideParams& params, TcMethod method, double x_min = 1.0);

/// Lambda = hbar Delta / (2 k_B T) and its inverse.
double lambda_from_kelvin(double kelvin, double delta);
double kelvin_from_lambda(double lambda, double delta);

}  // namespace photmol
